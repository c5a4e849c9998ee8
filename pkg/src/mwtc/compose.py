"""Composition solvers: the value tuple of a graph from its values-attached quotient.

Each solver sees only the quotient ``X`` (vertices ``0..t-1``) and one tuple per
vertex.  Vertex ``i`` stands for a module ``M_i`` whose factor has the attached
values; the answer must hold for *every* graph realizing the query.

The optimized solvers below never call the exhaustive solvers in
:mod:`mwtc.brute`.  :func:`reference_compose` is a second, independent route
that substitutes concrete factors and runs the exhaustive solvers.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .encoding import VAQG
from .graph import Graph, bits, complete, cycle, disjoint_union, edgeless, path, substitute
from .values import get_system


class MalformedQuery(ValueError):
    """Attached values are mutually inconsistent or outside an oracle's contract."""


# -- small helpers on the quotient ---------------------------------------------

def _mwis(adj: tuple[int, ...], weights: tuple[int, ...], mask: int) -> int:
    """Maximum-weight independent set of ``X[mask]`` by branching on the lowest vertex."""
    memo: dict[int, int] = {}

    def go(m: int) -> int:
        if not m:
            return 0
        hit = memo.get(m)
        if hit is not None:
            return hit
        v = (m & -m).bit_length() - 1
        rest = m & ~(1 << v)
        best = go(rest)
        if weights[v] > 0:
            best = max(best, weights[v] + go(rest & ~adj[v]))
        memo[m] = best
        return best

    return go(mask)


def _components(adj: tuple[int, ...], mask: int) -> list[int]:
    out = []
    while mask:
        seen = frontier = mask & -mask
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        out.append(seen)
        mask &= ~seen
    return out


def _edges_within(adj, mask: int) -> int:
    return sum((adj[v] & mask).bit_count() for v in bits(mask)) // 2


def _is_forest(adj, mask: int) -> bool:
    return _edges_within(adj, mask) == mask.bit_count() - len(_components(adj, mask))


def _is_bipartite(adj, mask: int) -> bool:
    colour: dict[int, int] = {}
    for start in bits(mask):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in bits(adj[v] & mask):
                if u not in colour:
                    colour[u] = colour[v] ^ 1
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


def _is_vertex_cover(adj, mask: int) -> bool:
    return all(not (adj[v] & ~mask) for v in bits(~mask & ((1 << len(adj)) - 1)))


def _maximal_independent_sets(adj) -> list[int]:
    t = len(adj)
    full = (1 << t) - 1
    out = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        for v in list(bits(p)):
            non = full & ~adj[v] & ~(1 << v)
            expand(r | (1 << v), p & non, x & non)
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, full, 0)
    return out


def _longest_induced_path(adj) -> int:
    """Vertex count of a longest induced path in the plain quotient (DFS over induced paths)."""
    t = len(adj)
    best = 1

    def grow(end: int, used: int, blocked: int, length: int):
        nonlocal best
        best = max(best, length)
        for u in bits(adj[end] & ~blocked):
            grow(u, used | (1 << u), blocked | adj[end] | (1 << u), length + 1)

    for v in range(t):
        grow(v, 1 << v, (1 << v), 1)
    return best


def _is_induced_cycle(adj, mask: int) -> bool:
    if mask.bit_count() < 3:
        return False
    if any((adj[v] & mask).bit_count() != 2 for v in bits(mask)):
        return False
    return len(_components(adj, mask)) == 1


def _milp_min(c, a_rows, lo, hi, lb, ub, integrality) -> float | None:
    res = milp(
        c=np.asarray(c, dtype=float),
        constraints=LinearConstraint(np.asarray(a_rows, dtype=float), lo, hi),
        bounds=Bounds(lb, ub),
        integrality=np.asarray(integrality),
        options={"mip_rel_gap": 0},
    )
    if res.status == 2:  # infeasible
        return None
    if not res.success:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    return float(res.fun)


# -- validation ----------------------------------------------------------------

def validate(vaqg: VAQG) -> None:
    """Reject tuples no real factor can have.  Never rejects a genuine tuple."""
    sid = get_system(vaqg.system).id
    for i, tup in enumerate(vaqg.tuples):
        bad = _tuple_problem(sid, tup)
        if bad:
            raise MalformedQuery(f"vertex {i} tuple {tup}: {bad}")


def _tuple_problem(sid: str, tup) -> str | None:
    if sid in ("S-COL", "S-DOM", "S-IND", "S-LIP"):
        return None if tup[0] >= 1 else "value must be at least 1"
    if sid == "S-DEL":
        n, vc, cvc, fvs, oct_, comp = tup
        if n < 1 or vc > n - 1:
            return "need n >= 1 and vc <= n - 1"
        if fvs > vc or oct_ > vc or fvs > max(0, n - 2) or oct_ > max(0, n - 2):
            return "fvs and oct are bounded by vc and n - 2"
        if not 1 <= comp <= n:
            return "component count out of range"
        if vc == 0:
            if cvc or comp != n:
                return "an edgeless factor has cvc 0 and n components"
        else:
            if comp > n - 1 or not vc <= cvc <= n:
                return "vc <= cvc <= n and fewer than n components"
            if cvc == n and (comp < 2 or n < 4):
                return "no connected cover needs two components with edges"
        return None
    if sid == "S-PATH":
        hc, pip, n = tup
        if n < 1 or not 1 <= pip <= n or hc not in (0, 1):
            return "need n >= 1, 1 <= pip <= n, hc in {0, 1}"
        if hc == 0 and (n < 3 or pip != 1):
            return "a Hamiltonian cycle needs n >= 3 and gives pip 1"
        return None
    if sid == "S-PACK":
        vc, im, itp, icp, n = tup
        if n < 1 or vc > n - 1:
            return "need n >= 1 and vc <= n - 1"
        if im > min(vc, n // 2) or itp > icp or icp > n // 3:
            return "packing counts out of range"
        if vc == 0 and (im or icp):
            return "an edgeless factor packs nothing"
        if vc >= 1 and im == 0:
            return "a factor with an edge has an induced matching"
        if icp >= 1 and vc < 2:
            return "a cycle needs vc >= 2"
        return None
    raise MalformedQuery(f"unknown system {sid}")


# -- per-system solvers --------------------------------------------------------

def compose_col(adj, tuples) -> tuple[int]:
    chi = [tup[0] for tup in tuples]
    t = len(adj)
    m = sum(a.bit_count() for a in adj) // 2
    if m == 0:
        return (max(chi),)
    if m == t * (t - 1) // 2:
        return (sum(chi),)
    # fewest colours: y_I colours used exactly on maximal independent set I
    sets = _maximal_independent_sets(adj)
    rows = [[1 if (s >> v) & 1 else 0 for s in sets] for v in range(t)]
    val = _milp_min(
        [1] * len(sets), rows, np.array(chi, dtype=float), np.inf,
        np.zeros(len(sets)), np.full(len(sets), float(max(chi))), np.ones(len(sets)),
    )
    return (int(round(val)),)


def compose_ind(adj, tuples) -> tuple[int]:
    return (_mwis(tuple(adj), tuple(t[0] for t in tuples), (1 << len(adj)) - 1),)


def compose_dom(adj, tuples) -> tuple[int]:
    gamma = [tup[0] for tup in tuples]
    t = len(adj)
    full = (1 << t) - 1
    best = None
    # S = modules that contain a chosen vertex
    for s in range(1, full + 1):
        reach = 0
        for v in bits(s):
            reach |= adj[v]
        if (full & ~s) & ~reach:
            continue
        cost = 0
        for v in bits(s):
            cost += 1 if adj[v] & s else gamma[v]
        if best is None or cost < best:
            best = cost
    return (best,)


def compose_lip(adj, tuples) -> tuple[int]:
    val = max(max(t[0] for t in tuples), _longest_induced_path(adj))
    if val < 4:
        raise MalformedQuery("induced paths shorter than 4 vertices are outside this oracle's contract")
    return (val,)


def _del_vc(adj, ns, vcs) -> int:
    alpha = tuple(n - v for n, v in zip(ns, vcs))
    return sum(ns) - _mwis(tuple(adj), alpha, (1 << len(adj)) - 1)


def _del_comp(adj, comps) -> int:
    return sum(1 if c.bit_count() >= 2 else comps[(c & -c).bit_length() - 1]
               for c in _components(adj, (1 << len(adj)) - 1))


def _del_oct(adj, ns, vcs, octs) -> int:
    t = len(adj)
    keep = 0
    for s in range(1 << t):
        if not _is_bipartite(adj, s):
            continue
        val = 0
        for v in bits(s):
            val += (ns[v] - vcs[v]) if adj[v] & s else (ns[v] - octs[v])
        keep = max(keep, val)
    return sum(ns) - keep


def _del_fvs(adj, ns, vcs, fvss) -> int:
    # S1: modules keeping exactly one vertex; the rest keep either a forest of
    # their own factor (no kept neighbour) or an independent set hanging off a
    # single kept vertex.
    t = len(adj)
    adj = tuple(adj)
    full = (1 << t) - 1
    keep = 0
    for s1 in range(1 << t):
        if not _is_forest(adj, s1):
            continue
        weights = []
        for v in range(t):
            if (s1 >> v) & 1:
                weights.append(0)
                continue
            k = (adj[v] & s1).bit_count()
            if k == 0:
                weights.append(ns[v] - fvss[v])
            elif k == 1:
                weights.append(ns[v] - vcs[v])
            else:
                weights.append(0)
        rest = full & ~s1
        keep = max(keep, s1.bit_count() + _mwis(adj, tuple(weights), rest))
    return sum(ns) - keep


def _connected_table(adj) -> list[bool]:
    t = len(adj)
    return [m != 0 and len(_components(adj, m)) == 1 for m in range(1 << t)]


def _del_cvc(adj, ns, vcs, cvcs, comps) -> int:
    t = len(adj)
    full = (1 << t) - 1
    n = sum(ns)
    has_xedge = any(adj)
    if not has_xedge and not any(vcs):
        return 0
    best = n  # no connected cover
    # cover inside a single module
    for i in range(t):
        others = full & ~(1 << i)
        if any(vcs[j] for j in bits(others)) or any(adj[j] & others for j in bits(others)):
            continue
        if adj[i]:
            if comps[i] == 1:
                best = min(best, ns[i])
        elif vcs[i] >= 1 and cvcs[i] < ns[i]:
            best = min(best, cvcs[i])
    # cover meeting at least two modules: F full modules, the rest partial or empty
    connected = _connected_table(adj)
    for f in range(1 << t):
        if not _is_vertex_cover(adj, f):
            continue
        forced = 0
        pool = 0
        cost = 0
        for v in range(t):
            if (f >> v) & 1:
                cost += ns[v]
            elif vcs[v] >= 1:
                forced |= 1 << v
                cost += vcs[v]
            elif ns[v] >= 2:
                pool |= 1 << v
        if cost >= best:
            continue
        base = f | forced
        sub = pool
        while True:
            u = base | sub
            if u.bit_count() >= 2 and connected[u]:
                best = min(best, cost + sub.bit_count())
            if sub == 0:
                break
            sub = (sub - 1) & pool
    return best


def compose_del(adj, tuples) -> tuple[int, ...]:
    ns, vcs, cvcs, fvss, octs, comps = (list(col) for col in zip(*tuples))
    return (
        sum(ns),
        _del_vc(adj, ns, vcs),
        _del_cvc(adj, ns, vcs, cvcs, comps),
        _del_fvs(adj, ns, vcs, fvss),
        _del_oct(adj, ns, vcs, octs),
        _del_comp(adj, comps),
    )


def compose_pack(adj, tuples) -> tuple[int, ...]:
    vcs, ims, itps, icps, ns = (list(col) for col in zip(*tuples))
    alpha = [n - v for n, v in zip(ns, vcs)]
    t = len(adj)
    best_im = best_itp = best_icp = 0
    for s in range(1 << t):
        im = itp = icp = 0
        for c in _components(adj, s):
            size = c.bit_count()
            if size == 1:
                v = c.bit_length() - 1
                im, itp, icp = (x + y if x is not None else None for x, y in
                                zip((im, itp, icp), (ims[v], itps[v], icps[v])))
                continue
            verts = list(bits(c))
            e_im = e_itp = e_icp = None
            if size == 2:
                i, j = verts
                e_im = 1
                e_itp = 1 if vcs[i] >= 1 or vcs[j] >= 1 else None
                e_icp = 1 if vcs[i] >= 1 or vcs[j] >= 1 or (alpha[i] >= 2 and alpha[j] >= 2) else None
            else:
                if size == 3 and _edges_within(adj, c) == 3:
                    e_itp = 1
                if _is_induced_cycle(adj, c):
                    e_icp = 1
                elif size == 3 and _edges_within(adj, c) == 2:
                    centre = next(v for v in verts if (adj[v] & c).bit_count() == 2)
                    if alpha[centre] >= 2:
                        e_icp = 1
            im = im + e_im if im is not None and e_im is not None else None
            itp = itp + e_itp if itp is not None and e_itp is not None else None
            icp = icp + e_icp if icp is not None and e_icp is not None else None
        if im is not None:
            best_im = max(best_im, im)
        if itp is not None:
            best_itp = max(best_itp, itp)
        if icp is not None:
            best_icp = max(best_icp, icp)
    return (_del_vc(adj, ns, vcs), best_im, best_itp, best_icp, sum(ns))


def _path_milp(adj, pips, ns, cycle_mode: bool) -> int | None:
    """Token model: module ``i`` is cut into ``p_i`` internal paths, linked along
    quotient edges (``y_e`` links on edge ``e``); ``s_i`` loose ends remain.

    Minimises the loose ends over link patterns whose support, together with a
    root touching every module with loose ends, is connected.  In cycle mode
    loose ends are forbidden and the support alone must span every module.
    Returns the number of paths (or 0 for a feasible cycle), or None.
    """
    t = len(adj)
    edges = [(i, j) for i in range(t) for j in bits(adj[i]) if j > i]
    E = len(edges)
    # variable layout
    P, Y, S, Z, R = 0, t, t + E, 2 * t + E, 2 * t + 2 * E
    F = 3 * t + 2 * E  # 2E arc flows
    G = F + 2 * E  # t root flows
    nv = G + t
    big = t
    c = np.zeros(nv)
    c[S:S + t] = 1
    lb = np.zeros(nv)
    ub = np.full(nv, np.inf)
    integ = np.zeros(nv)
    for i in range(t):
        lb[P + i], ub[P + i] = pips[i], ns[i]
        ub[S + i] = 0 if cycle_mode else 2 * ns[i]
        ub[R + i] = 0 if cycle_mode else 1
        ub[G + i] = 0 if cycle_mode else big
    for e, (i, j) in enumerate(edges):
        ub[Y + e] = 2 * min(ns[i], ns[j])
        ub[Z + e] = 1
    integ[P:P + t] = 1
    integ[Y:Y + E] = 1
    integ[S:S + t] = 1
    integ[Z:Z + E] = 1
    integ[R:R + t] = 1
    rows, lo, hi = [], [], []

    def row(coefs, low, high):
        r_ = np.zeros(nv)
        for k, v in coefs:
            r_[k] += v
        rows.append(r_)
        lo.append(low)
        hi.append(high)

    for i in range(t):
        coefs = [(P + i, 2), (S + i, -1)] + [(Y + e, -1) for e, (a, b) in enumerate(edges) if i in (a, b)]
        row(coefs, 0, 0)
        row([(S + i, 1), (R + i, -2 * ns[i])], -np.inf, 0)
        row([(S + i, 1), (R + i, -1)], 0, np.inf)
        row([(G + i, 1), (R + i, -big)], -np.inf, 0)
    for e in range(E):
        row([(Y + e, 1), (Z + e, -ub[Y + e])], -np.inf, 0)
        row([(Y + e, 1), (Z + e, -1)], 0, np.inf)
        row([(F + 2 * e, 1), (F + 2 * e + 1, 1), (Z + e, -big)], -np.inf, 0)
    for i in range(t):
        coefs = [(G + i, 1)]
        for e, (a, b) in enumerate(edges):
            if a == i:
                coefs += [(F + 2 * e + 1, 1), (F + 2 * e, -1)]  # in from b, out to b
            elif b == i:
                coefs += [(F + 2 * e, 1), (F + 2 * e + 1, -1)]
        if cycle_mode:
            # module 0 is the source of t-1 units
            demand = -(t - 1) if i == 0 else 1
        else:
            demand = 1
        row(coefs, demand, demand)
    if not edges and cycle_mode:
        return None
    val = _milp_min(c, rows, np.array(lo), np.array(hi), lb, ub, integ)
    if val is None:
        return None
    return int(round(val)) // 2


def compose_path(adj, tuples) -> tuple[int, ...]:
    hcs, pips, ns = (list(col) for col in zip(*tuples))  # child hc is never read
    t = len(adj)
    n = sum(ns)
    if t == 2:
        (a_lo, b_lo), (a_hi, b_hi) = pips, ns
        if not adj[0]:
            return (1, pips[0] + pips[1], n)
        gap = max(a_lo - b_hi, b_lo - a_hi, 0)
        hc = 0 if gap == 0 and n >= 3 else 1
        return (hc, max(1, gap), n)
    pip = _path_milp(adj, pips, ns, cycle_mode=False)
    hc = 1
    if n >= 3 and _path_milp(adj, pips, ns, cycle_mode=True) is not None:
        hc = 0
    return (hc, pip, n)


_SOLVERS = {
    "S-COL": compose_col,
    "S-DOM": compose_dom,
    "S-IND": compose_ind,
    "S-LIP": compose_lip,
    "S-DEL": compose_del,
    "S-PACK": compose_pack,
    "S-PATH": compose_path,
}


def compose(vaqg: VAQG) -> tuple[int, ...]:
    """Value tuple of any graph realizing ``vaqg``."""
    validate(vaqg)
    sid = get_system(vaqg.system).id
    return tuple(int(v) for v in _SOLVERS[sid](vaqg.quotient.adj, vaqg.tuples))


# -- second route: concrete realization + exhaustive solvers --------------------

def realize_for_test(vaqg: VAQG, factors) -> Graph:
    """Substitute ``factors`` into the quotient after checking their tuples."""
    from .values import brute_tuple

    if len(factors) != vaqg.t:
        raise ValueError("need one factor per quotient vertex")
    for i, (h, tup) in enumerate(zip(factors, vaqg.tuples)):
        got = brute_tuple(vaqg.system, h)
        if got != tuple(tup):
            raise ValueError(f"factor {i} has tuple {got}, query says {tuple(tup)}")
    return substitute(vaqg.quotient, list(factors))[0]


@lru_cache(maxsize=None)
def _catalog(system: str, max_n: int) -> dict:
    """First graph (by edge-set enumeration order) on <= max_n vertices for each tuple."""
    from .values import brute_tuple

    found: dict = {}
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for code in range(1 << len(pairs)):
            g = Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if (code >> k) & 1])
            found.setdefault(brute_tuple(system, g), g)
    return found


def canonical_factor(system: str, tup, catalog_n: int = 5) -> Graph:
    sid = get_system(system).id
    if sid == "S-COL":
        return complete(tup[0])
    if sid in ("S-DOM", "S-IND"):
        return edgeless(tup[0])
    if sid == "S-LIP":
        return path(tup[0])
    if sid == "S-PATH":
        hc, pip, n = tup
        if hc == 0:
            return cycle(n)
        return disjoint_union([path(n - pip + 1)] + [path(1)] * (pip - 1))[0]
    try:
        return _catalog(sid, catalog_n)[tuple(tup)]
    except KeyError:
        raise ValueError(f"no catalogued factor with tuple {tuple(tup)}") from None


def reference_compose(vaqg: VAQG) -> tuple[int, ...]:
    """Realize with canonical factors and evaluate exhaustively."""
    from .values import brute_tuple

    g = realize_for_test(vaqg, [canonical_factor(vaqg.system, tup) for tup in vaqg.tuples])
    return brute_tuple(vaqg.system, g)
