"""Exhaustive reference solvers.

Every function enumerates vertex subsets (or runs a subset DP) and shares no
code with the composition solvers in :mod:`mwtc.compose`.  They are the ground
truth for differential tests, so they favour obviousness over speed.

Conventions shared with the value systems:

* ``bf_min_cvc`` returns ``n`` when no connected vertex cover exists (two or
  more components carry edges).  For ``n >= 2`` no feasible cover has size
  ``n``, so the sentinel is unambiguous.  The empty set counts as a connected
  cover of an edgeless graph.
* Hamiltonian cycles need at least 3 vertices.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .graph import Graph, bits

DEFAULT_CAP = 14
DP_CAP = 18


class CapExceeded(ValueError):
    """Graph too large for exhaustive search."""


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds brute-force cap {cap}")


@lru_cache(maxsize=256)
def _table(g: Graph):
    """Per-graph arrays over all 2^n subsets: masks, popcounts, membership, K-degrees."""
    masks = np.arange(1 << g.n, dtype=np.int64)
    size = np.bitwise_count(masks).astype(np.int64)
    member = np.stack([(masks >> v) & 1 for v in range(g.n)]).astype(bool)
    deg = np.stack([np.bitwise_count(masks & g.adj[v]) for v in range(g.n)]).astype(np.int64)
    return masks, size, member, deg


def _ncomponents(g: Graph, mask: int) -> int:
    count = 0
    while mask:
        seen = frontier = mask & -mask
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        mask &= ~seen
        count += 1
    return count


def _bipartite(g: Graph, mask: int) -> bool:
    rest = mask
    while rest:
        side = [rest & -rest, 0]
        frontier, parity, seen = side[0], 0, side[0]
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= mask
            if nxt & side[parity]:
                return False
            parity ^= 1
            side[parity] |= nxt & ~seen
            frontier = nxt & ~seen
            seen |= nxt
        rest &= ~seen
    return True


def _optimal(values: np.ndarray, ok: np.ndarray, maximize: bool) -> tuple[int, np.ndarray]:
    sel = values[ok]
    best = int(sel.max() if maximize else sel.min())
    return best, ok & (values == best)


# -- colouring ---------------------------------------------------------------

@lru_cache(maxsize=256)
def bf_chromatic(g: Graph, cap: int = DP_CAP) -> int:
    """Smallest k such that the k-fold covers by independent sets exist (inclusion-exclusion)."""
    _check_cap(g, cap)
    n = g.n
    ind = [0] * (1 << n)
    ind[0] = 1
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & ~(1 << v)
        ind[s] = ind[rest] + ind[rest & ~g.adj[v]]
    signs = [1 if (n - s.bit_count()) % 2 == 0 else -1 for s in range(1 << n)]
    power = [1] * (1 << n)
    for k in range(1, n + 1):
        power = [p * i for p, i in zip(power, ind)]
        if sum(sg * p for sg, p in zip(signs, power)) > 0:
            return k
    raise AssertionError("unreachable: n colours always suffice")


# -- independence, covers, domination -----------------------------------------

@lru_cache(maxsize=256)
def bf_max_is(g: Graph, cap: int = DP_CAP) -> int:
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = ~np.any(member & (deg > 0), axis=0)
    return int(size[ok].max())


@lru_cache(maxsize=256)
def bf_max_clique(g: Graph, cap: int = DP_CAP) -> int:
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = ~np.any(member & (deg != size - 1), axis=0)
    return int(size[ok].max())


def _vc_ok(g: Graph) -> np.ndarray:
    masks, size, member, deg = _table(g)
    ok = np.ones(len(masks), dtype=bool)
    for u, v in g.edges():
        ok &= member[u] | member[v]
    return ok


@lru_cache(maxsize=256)
def bf_min_vc(g: Graph, cap: int = DP_CAP) -> int:
    _check_cap(g, cap)
    return int(_table(g)[1][_vc_ok(g)].min())


def _ds_ok(g: Graph) -> np.ndarray:
    masks, size, member, deg = _table(g)
    covered = np.zeros(len(masks), dtype=np.int64)
    for v in range(g.n):
        covered |= np.where(member[v], g.adj[v] | (1 << v), 0)
    return covered == g.full


@lru_cache(maxsize=256)
def bf_min_dominating(g: Graph, cap: int = DP_CAP) -> int:
    _check_cap(g, cap)
    return int(_table(g)[1][_ds_ok(g)].min())


def _cvc_ok(g: Graph) -> np.ndarray:
    ok = _vc_ok(g)
    masks = _table(g)[0]
    for idx in np.flatnonzero(ok):
        m = int(masks[idx])
        if m and _ncomponents(g, m) != 1:
            ok[idx] = False
    return ok


@lru_cache(maxsize=256)
def bf_min_cvc(g: Graph, cap: int = DEFAULT_CAP) -> int:
    _check_cap(g, cap)
    ok = _cvc_ok(g)
    if not ok.any():
        return g.n
    return int(_table(g)[1][ok].min())


def _deletion_search(g: Graph, keep_ok) -> tuple[int, list[int]]:
    """Smallest deletion set X with ``keep_ok(V - X)``; returns size and all optimal X."""
    masks, size, member, deg = _table(g)
    full = g.full
    for k in range(g.n + 1):
        hits = [int(m) for m in masks[size == k] if keep_ok(full & ~int(m))]
        if hits:
            return k, hits
    raise AssertionError("unreachable: deleting everything always works")


def _forest(g: Graph, keep: int) -> bool:
    edges = sum((g.adj[v] & keep).bit_count() for v in bits(keep)) // 2
    return edges == keep.bit_count() - _ncomponents(g, keep)


@lru_cache(maxsize=256)
def bf_min_fvs(g: Graph, cap: int = DEFAULT_CAP) -> int:
    _check_cap(g, cap)
    return _deletion_search(g, lambda keep: _forest(g, keep))[0]


@lru_cache(maxsize=256)
def bf_min_oct(g: Graph, cap: int = DEFAULT_CAP) -> int:
    _check_cap(g, cap)
    return _deletion_search(g, lambda keep: _bipartite(g, keep))[0]


def bf_components(g: Graph) -> int:
    return _ncomponents(g, g.full)


# -- witnesses ---------------------------------------------------------------

def bf_witnesses(g: Graph, kind: str, cap: int = DEFAULT_CAP) -> list[int]:
    """All optimal solutions (as vertex bitmasks) for ``ds``, ``vc``, ``cvc``, ``fvs`` or ``oct``."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    if kind in ("ds", "vc", "cvc"):
        ok = {"ds": _ds_ok, "vc": _vc_ok, "cvc": _cvc_ok}[kind](g)
        if not ok.any():
            return []
        _, sel = _optimal(size, ok, maximize=False)
        return [int(m) for m in masks[sel]]
    if kind == "fvs":
        return _deletion_search(g, lambda keep: _forest(g, keep))[1]
    if kind == "oct":
        return _deletion_search(g, lambda keep: _bipartite(g, keep))[1]
    raise ValueError(f"unknown witness kind {kind!r}")


# -- Hamiltonicity and path partitions ----------------------------------------

@lru_cache(maxsize=256)
def bf_hc(g: Graph, cap: int = DP_CAP) -> bool:
    """Hamiltonian cycle via reachability DP from vertex 0."""
    _check_cap(g, cap)
    n = g.n
    if n < 3:
        return False
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, 1 << n, 2):
        ends = reach[mask]
        for v in bits(ends):
            for u in bits(g.adj[v] & ~mask):
                reach[mask | (1 << u)] |= 1 << u
    return bool(reach[g.full] & g.adj[0])


@lru_cache(maxsize=256)
def bf_hp(g: Graph, cap: int = DP_CAP) -> bool:
    """Hamiltonian path via reachability DP over all start vertices."""
    _check_cap(g, cap)
    n = g.n
    reach = [0] * (1 << n)
    for v in range(n):
        reach[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        for v in bits(reach[mask]):
            for u in bits(g.adj[v] & ~mask):
                reach[mask | (1 << u)] |= 1 << u
    return reach[g.full] != 0


@lru_cache(maxsize=256)
def bf_pip(g: Graph, cap: int = DP_CAP) -> int:
    """Minimum path partition, building paths one after another.

    ``count[mask]`` is the fewest paths covering ``mask`` and ``ends[mask]``
    the vertices at which the path under construction can end in such a cover.
    """
    _check_cap(g, cap)
    n = g.n
    big = n + 1
    count = [big] * (1 << n)
    ends = [0] * (1 << n)
    for v in range(n):
        count[1 << v] = 1
        ends[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        c = count[mask]
        if c == big:
            continue
        reach = 0
        for v in bits(ends[mask]):
            reach |= g.adj[v]
        for u in bits(g.full & ~mask):
            nm = mask | (1 << u)
            cand = c if (reach >> u) & 1 else c + 1
            if cand < count[nm]:
                count[nm] = cand
                ends[nm] = 1 << u
            elif cand == count[nm]:
                ends[nm] |= 1 << u
    return count[g.full]


# -- induced structures --------------------------------------------------------

@lru_cache(maxsize=256)
def bf_lip(g: Graph, cap: int = DP_CAP) -> int:
    """Vertex count of a longest induced path."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    maxdeg_ok = ~np.any(member & (deg > 2), axis=0)
    edges = (member * deg).sum(axis=0) // 2
    cand = maxdeg_ok & (edges == size - 1) & (size > 0)
    best = 0
    order = np.flatnonzero(cand)
    for idx in order[np.argsort(-size[order], kind="stable")]:
        if size[idx] <= best:
            break
        if _ncomponents(g, int(masks[idx])) == 1:
            best = int(size[idx])
    return best


@lru_cache(maxsize=256)
def bf_im(g: Graph, cap: int = DP_CAP) -> int:
    """Edges in a largest induced matching."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = ~np.any(member & (deg != 1), axis=0)
    return int(size[ok].max()) // 2


@lru_cache(maxsize=256)
def bf_itp(g: Graph, cap: int = DP_CAP) -> int:
    """Triangles in a largest independent triangle packing."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = ~np.any(member & (deg != 2), axis=0)
    for v in range(g.n):
        closes = np.zeros(len(masks), dtype=bool)
        for u in bits(g.adj[v]):
            closes |= member[u] & ((masks & (g.adj[u] & g.adj[v])) != 0)
        ok &= ~member[v] | closes
    return int(size[ok].max()) // 3


@lru_cache(maxsize=256)
def bf_icp(g: Graph, cap: int = DP_CAP) -> int:
    """Cycles in a largest independent cycle packing (induced 2-regular subgraph)."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = ~np.any(member & (deg != 2), axis=0)
    best = 0
    for idx in np.flatnonzero(ok):
        m = int(masks[idx])
        if m.bit_count() // 3 > best:
            best = max(best, _ncomponents(g, m))
    return best


# -- modules -----------------------------------------------------------------

@lru_cache(maxsize=256)
def bf_enumerate_modules(g: Graph, cap: int = DP_CAP) -> tuple[int, ...]:
    """Every nonempty module of ``g`` as a bitmask (the empty set is disregarded)."""
    _check_cap(g, cap)
    masks, size, member, deg = _table(g)
    ok = masks > 0
    for v in range(g.n):
        hit = masks & g.adj[v]
        ok &= member[v] | (hit == 0) | (hit == masks)
    return tuple(int(m) for m in masks[ok])


def bf_is_prime(g: Graph) -> bool:
    full = g.full
    return all(m == full or m.bit_count() == 1 for m in bf_enumerate_modules(g))


def itp_exact(g: Graph) -> int:
    """Independent triangle packing for graphs beyond the subset cap.

    Builds the conflict graph on triangles (sharing a vertex or joined by an
    edge) and finds a maximum independent set in it by plain branching.
    """
    tris = []
    for a in range(g.n):
        for b in bits(g.adj[a] >> (a + 1) << (a + 1)):
            for c in bits(g.adj[a] & g.adj[b] >> (b + 1) << (b + 1)):
                tris.append((1 << a) | (1 << b) | (1 << c))
    closed = [t | _nbhd(g, t) for t in tris]
    conflict = [0] * len(tris)
    for i, ci in enumerate(closed):
        for j in range(i + 1, len(tris)):
            if ci & tris[j]:
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i

    best = 0

    def branch(cand: int, size: int):
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        # a vertex with at most one live neighbour can always be taken
        for v in bits(cand):
            if (conflict[v] & cand).bit_count() <= 1:
                branch(cand & ~conflict[v] & ~(1 << v), size + 1)
                return
        v = max(bits(cand), key=lambda u: (conflict[u] & cand).bit_count())
        branch(cand & ~conflict[v] & ~(1 << v), size + 1)
        branch(cand & ~(1 << v), size)

    branch((1 << len(tris)) - 1, 0)
    return best


def _nbhd(g: Graph, mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return out
