"""Shared helpers for the property and acceptance suites."""

from __future__ import annotations

from functools import lru_cache

from mwtc import brute
from mwtc.corpus import CorpusConfig, all_graphs, build_corpus, random_small_graphs
from mwtc.graph import Graph, bits, induced_subgraph, is_module, modular_replacement, neighbors_of_set
from mwtc.mdtree import decompose
from mwtc.values import brute_tuple


@lru_cache(maxsize=None)
def corpus():
    return tuple(build_corpus(CorpusConfig()))


@lru_cache(maxsize=None)
def replacement_catalogue(system: str) -> dict:
    """Small graphs (all on <= 5 vertices, random ones on 6 and 7) indexed by tuple."""
    pool = [h for n in range(1, 6) for h in all_graphs(n)]
    pool += random_small_graphs(6, 400, seed=61) + random_small_graphs(7, 400, seed=71)
    idx: dict = {}
    for h in pool:
        idx.setdefault(brute_tuple(system, h), []).append(h)
    return idx


def substitution_triples(system: str, graphs, max_result_n: int = 13, per_module: int = 3):
    """Yield ``(g, module mask, h, g')`` with ``h`` a different graph sharing ``g[M]``'s tuple."""
    idx = replacement_catalogue(system)
    for g in graphs:
        if g.n < 3:
            continue
        for nd in decompose(g).root.walk():
            if nd.size < 2 or nd.size == g.n:
                continue
            sub, _ = induced_subgraph(g, nd.module)
            used = 0
            for h in idx.get(brute_tuple(system, sub), ()):
                if used == per_module:
                    break
                if h == sub or g.n - nd.size + h.n > max_result_n:
                    continue
                used += 1
                yield g, nd.module, h, modular_replacement(g, nd.module, h)[0]


# -- structural case lists for optimal solutions ------------------------------

def _restricted(g: Graph, module: int, s: int) -> tuple[Graph, int]:
    h, labels = induced_subgraph(g, module)
    local = 0
    for i, v in enumerate(labels):
        if (s >> v) & 1:
            local |= 1 << i
    return h, local


def _is_min(kind: str, h: Graph, local: int) -> bool:
    size = local.bit_count()
    if kind == "ds":
        covered = 0
        for v in bits(local):
            covered |= h.adj[v] | (1 << v)
        return covered == h.full and size == brute.bf_min_dominating(h)
    if kind == "vc":
        return all((local >> u) & 1 or (local >> v) & 1 for u, v in h.edges()) and size == brute.bf_min_vc(h)
    keep = h.full & ~local
    if kind == "fvs":
        return size == brute.bf_min_fvs(h) and local in brute.bf_witnesses(h, "fvs")
    if kind == "oct":
        return size == brute.bf_min_oct(h) and local in brute.bf_witnesses(h, "oct")
    raise ValueError(kind)


def case_holds(kind: str, g: Graph, module: int, sol: int) -> bool:
    """Does ``sol`` restricted to ``module`` fall in the allowed shapes for ``kind``?"""
    part = sol & module
    h, local = _restricted(g, module, sol)
    if kind == "ds":
        return part.bit_count() <= 1 or _is_min("ds", h, local)
    if part == module:
        return True
    if kind == "vc":
        return _is_min("vc", h, local)
    if kind == "fvs":
        return ((module & ~part).bit_count() == 1 or _is_min("vc", h, local)
                or _is_min("fvs", h, local))
    if kind == "oct":
        return _is_min("vc", h, local) or _is_min("oct", h, local)
    if kind == "cvc":
        return part.bit_count() == 1 or _is_min("vc", h, local)
    raise ValueError(kind)


def nontrivial_modules(g: Graph, need_neighbours: bool) -> list[int]:
    out = []
    for m in brute.bf_enumerate_modules(g):
        if 2 <= m.bit_count() < g.n and (not need_neighbours or neighbors_of_set(g, m)):
            out.append(m)
    return out


def witness_check(kind: str, g: Graph) -> list[tuple[int, bool]]:
    """For each nontrivial module: whether some optimal solution satisfies the case list."""
    sols = brute.bf_witnesses(g, kind)
    if not sols:
        return []
    res = []
    for m in nontrivial_modules(g, need_neighbours=kind != "ds"):
        assert is_module(g, m)
        res.append((m, any(case_holds(kind, g, m, s) for s in sols)))
    return res


# -- hypothesis strategies ------------------------------------------------------

from hypothesis import strategies as st  # noqa: E402


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, f in zip(pairs, flags) if f])
