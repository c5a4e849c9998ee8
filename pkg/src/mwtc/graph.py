"""Simple undirected graphs on vertices ``0..n-1`` and module primitives.

Adjacency is a tuple of Python ints used as bitsets: bit ``u`` of ``adj[v]``
is set iff ``uv`` is an edge.  Graphs are immutable; every operation returns
a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphInputError(ValueError):
    """Malformed graph data or out-of-range vertex sets."""


class ModuleContractError(ValueError):
    """A vertex set passed as a module is not a module."""


def bits(mask: int):
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphInputError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise GraphInputError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full or (a >> v) & 1:
                raise GraphInputError(f"bad adjacency row for vertex {v}")
            for u in bits(a):
                if not (self.adj[u] >> v) & 1:
                    raise GraphInputError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- small named graphs ------------------------------------------------------

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# -- vertex sets -------------------------------------------------------------

def _check_set(g: Graph, m: Iterable[int] | int) -> int:
    if isinstance(m, int):
        if m < 0 or m & ~g.full:
            raise GraphInputError("vertex mask out of range")
        return m
    mask = 0
    for v in m:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} out of range for n={g.n}")
        mask |= 1 << v
    return mask


def is_module(g: Graph, m: Iterable[int] | int) -> bool:
    mask = _check_set(g, m)
    for v in bits(g.full & ~mask):
        hit = g.adj[v] & mask
        if hit and hit != mask:
            return False
    return True


def neighbors_of_set(g: Graph, m: Iterable[int] | int) -> set[int]:
    mask = _check_set(g, m)
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return set(bits(out & ~mask))


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)))


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> tuple[Graph, list[int]]:
    """Return ``(h, labels)``: vertex ``i`` of ``h`` is vertex ``labels[i]`` of ``g``."""
    mask = _check_set(g, s)
    if not mask:
        raise GraphInputError("induced subgraph of the empty set")
    labels = list(bits(mask))
    pos = {v: i for i, v in enumerate(labels)}
    adj = []
    for v in labels:
        row = 0
        for u in bits(g.adj[v] & mask):
            row |= 1 << pos[u]
        adj.append(row)
    return Graph(len(labels), tuple(adj)), labels


def disjoint_union(gs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Block-diagonal union; returns the graph and the start offset of each block."""
    if not gs:
        raise GraphInputError("disjoint union of an empty list")
    adj: list[int] = []
    offsets = []
    for h in gs:
        off = len(adj)
        offsets.append(off)
        adj.extend(a << off for a in h.adj)
    return Graph(len(adj), tuple(adj)), offsets


def substitute(quotient: Graph, factors: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Replace quotient vertex ``i`` by ``factors[i]``; returns graph and block offsets."""
    if len(factors) != quotient.n:
        raise GraphInputError("need one factor per quotient vertex")
    union, offsets = disjoint_union(factors)
    blocks = [((1 << h.n) - 1) << off for h, off in zip(factors, offsets)]
    adj = list(union.adj)
    for i in range(quotient.n):
        cross = 0
        for j in bits(quotient.adj[i]):
            cross |= blocks[j]
        for v in bits(blocks[i]):
            adj[v] |= cross
    return Graph(len(adj), tuple(adj)), offsets


def modular_replacement(g: Graph, m: Iterable[int] | int, h: Graph) -> tuple[Graph, list[int]]:
    """Swap the factor ``g[m]`` for ``h``, wiring ``h`` to ``N(m)``.

    Returns the new graph and a map ``old vertex -> new vertex`` for the
    vertices outside ``m`` (entries for ``m`` are -1).  The vertices of ``h``
    occupy the last ``h.n`` indices.
    """
    mask = _check_set(g, m)
    if not mask:
        raise GraphInputError("cannot replace the empty module")
    if not is_module(g, mask):
        raise ModuleContractError("vertex set is not a module")
    keep = [v for v in range(g.n) if not (mask >> v) & 1]
    relabel = [-1] * g.n
    for i, v in enumerate(keep):
        relabel[v] = i
    k = len(keep)
    nbr = 0
    for v in bits(mask):
        nbr |= g.adj[v]
    nbr &= ~mask
    hblock = ((1 << h.n) - 1) << k
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & ~mask):
            row |= 1 << relabel[u]
        if (nbr >> v) & 1:
            row |= hblock
        adj.append(row)
    outside = 0
    for v in bits(nbr):
        outside |= 1 << relabel[v]
    for a in h.adj:
        adj.append((a << k) | outside)
    return Graph(k + h.n, tuple(adj)), relabel


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by minimum vertex."""
    rest = g.full if within is None else within
    out = []
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~seen
            seen |= nxt
            frontier = nxt
        out.append(seen)
        rest &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism-invariant key by minimising over all relabelings (small n only)."""
    from itertools import permutations

    if g.n > 8:
        raise GraphInputError("canonical_form is brute force; n must be <= 8")
    best = None
    for perm in permutations(range(g.n)):
        inv = [0] * g.n
        for i, p in enumerate(perm):
            inv[p] = i
        key = tuple(sorted(tuple(sorted((inv[u], inv[v]))) for u, v in g.edges()))
        if best is None or key < best:
            best = key
    return g.n, best


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(map(int.bit_count, a.adj)) != sorted(map(int.bit_count, b.adj)):
        return False
    return canonical_form(a) == canonical_form(b)


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphInputError("empty graph file")
    try:
        n, m = (int(x) for x in rows[0])
    except ValueError as exc:
        raise GraphInputError(f"bad header line: {' '.join(rows[0])}") from exc
    if len(rows) - 1 != m:
        raise GraphInputError(f"header says {m} edges, found {len(rows) - 1}")
    seen = set()
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise GraphInputError(f"bad edge line: {' '.join(r)}")
        try:
            u, v = int(r[0]), int(r[1])
        except ValueError as exc:
            raise GraphInputError(f"bad edge line: {' '.join(r)}") from exc
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphInputError(f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph, header: str | None = None) -> str:
    lines = [header] if header else []
    es = g.edges()
    lines.append(f"{g.n} {len(es)}")
    lines.extend(f"{u} {v}" for u, v in es)
    return "\n".join(lines) + "\n"
