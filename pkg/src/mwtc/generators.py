"""Instance generators: bounded modular-width graphs and a few reductions.

Randomness comes from numpy's PCG64 bit generator seeded with ``GenSpec.seed``,
so a GenSpec always produces the same graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brute import bf_is_prime
from .graph import Graph, GraphInputError, complete, disjoint_union, edgeless, substitute

DEFAULT_DEPTH_CAP = 12


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int = 0  # 0 for cographs, otherwise the modular-width bound (>= 4)
    seed: int = 0
    depth_cap: int = DEFAULT_DEPTH_CAP
    prime_bias: float = 0.6  # chance of a prime skeleton when one fits

    def __post_init__(self):
        if self.n < 1:
            raise GraphInputError("n must be positive")
        if self.k != 0 and self.k < 4:
            raise GraphInputError("k must be 0 or at least 4")
        if not 0 <= self.seed < 1 << 64:
            raise GraphInputError("seed must fit in 64 bits")


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_prime(t: int, rng: np.random.Generator, max_tries: int = 10_000) -> Graph:
    """Rejection-sample a prime graph on ``t >= 4`` vertices."""
    for _ in range(max_tries):
        g = random_graph(t, float(rng.uniform(0.25, 0.75)), rng)
        if bf_is_prime(g):
            return g
    raise RuntimeError(f"no prime graph on {t} vertices after {max_tries} tries")


def _split(n: int, parts: int, rng: np.random.Generator) -> list[int]:
    cuts = sorted(rng.choice(np.arange(1, n), size=parts - 1, replace=False).tolist())
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_bounded_mw(spec: GenSpec) -> Graph:
    """Grow a graph by recursive substitution into prime, series and parallel skeletons."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))

    def build(n: int, depth: int) -> Graph:
        if n == 1:
            return Graph(1, (0,))
        if depth >= spec.depth_cap:
            return complete(n) if rng.random() < 0.5 else edgeless(n)
        if spec.k >= 4 and n >= 4 and rng.random() < spec.prime_bias:
            t = int(rng.integers(4, min(spec.k, n) + 1))
            skeleton = random_prime(t, rng)
        else:
            t = int(rng.integers(2, min(4, n) + 1))
            skeleton = complete(t) if rng.random() < 0.5 else edgeless(t)
        sizes = _split(n, t, rng)
        return substitute(skeleton, [build(s, depth + 1) for s in sizes])[0]

    return build(spec.n, 0)


def or_composition(graphs) -> Graph:
    """Disjoint union of the instances."""
    return disjoint_union(list(graphs))[0]


def itpr_reduction(g: Graph, k: int) -> tuple[Graph, list[tuple[int, int, int]]]:
    """Blow up ``g`` so that it has ``n+1`` independent triangles iff ``g`` has ``k``.

    New vertices: ``x_1..x_{n-k+1}``, then triangles ``u_i w_i w'_i``.  Every
    ``u_i`` sees all of ``V(g)``; ``x_i`` (i <= n-k) sees ``w_i, w'_i`` and
    ``x_{n-k+1}`` sees the last ``k`` pairs.  Returns the graph and the ``n``
    triangles, which form an independent packing.
    """
    n = g.n
    if not 2 <= k or 3 * k > n:
        raise GraphInputError(f"need 2 <= k <= n/3, got k={k}, n={n}")
    x0 = n
    nx = n - k + 1
    tri0 = x0 + nx
    total = tri0 + 3 * n
    edges = list(g.edges())
    triangles = []
    for i in range(n):
        u, w, w2 = tri0 + 3 * i, tri0 + 3 * i + 1, tri0 + 3 * i + 2
        triangles.append((u, w, w2))
        edges += [(u, w), (u, w2), (w, w2)]
        edges += [(u, v) for v in range(n)]
        x = x0 + i if i < n - k else x0 + n - k
        edges += [(x, w), (x, w2)]
    return Graph.from_edges(total, edges), triangles


def hp_to_hc(g: Graph) -> Graph:
    """Add one vertex adjacent to everything."""
    n = g.n
    adj = [a | (1 << n) for a in g.adj]
    adj.append((1 << n) - 1)
    return Graph(n + 1, tuple(adj))
