"""Reproducible graph corpora for the differential and property suites."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .generators import GenSpec, random_bounded_mw, random_graph
from .graph import Graph


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 500
    max_n: int = 12
    seed: int = 20240611
    ks: tuple[int, ...] = (4, 5, 6)


@dataclass(frozen=True)
class CorpusGraph:
    label: str
    kind: str  # cograph | random | bounded
    g: Graph


def build_corpus(cfg: CorpusConfig = CorpusConfig()) -> list[CorpusGraph]:
    """Round-robin over cographs, G(n, p) graphs and bounded-mw graphs for each k."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    kinds = ["cograph", "random"] + [f"bounded{k}" for k in cfg.ks]
    out = []
    for i in range(cfg.count):
        kind = kinds[i % len(kinds)]
        n = int(rng.integers(1, cfg.max_n + 1))
        seed = int(rng.integers(0, 1 << 63))
        if kind == "cograph":
            g = random_bounded_mw(GenSpec(n, 0, seed))
        elif kind == "random":
            g = random_graph(n, float(rng.uniform(0.15, 0.85)), np.random.Generator(np.random.PCG64(seed)))
        else:
            g = random_bounded_mw(GenSpec(n, int(kind[len("bounded"):]), seed))
        out.append(CorpusGraph(f"{kind}-{i}-n{n}", kind.rstrip("0123456789") if kind.startswith("bounded") else kind, g))
    return out


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """Every labelled graph on ``n`` vertices (use for n <= 5)."""
    pairs = list(combinations(range(n), 2))
    return tuple(
        Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if (code >> k) & 1])
        for code in range(1 << len(pairs))
    )


def random_small_graphs(n: int, count: int, seed: int) -> list[Graph]:
    rng = np.random.Generator(np.random.PCG64(seed))
    return [random_graph(n, float(rng.uniform(0.1, 0.9)), rng) for _ in range(count)]
