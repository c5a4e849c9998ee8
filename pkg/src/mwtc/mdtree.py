"""Modular decomposition trees, quotients and modular-width.

``decompose`` is a recursive refinement algorithm (cubic-ish, bitset based):

* a disconnected factor is a *parallel* node whose children are its components;
* a factor with disconnected complement is a *series* node whose children are
  the co-components;
* otherwise the node is *prime* and its children are the maximal proper
  modules, found by growing the smallest module containing each vertex pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .brute import CapExceeded, bf_enumerate_modules
from .graph import Graph, bits, components, induced_subgraph

LEAF, PARALLEL, SERIES, PRIME = "leaf", "parallel", "series", "prime"
KINDS = (LEAF, PARALLEL, SERIES, PRIME)

MW_BRUTE_CAP = 12
VALIDATE_BRUTE_CAP = 10


class DecompositionError(RuntimeError):
    """A tree node's children are not pairwise fully adjacent or non-adjacent."""


@dataclass(frozen=True)
class MDNode:
    kind: str
    module: int
    children: tuple["MDNode", ...] = ()

    @property
    def vertices(self) -> list[int]:
        return list(bits(self.module))

    @property
    def size(self) -> int:
        return self.module.bit_count()

    def walk(self):
        """Pre-order traversal."""
        yield self
        for c in self.children:
            yield from c.walk()

    def postorder(self):
        for c in self.children:
            yield from c.postorder()
        yield self

    def has_prime(self) -> bool:
        return any(nd.kind == PRIME for nd in self.walk())


@dataclass(frozen=True)
class MDTree:
    root: MDNode
    source: Graph
    ids: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for i, nd in enumerate(self.root.walk()):
            self.ids[id(nd)] = i

    def node_id(self, node: MDNode) -> int:
        return self.ids[id(node)]

    def nodes(self) -> list[MDNode]:
        return list(self.root.walk())


# -- decomposition -------------------------------------------------------------

def _co_components(g: Graph, mask: int) -> list[int]:
    """Components of the complement of ``g[mask]``."""
    out = []
    rest = mask
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= mask & ~g.adj[v] & ~(1 << v)
            frontier = nxt & rest & ~seen
            seen |= frontier
        out.append(seen)
        rest &= ~seen
    return out


def _closure(g: Graph, mask: int, start: int) -> int:
    """Smallest module of ``g[mask]`` containing the vertex set ``start``."""
    s = start
    while True:
        add = 0
        for x in bits(mask & ~s):
            hit = g.adj[x] & s
            if hit and hit != s:
                add |= 1 << x
        if not add:
            return s
        s |= add


def _prime_children(g: Graph, mask: int) -> list[int]:
    groups = []
    rest = mask
    while rest:
        v = rest & -rest
        group = v
        for u in bits(rest & ~v):
            if (group >> u) & 1:
                continue
            c = _closure(g, mask, v | (1 << u))
            if c != mask:
                group |= c
        groups.append(group)
        rest &= ~group
    return groups


def _build(g: Graph, mask: int) -> MDNode:
    if mask.bit_count() == 1:
        return MDNode(LEAF, mask)
    parts = components(g, mask)
    if len(parts) > 1:
        kind = PARALLEL
    else:
        parts = _co_components(g, mask)
        kind = SERIES if len(parts) > 1 else PRIME
        if kind == PRIME:
            parts = _prime_children(g, mask)
    parts.sort(key=lambda m: m & -m)
    return MDNode(kind, mask, tuple(_build(g, p) for p in parts))


def decompose(g: Graph) -> MDTree:
    return MDTree(_build(g, g.full), g)


# -- quotients and width -------------------------------------------------------

def quotient_of(g: Graph, child_modules: list[int]) -> Graph:
    """Quotient graph of ``g`` with respect to the given disjoint modules (validated)."""
    t = len(child_modules)
    adj = [0] * t
    for i in range(t):
        for j in range(i + 1, t):
            a, b = child_modules[i], child_modules[j]
            crossing = sum((g.adj[v] & b).bit_count() for v in bits(a))
            if crossing == a.bit_count() * b.bit_count():
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            elif crossing:
                raise DecompositionError(f"children {i} and {j} are partially adjacent")
    return Graph(t, tuple(adj))


def node_quotient(tree: MDTree, node: MDNode) -> Graph:
    if node.kind == LEAF:
        raise ValueError("leaves have no quotient")
    return quotient_of(tree.source, [c.module for c in node.children])


def modular_width(tree: MDTree) -> int:
    return max((len(nd.children) for nd in tree.root.walk() if nd.kind == PRIME), default=0)


def _is_prime_subgraph(g: Graph, mask: int) -> bool:
    h, _ = induced_subgraph(g, mask)
    full = h.full
    return all(m == full or m.bit_count() == 1 for m in bf_enumerate_modules(h))


def mw_bruteforce(g: Graph, cap: int = MW_BRUTE_CAP) -> int:
    """Largest induced subgraph on >= 4 vertices whose modules are all trivial; 0 if none."""
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds mw_bruteforce cap {cap}")
    for k in range(g.n, 3, -1):
        for sub in combinations(range(g.n), k):
            mask = sum(1 << v for v in sub)
            if _is_prime_subgraph(g, mask):
                return k
    return 0


# -- validation ----------------------------------------------------------------

def _strong_modules_bruteforce(g: Graph) -> set[int]:
    mods = bf_enumerate_modules(g)
    strong = set()
    for a in mods:
        if all(not (a & b) or not (a & ~b) or not (b & ~a) for b in mods):
            strong.add(a)
    return strong


def validate_tree(tree: MDTree, brute_cap: int = VALIDATE_BRUTE_CAP) -> list[str]:
    """Check every tree invariant by definition; returns a list of violations."""
    g = tree.source
    issues: list[str] = []
    if tree.root.module != g.full:
        issues.append("root module is not the full vertex set")
    for nd in tree.root.walk():
        tag = f"node {sorted(nd.vertices)}"
        if nd.kind not in KINDS:
            issues.append(f"{tag}: unknown kind {nd.kind!r}")
            continue
        if (nd.kind == LEAF) != (nd.size == 1 and not nd.children):
            issues.append(f"{tag}: leaf iff singleton without children violated")
        if nd.kind == LEAF:
            continue
        if len(nd.children) < 2:
            issues.append(f"{tag}: internal node with fewer than two children")
        union = 0
        for c in nd.children:
            if union & c.module:
                issues.append(f"{tag}: children overlap")
            union |= c.module
        if union != nd.module:
            issues.append(f"{tag}: children do not partition the module")
        for c in nd.children:
            if not _is_module_in(g, nd.module, c.module):
                issues.append(f"{tag}: child {sorted(c.vertices)} is not a module")
        h, _ = induced_subgraph(g, nd.module)
        connected = len(components(g, nd.module)) == 1
        co_connected = len(_co_components(g, nd.module)) == 1
        expected = PARALLEL if not connected else SERIES if not co_connected else PRIME
        if nd.kind != expected:
            issues.append(f"{tag}: kind {nd.kind} but factor says {expected}")
        try:
            q = quotient_of(g, [c.module for c in nd.children])
        except DecompositionError as exc:
            issues.append(f"{tag}: {exc}")
            continue
        if nd.kind == PARALLEL and q.m != 0:
            issues.append(f"{tag}: parallel quotient has edges")
        if nd.kind == SERIES and q.m != q.n * (q.n - 1) // 2:
            issues.append(f"{tag}: series quotient is not complete")
        if nd.kind == PRIME:
            if q.n < 4:
                issues.append(f"{tag}: prime node with fewer than 4 children")
            # maximality: no union of >= 2 (but not all) children is a module
            if q.n <= VALIDATE_BRUTE_CAP:
                qmods = bf_enumerate_modules(q)
                if any(1 < m.bit_count() < q.n for m in qmods):
                    issues.append(f"{tag}: prime quotient has a nontrivial module")
    if g.n <= brute_cap:
        expected = _strong_modules_bruteforce(g)
        got = {nd.module for nd in tree.root.walk()}
        for m in sorted(expected - got):
            issues.append(f"strong module {sorted(bits(m))} missing from tree")
        for m in sorted(got - expected):
            issues.append(f"tree node {sorted(bits(m))} is not a strong module")
    return issues


def _is_module_in(g: Graph, within: int, m: int) -> bool:
    for v in bits(within & ~m):
        hit = g.adj[v] & m
        if hit and hit != m:
            return False
    return True


# -- serialization -------------------------------------------------------------

def format_tree(tree: MDTree) -> str:
    lines = []

    def emit(nd: MDNode, depth: int):
        verts = ",".join(str(v) for v in nd.vertices)
        lines.append(f"{'  ' * depth}{nd.kind} module={{{verts}}}")
        for c in nd.children:
            emit(c, depth + 1)

    emit(tree.root, 0)
    return "\n".join(lines) + "\n"


def parse_tree(text: str, source: Graph) -> MDTree:
    """Inverse of :func:`format_tree` for a known source graph."""
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        depth = (len(line) - len(line.lstrip(" "))) // 2
        kind, rest = line.strip().split(" ", 1)
        inner = rest[len("module={"):-1]
        mask = sum(1 << int(v) for v in inner.split(",") if v)
        rows.append((depth, kind, mask))

    def build(i: int, depth: int):
        d, kind, mask = rows[i]
        kids = []
        j = i + 1
        while j < len(rows) and rows[j][0] > depth:
            child, j = build(j, depth + 1)
            kids.append(child)
        return MDNode(kind, mask, tuple(kids)), j

    root, _ = build(0, 0)
    return MDTree(root, source)
