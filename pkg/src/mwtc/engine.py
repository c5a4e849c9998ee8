"""Bottom-up evaluation over the modular decomposition tree with an oracle.

Every internal node is resolved by oracle queries on values-attached quotients:
a prime node asks once about its whole quotient, and a parallel or series node
folds its children left to right, asking about a two-vertex quotient (edgeless
or ``K_2``) per step.  Oracles only ever see the encoded bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .compose import compose
from .encoding import (
    VAQG,
    append_candidate,
    decode_query,
    encode_prefix,
    split_query,
    to_bytes,
    value_width,
)
from .graph import Graph, bits, components
from .mdtree import LEAF, PARALLEL, PRIME, SERIES, MDNode, decompose, modular_width, node_quotient
from .values import derive_answer, get_problem, get_system, transform_input

FUNCTION, MEMBERSHIP = "function", "membership"
MEMBERSHIP_CAP = 30

_EDGELESS2 = Graph(2, (0, 0))
_K2 = Graph(2, (2, 1))


class InternalConsistencyError(RuntimeError):
    """The oracle's answers do not determine a unique tuple."""


class OracleContractError(RuntimeError):
    """An oracle answered with something outside its interface."""


# -- oracles -------------------------------------------------------------------

class FunctionOracle:
    """Maps an encoded query to the tuple of any graph realizing it."""

    mode = FUNCTION

    def __init__(self, system: str):
        self.system = get_system(system).id

    def __call__(self, data: bytes) -> tuple[int, ...]:
        q = decode_query(data, self.system)
        if q.candidate is not None:
            raise OracleContractError("function oracle received a candidate tuple")
        return compose(q.vaqg)


class MembershipOracle:
    """Accepts ``(X, k_1..k_r)`` iff ``k`` is the tuple of every realization of ``X``.

    Answers depend on the bytes only; the composed tuple is memoised by the
    candidate-free part of the query.
    """

    mode = MEMBERSHIP

    def __init__(self, system: str):
        self.system = get_system(system).id
        self._memo: dict = {}

    def __call__(self, data: bytes) -> bool:
        key, cand = split_query(data)
        hit = self._memo.get(key)
        if hit is None:
            q = decode_query(data, self.system)  # full validation on first sight
            if q.candidate is None:
                raise OracleContractError("membership oracle needs a candidate tuple")
            hit = self._memo[key] = compose(q.vaqg)
        if cand is None:
            raise OracleContractError("membership oracle needs a candidate tuple")
        return hit == cand


def make_oracle(system: str, mode: str = FUNCTION):
    if mode == FUNCTION:
        return FunctionOracle(system)
    if mode == MEMBERSHIP:
        return MembershipOracle(system)
    raise ValueError(f"unknown oracle mode {mode!r}")


def format_answer(answer) -> str:
    if isinstance(answer, bool):
        return "1" if answer else "0"
    return ",".join(str(v) for v in answer)


# -- transcript ----------------------------------------------------------------

@dataclass
class TranscriptEntry:
    node: int
    kind: str  # prime | merge
    bits: int
    hex: str
    mode: str
    answer: str
    count: int

    def line(self) -> str:
        return (f"node={self.node} kind={self.kind} bits={self.bits} hex={self.hex} "
                f"mode={self.mode} answer={self.answer} count={self.count}")


@dataclass
class Transcript:
    system: str
    n: int
    mw: int = 0
    exponent: int = 1
    entries: list[TranscriptEntry] = field(default_factory=list)

    @property
    def queries(self) -> int:
        return sum(e.count for e in self.entries)

    @property
    def max_query_bits(self) -> int:
        return max((e.bits for e in self.entries), default=0)

    def dump(self) -> str:
        lines = [e.line() for e in self.entries]
        lines.append(f"max_query_bits={self.max_query_bits} queries={self.queries} "
                     f"mw={self.mw} n={self.n} system={self.system} c={self.exponent}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Transcript":
        rows = [dict(tok.split("=", 1) for tok in line.split()) for line in text.splitlines() if line.strip()]
        if not rows or "max_query_bits" not in rows[-1]:
            raise ValueError("transcript lacks its summary line")
        meta = rows[-1]
        tr = cls(meta["system"], int(meta["n"]), int(meta["mw"]), int(meta.get("c", 1)))
        for r in rows[:-1]:
            tr.entries.append(TranscriptEntry(int(r["node"]), r["kind"], int(r["bits"]), r["hex"],
                                              r["mode"], r["answer"], int(r["count"])))
        if tr.queries != int(meta["queries"]) or tr.max_query_bits != int(meta["max_query_bits"]):
            raise ValueError("transcript summary disagrees with its entries")
        return tr


# -- longest induced path short cut ----------------------------------------------

def has_induced_p4(g: Graph, within: int | None = None) -> bool:
    """Look for a-b-c-d induced, iterating over the middle edge bc."""
    mask = g.full if within is None else within
    for b in bits(mask):
        for c in bits(g.adj[b] & mask):
            ends_a = g.adj[b] & ~g.adj[c] & mask & ~(1 << c)
            ends_d = g.adj[c] & ~g.adj[b] & mask & ~(1 << b)
            for a in bits(ends_a):
                if ends_d & ~g.adj[a]:
                    return True
    return False


def _small_lip(g: Graph, mask: int) -> int:
    """Longest induced path of a P4-free factor: 1, 2 or 3."""
    if all(not (g.adj[v] & mask) for v in bits(mask)):
        return 1
    for comp in components(g, mask):
        k = comp.bit_count()
        if any((g.adj[v] & comp).bit_count() != k - 1 for v in bits(comp)):
            return 3
    return 2


def lip_small_case(g: Graph) -> int | None:
    """Longest induced path when it has at most 3 vertices, else None."""
    if has_induced_p4(g):
        return None
    return _small_lip(g, g.full)


# -- the engine ------------------------------------------------------------------

class _Run:
    def __init__(self, g: Graph, system: str, oracle, strict: bool, membership_cap: int):
        self.g = g
        self.sys = get_system(system)
        self.oracle = oracle
        self.strict = strict
        self.w = value_width(g.n, self.sys.exponent)
        self.bound = self.sys.bound(g.n)
        if oracle.mode == MEMBERSHIP and self.bound > membership_cap:
            raise ValueError(f"membership enumeration bound {self.bound} exceeds cap {membership_cap}")
        self.tree = decompose(g)
        self.transcript = Transcript(self.sys.id, g.n, modular_width(self.tree), self.sys.exponent)
        self.lip = self.sys.id == "S-LIP"

    def ask(self, node_id: int, kind: str, vaqg: VAQG) -> tuple[int, ...]:
        prefix, nbits = encode_prefix(vaqg, self.w)
        if self.oracle.mode == FUNCTION:
            data = to_bytes(prefix, nbits)
            ans = self.oracle(data)
            if not isinstance(ans, tuple) or len(ans) != self.sys.r:
                raise OracleContractError(f"oracle returned {ans!r}")
            self.transcript.entries.append(
                TranscriptEntry(node_id, kind, nbits, data.hex(), FUNCTION, format_answer(ans), 1))
            return ans
        accepted = None
        count = 0
        for cand in product(range(self.bound + 1), repeat=self.sys.r):
            acc, qbits = append_candidate(prefix, nbits, cand, self.w)
            data = to_bytes(acc, qbits)
            count += 1
            if self.oracle(data):
                if accepted is not None:
                    raise InternalConsistencyError(
                        f"node {node_id}: oracle accepted both {accepted[0]} and {cand}")
                accepted = (cand, data, qbits)
                if not self.strict:
                    break
        if accepted is None:
            raise InternalConsistencyError(f"node {node_id}: oracle accepted no candidate tuple")
        cand, data, qbits = accepted
        self.transcript.entries.append(
            TranscriptEntry(node_id, kind, qbits, data.hex(), MEMBERSHIP, "1", count))
        return cand

    def run(self) -> tuple[int, ...]:
        if self.lip and not self.tree.root.has_prime():
            return (_small_lip(self.g, self.g.full),)
        values: dict[int, tuple] = {}
        prime_below: dict[int, bool] = {}
        for node in self.tree.root.postorder():
            nid = self.tree.node_id(node)
            kids = [self.tree.node_id(c) for c in node.children]
            prime_below[nid] = node.kind == PRIME or any(prime_below[k] for k in kids)
            if node.kind == LEAF:
                values[nid] = self.sys.leaf
            elif self.lip and not prime_below[nid]:
                values[nid] = (_small_lip(self.g, node.module),)
            elif node.kind == PRIME:
                values[nid] = self.process_prime(node, [values[k] for k in kids])
            else:
                values[nid] = self.process_degenerate(
                    node, [values[k] for k in kids], [prime_below[k] for k in kids])
        return values[self.tree.node_id(self.tree.root)]

    def process_prime(self, node: MDNode, child_values) -> tuple[int, ...]:
        q = VAQG(node_quotient(self.tree, node), tuple(child_values), self.sys.id)
        return self.ask(self.tree.node_id(node), "prime", q)

    def process_degenerate(self, node: MDNode, child_values, child_prime) -> tuple[int, ...]:
        pair = _K2 if node.kind == SERIES else _EDGELESS2
        nid = self.tree.node_id(node)
        acc, acc_prime, acc_mask = child_values[0], child_prime[0], node.children[0].module
        for child, val, pr in zip(node.children[1:], child_values[1:], child_prime[1:]):
            acc_mask |= child.module
            if self.lip and not (acc_prime or pr):
                acc = (_small_lip(self.g, acc_mask),)
            else:
                acc = self.ask(nid, "merge", VAQG(pair, (acc, val), self.sys.id))
            acc_prime = acc_prime or pr
        return acc


def solve(g: Graph, system: str, oracle=None, mode: str = FUNCTION, strict: bool = True,
          membership_cap: int = MEMBERSHIP_CAP) -> tuple[tuple[int, ...], Transcript]:
    """Value tuple of ``g`` for ``system`` plus the transcript of oracle queries."""
    if oracle is None:
        oracle = make_oracle(system, mode)
    run = _Run(g, system, oracle, strict, membership_cap)
    return tuple(run.run()), run.transcript


def solve_problem(problem: str, g: Graph, **kwargs):
    """Return ``(answer, tuple, transcript)`` for one of the registered problems."""
    p = get_problem(problem)
    h = transform_input(p, g)
    tup, tr = solve(h, p.system, **kwargs)
    return _answer(p, tup, g), tup, tr


def _answer(p, tup, g: Graph):
    # adding a universal vertex to K_1 gives K_2, which has no cycle
    if p.transform == "hp_to_hc" and g.n == 1:
        return True
    return derive_answer(p, tup, g.n)


def solve_all_problems(g: Graph, **kwargs) -> dict[str, object]:
    """Answers for every registered problem, solving each (system, input) once."""
    from .values import PROBLEMS

    cache: dict = {}
    out = {}
    for pid, p in PROBLEMS.items():
        key = (p.system, p.transform)
        if key not in cache:
            cache[key] = solve(transform_input(p, g), p.system, **kwargs)[0]
        out[pid] = _answer(p, cache[key], g)
    return out


def replay(transcript: Transcript, oracle=None) -> list[str]:
    """Re-ask every recorded query; returns the answers as transcript strings."""
    if oracle is None:
        modes = {e.mode for e in transcript.entries} or {FUNCTION}
        if len(modes) != 1:
            raise ValueError("transcript mixes oracle modes")
        oracle = make_oracle(transcript.system, modes.pop())
    return [format_answer(oracle(bytes.fromhex(e.hex))) for e in transcript.entries]
