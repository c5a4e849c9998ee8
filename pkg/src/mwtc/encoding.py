"""Values-attached quotient graphs and their bit-exact query encoding.

Layout (all fields big-endian)::

    t : 16 bits    r : 8 bits    w : 8 bits
    adjacency      t(t-1)/2 bits, upper triangle, row-major
    values         t*r values of w bits, vertex by vertex
    [flag=1        1 bit,  only when a candidate tuple is attached
     candidate     r values of w bits]
    zero padding to a byte boundary

``w`` is the width needed for the run's value bound ``B(n)``, i.e.
``ceil(log2(B(n) + 1))``.  Because padding is all zeros and the flag is 1,
the presence of a candidate is recoverable from the bytes alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .values import get_system

HEADER_BITS = 32


class EncodingError(ValueError):
    """A query cannot be encoded or decoded."""


@dataclass(frozen=True)
class VAQG:
    quotient: Graph
    tuples: tuple[tuple[int, ...], ...]
    system: str

    def __post_init__(self):
        sys_ = get_system(self.system)
        if self.quotient.n < 2:
            raise EncodingError("a query needs at least two quotient vertices")
        if len(self.tuples) != self.quotient.n:
            raise EncodingError("need one value tuple per quotient vertex")
        for tup in self.tuples:
            if len(tup) != sys_.r:
                raise EncodingError(f"tuple {tup} has wrong arity for {sys_.id}")
            if any(not isinstance(v, int) or v < 0 for v in tup):
                raise EncodingError(f"tuple {tup} has a negative or non-integer entry")

    @property
    def t(self) -> int:
        return self.quotient.n


def value_width(n: int, exponent: int = 1) -> int:
    return (n ** exponent).bit_length()


def query_bits(t: int, r: int, w: int, candidate: bool) -> int:
    bits = HEADER_BITS + t * (t - 1) // 2 + t * r * w
    return bits + 1 + r * w if candidate else bits


def bound_bits(t: int, r: int, w: int) -> int:
    """The length ceiling asserted for every transcript entry."""
    return query_bits(t, r, w, candidate=True)


def encode_prefix(vaqg: VAQG, w: int) -> tuple[int, int]:
    """Encode everything except the candidate; returns ``(value, bitlen)``."""
    t = vaqg.t
    r = get_system(vaqg.system).r
    if t >= 1 << 16 or r >= 1 << 8 or w >= 1 << 8:
        raise EncodingError("header field overflow")
    acc = (t << 16) | (r << 8) | w
    adj = vaqg.quotient.adj
    for i in range(t):
        row = adj[i]
        for j in range(i + 1, t):
            acc = (acc << 1) | ((row >> j) & 1)
    limit = 1 << w
    for tup in vaqg.tuples:
        for v in tup:
            if v >= limit:
                raise EncodingError(f"value {v} does not fit in {w} bits")
            acc = (acc << w) | v
    return acc, query_bits(t, r, w, candidate=False)


def append_candidate(prefix: int, nbits: int, candidate, w: int) -> tuple[int, int]:
    acc = (prefix << 1) | 1
    limit = 1 << w
    for v in candidate:
        if not 0 <= v < limit:
            raise EncodingError(f"candidate value {v} does not fit in {w} bits")
        acc = (acc << w) | v
    return acc, nbits + 1 + len(candidate) * w


def to_bytes(acc: int, nbits: int) -> bytes:
    pad = -nbits % 8
    return (acc << pad).to_bytes((nbits + pad) // 8, "big")


def encode_query(vaqg: VAQG, candidate=None, n: int | None = None, exponent: int = 1) -> tuple[bytes, int]:
    """Return the padded byte string and its unpadded bit length."""
    if n is None:
        n = max(max(t) for t in vaqg.tuples)
    w = value_width(n, exponent)
    acc, nbits = encode_prefix(vaqg, w)
    if candidate is not None:
        if len(candidate) != get_system(vaqg.system).r:
            raise EncodingError("candidate arity does not match the system")
        acc, nbits = append_candidate(acc, nbits, candidate, w)
    return to_bytes(acc, nbits), nbits


@dataclass(frozen=True)
class DecodedQuery:
    vaqg: VAQG
    candidate: tuple[int, ...] | None
    w: int
    prefix_key: tuple  # everything except the candidate; identical queries share it


def split_query(data: bytes) -> tuple[tuple, tuple[int, ...] | None]:
    """Cheap split into ``(prefix_key, candidate)`` without building the quotient."""
    if len(data) < 4:
        raise EncodingError("query shorter than its header")
    total = len(data) * 8
    acc = int.from_bytes(data, "big")
    t, r, w = acc >> (total - 16), (acc >> (total - 24)) & 0xFF, (acc >> (total - 32)) & 0xFF
    base = query_bits(t, r, w, candidate=False)
    if base > total:
        raise EncodingError("query truncated")
    key = (t, r, w, acc >> (total - base))
    rest = total - base
    if rest < 1 + r * w or not (acc >> (rest - 1)) & 1:
        return key, None
    pos = rest - 1
    cand = []
    for _ in range(r):
        pos -= w
        cand.append((acc >> pos) & ((1 << w) - 1))
    if pos >= 8 or acc & ((1 << pos) - 1):
        raise EncodingError("nonzero or oversized padding")
    return key, tuple(cand)


def decode_query(data: bytes, system: str) -> DecodedQuery:
    sys_ = get_system(system)
    if len(data) < 4:
        raise EncodingError("query shorter than its header")
    total = len(data) * 8
    acc = int.from_bytes(data, "big")
    t = acc >> (total - 16)
    r = (acc >> (total - 24)) & 0xFF
    w = (acc >> (total - 32)) & 0xFF
    if r != sys_.r:
        raise EncodingError(f"query arity {r} does not match {sys_.id} (r={sys_.r})")
    if t < 2:
        raise EncodingError("query has fewer than two quotient vertices")
    base = query_bits(t, r, w, candidate=False)
    if base > total:
        raise EncodingError("query truncated")
    pos = total - HEADER_BITS

    def take(k: int) -> int:
        nonlocal pos
        pos -= k
        return (acc >> pos) & ((1 << k) - 1)

    adj = [0] * t
    for i in range(t):
        for j in range(i + 1, t):
            if take(1):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    tuples = tuple(tuple(take(w) for _ in range(r)) for _ in range(t))
    rest_bits = pos
    candidate = None
    if rest_bits >= 1 + r * w and take(1):
        candidate = tuple(take(w) for _ in range(r))
    if pos >= 8 or acc & ((1 << pos) - 1):
        raise EncodingError("nonzero or oversized padding")
    prefix_key = (t, r, w, acc >> (total - base))
    vaqg = VAQG(Graph(t, tuple(adj)), tuples, sys_.id)
    return DecodedQuery(vaqg, candidate, w, prefix_key)
