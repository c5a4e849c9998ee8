"""Value systems (families of graph functions closed under module substitution)
and the problems answered from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import brute
from .graph import Graph, complement

MIN, MAX, EXISTS = "min", "max", "exists"


@dataclass(frozen=True)
class ValueSystem:
    id: str
    functions: tuple[str, ...]
    senses: tuple[str, ...]
    leaf: tuple[int, ...]
    exponent: int = 1

    @property
    def r(self) -> int:
        return len(self.functions)

    def index(self, fn: str) -> int:
        return self.functions.index(fn)

    def bound(self, n: int) -> int:
        """Largest value any function of the system takes on an ``n``-vertex graph."""
        return n ** self.exponent


# ``count`` marks structural functions (vertex and component counts) that carry
# no optimisation sense of their own.
SYSTEMS: dict[str, ValueSystem] = {
    s.id: s
    for s in [
        ValueSystem("S-COL", ("chi",), (MIN,), (1,)),
        ValueSystem("S-DOM", ("gamma",), (MIN,), (1,)),
        ValueSystem(
            "S-DEL",
            ("n", "vc", "cvc", "fvs", "oct", "comp"),
            ("count", MIN, MIN, MIN, MIN, "count"),
            (1, 0, 0, 0, 0, 1),
        ),
        ValueSystem("S-IND", ("alpha",), (MAX,), (1,)),
        ValueSystem("S-PATH", ("hc", "pip", "n"), (EXISTS, MIN, "count"), (1, 1, 1)),
        ValueSystem("S-LIP", ("lip",), (MAX,), (1,)),
        ValueSystem("S-PACK", ("vc", "im", "itp", "icp", "n"), (MIN, MAX, MAX, MAX, "count"), (0, 0, 0, 0, 1)),
    ]
}


def get_system(system: str | ValueSystem) -> ValueSystem:
    if isinstance(system, ValueSystem):
        return system
    try:
        return SYSTEMS[system]
    except KeyError:
        raise KeyError(f"unknown value system {system!r}") from None


def leaf_tuple(system: str | ValueSystem) -> tuple[int, ...]:
    return get_system(system).leaf


@dataclass(frozen=True)
class Problem:
    id: str
    system: str
    function: str
    sense: str
    transform: str = "identity"  # identity | complement | hp_to_hc
    complement_of_n: bool = False  # answer is n - value


PROBLEMS: dict[str, Problem] = {
    p.id: p
    for p in [
        Problem("chromatic-number", "S-COL", "chi", MIN),
        Problem("dominating-set", "S-DOM", "gamma", MIN),
        Problem("nonblocker", "S-DOM", "gamma", MAX, complement_of_n=True),
        Problem("vertex-cover", "S-DEL", "vc", MIN),
        Problem("connected-vertex-cover", "S-DEL", "cvc", MIN),
        Problem("feedback-vertex-set", "S-DEL", "fvs", MIN),
        Problem("odd-cycle-transversal", "S-DEL", "oct", MIN),
        Problem("maximum-induced-forest", "S-DEL", "fvs", MAX, complement_of_n=True),
        Problem("independent-set", "S-IND", "alpha", MAX),
        Problem("clique", "S-IND", "alpha", MAX, transform="complement"),
        Problem("hamiltonian-cycle", "S-PATH", "hc", EXISTS),
        Problem("partitioning-into-paths", "S-PATH", "pip", MIN),
        Problem("hamiltonian-path", "S-PATH", "hc", EXISTS, transform="hp_to_hc"),
        Problem("longest-induced-path", "S-LIP", "lip", MAX),
        Problem("induced-matching", "S-PACK", "im", MAX),
        Problem("independent-triangle-packing", "S-PACK", "itp", MAX),
        Problem("independent-cycle-packing", "S-PACK", "icp", MAX),
    ]
}


def get_problem(problem: str | Problem) -> Problem:
    if isinstance(problem, Problem):
        return problem
    try:
        return PROBLEMS[problem]
    except KeyError:
        raise KeyError(f"unknown problem {problem!r}; choose from {', '.join(PROBLEMS)}") from None


def transform_input(problem: str | Problem, g: Graph) -> Graph:
    """The graph the problem's value system is evaluated on."""
    p = get_problem(problem)
    if p.transform == "complement":
        return complement(g)
    if p.transform == "hp_to_hc":
        from .generators import hp_to_hc

        return hp_to_hc(g)
    return g


def derive_answer(problem: str | Problem, values: tuple[int, ...], n: int) -> int | bool | None:
    """Turn a system tuple into the problem's optimum.

    Existence problems give a bool.  An infeasible connected vertex cover
    (encoded as ``cvc == n`` with ``n >= 2``) gives ``None``.
    """
    p = get_problem(problem)
    v = values[get_system(p.system).index(p.function)]
    if p.sense == EXISTS:
        return v == 0
    if p.function == "cvc" and n >= 2 and v >= n:
        return None
    return n - v if p.complement_of_n else v


def decision(problem: str | Problem, value: int | bool | None, k: int) -> bool:
    """Answer the decision version: <= k for minimisation, >= k for maximisation."""
    p = get_problem(problem)
    if value is None:
        return False
    if p.sense == EXISTS:
        return bool(value)
    return value <= k if p.sense == MIN else value >= k


# -- brute-force ground truth --------------------------------------------------

_BRUTE: dict[str, Callable[[Graph], int]] = {
    "chi": brute.bf_chromatic,
    "gamma": brute.bf_min_dominating,
    "n": lambda g: g.n,
    "vc": brute.bf_min_vc,
    "cvc": brute.bf_min_cvc,
    "fvs": brute.bf_min_fvs,
    "oct": brute.bf_min_oct,
    "comp": brute.bf_components,
    "alpha": brute.bf_max_is,
    "hc": lambda g: 0 if brute.bf_hc(g) else 1,
    "pip": brute.bf_pip,
    "lip": brute.bf_lip,
    "im": brute.bf_im,
    "itp": brute.bf_itp,
    "icp": brute.bf_icp,
}


def brute_value(fn: str, g: Graph) -> int:
    return _BRUTE[fn](g)


def brute_tuple(system: str | ValueSystem, g: Graph) -> tuple[int, ...]:
    return tuple(_BRUTE[fn](g) for fn in get_system(system).functions)


def brute_answer(problem: str | Problem, g: Graph) -> int | bool | None:
    """Reference optimum computed independently of the engine."""
    p = get_problem(problem)
    if p.id == "hamiltonian-path":
        return brute.bf_hp(g)
    if p.id == "clique":
        return brute.bf_max_clique(g)
    if p.id == "hamiltonian-cycle":
        return brute.bf_hc(g)
    v = _BRUTE[p.function](g)
    if p.function == "cvc" and g.n >= 2 and v >= g.n:
        return None
    return g.n - v if p.complement_of_n else v
