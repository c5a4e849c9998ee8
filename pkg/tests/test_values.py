import pytest
from hypothesis import given

from _support import graphs
from mwtc import brute
from mwtc.graph import Graph, complement, path
from mwtc.values import (
    PROBLEMS,
    SYSTEMS,
    brute_answer,
    brute_tuple,
    decision,
    derive_answer,
    get_problem,
    get_system,
    leaf_tuple,
    transform_input,
)

K1 = Graph(1, (0,))


def test_leaf_tuples():
    assert leaf_tuple("S-COL") == (1,)
    assert leaf_tuple("S-DEL") == (1, 0, 0, 0, 0, 1)
    assert leaf_tuple("S-PATH") == (1, 1, 1)


@pytest.mark.parametrize("sid", sorted(SYSTEMS))
def test_leaf_tuple_matches_brute_force(sid):
    assert leaf_tuple(sid) == brute_tuple(sid, K1)


def test_derive_answer_examples():
    assert brute.bf_min_dominating(path(6)) == 2
    assert derive_answer("nonblocker", (2,), 6) == 4
    assert derive_answer("maximum-induced-forest", (5, 4, 4, 0, 0, 1), 5) == 5
    assert derive_answer("vertex-cover", (5, 3, 3, 1, 1, 1), 5) == 3
    assert derive_answer("hamiltonian-cycle", (0, 1, 5), 5) is True
    # cvc == n on two or more vertices marks "no connected cover"
    assert derive_answer("connected-vertex-cover", (2, 0, 2, 0, 0, 2), 2) is None


def test_decision_examples():
    assert decision("vertex-cover", 3, 3)
    assert not decision("independent-set", 2, 3)
    assert decision("hamiltonian-cycle", True, 0)
    assert not decision("connected-vertex-cover", None, 10)


def test_lookup_errors():
    with pytest.raises(KeyError):
        get_problem("nope")
    with pytest.raises(KeyError):
        get_system("S-NOPE")


def test_problem_table_is_consistent():
    assert len(PROBLEMS) == 17
    for p in PROBLEMS.values():
        assert p.function in get_system(p.system).functions


def test_transform_input():
    g = path(4)
    assert transform_input("clique", g) == complement(g)
    h = transform_input("hamiltonian-path", g)
    assert h.n == 5 and h.degree(4) == 4
    assert transform_input("vertex-cover", g) is g


@given(graphs(max_n=7))
def test_derived_answers_match_direct_brute_force(g):
    for pid, p in PROBLEMS.items():
        if pid == "hamiltonian-path" and g.n == 1:
            continue  # the reduction adds a vertex; K2 has no cycle
        tup = brute_tuple(p.system, transform_input(p, g))
        assert derive_answer(p, tup, transform_input(p, g).n) == brute_answer(p, g), pid


@given(graphs(max_n=8))
def test_values_within_bounds(g):
    for sid, s in SYSTEMS.items():
        assert all(0 <= v <= s.bound(g.n) for v in brute_tuple(sid, g))
    hc, pip, n = brute_tuple("S-PATH", g)
    assert hc in (0, 1) and n == g.n
    if hc == 0:
        assert pip == 1 and n >= 3
