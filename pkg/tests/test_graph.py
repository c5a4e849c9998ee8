import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import graphs
from mwtc.brute import bf_enumerate_modules
from mwtc.graph import (
    Graph,
    GraphInputError,
    ModuleContractError,
    complement,
    complete,
    cycle,
    disjoint_union,
    edgeless,
    format_edge_list,
    induced_subgraph,
    is_connected,
    is_isomorphic,
    is_module,
    modular_replacement,
    neighbors_of_set,
    parse_edge_list,
    path,
    star,
    substitute,
)

C4 = cycle(4)


def test_is_module_examples():
    assert not is_module(path(4), {1, 2})
    assert is_module(path(4), range(4))
    assert is_module(C4, {0, 2})
    assert is_module(C4, set())
    assert is_module(C4, {3})


def test_is_module_rejects_out_of_range():
    with pytest.raises(GraphInputError):
        is_module(C4, {7})


def test_complement_examples():
    assert complement(complete(3)) == edgeless(3)
    assert is_isomorphic(complement(cycle(5)), cycle(5))


def test_induced_subgraph():
    h, labels = induced_subgraph(C4, {0, 1, 2})
    assert labels == [0, 1, 2]
    assert is_isomorphic(h, path(3))
    assert induced_subgraph(complete(4), {0, 1})[0] == complete(2)
    with pytest.raises(GraphInputError):
        induced_subgraph(C4, set())


def test_neighbors_of_set():
    assert neighbors_of_set(path(4), {0}) == {1}
    assert neighbors_of_set(path(4), range(4)) == set()
    assert neighbors_of_set(C4, {0, 2}) == {1, 3}


def test_disjoint_union():
    assert disjoint_union([Graph(1, (0,)), Graph(1, (0,))])[0] == edgeless(2)
    g, offsets = disjoint_union([complete(3), complete(3)])
    assert (g.n, g.m, offsets) == (6, 6, [0, 3])
    assert not is_connected(g)


def test_modular_replacement_star():
    g, relabel = modular_replacement(star(3), {1}, complete(2))
    assert (g.n, g.m) == (5, 5)
    c = relabel[0]
    assert g.has_edge(3, 4) and g.has_edge(c, 3) and g.has_edge(c, 4)


def test_modular_replacement_requires_module():
    with pytest.raises(ModuleContractError):
        modular_replacement(path(4), {1, 2}, complete(2))


def test_is_connected():
    assert is_connected(Graph(1, (0,)))
    assert is_connected(cycle(5))


def test_edge_list_round_trip_and_errors():
    g = cycle(5)
    assert parse_edge_list(format_edge_list(g, header="# c5")) == g
    with pytest.raises(GraphInputError):
        parse_edge_list("3 2\n0 1\n1 0\n")
    with pytest.raises(GraphInputError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphInputError):
        parse_edge_list("2 1\n0 0\n")
    with pytest.raises(GraphInputError):
        parse_edge_list("2 1\n0 5\n")


@given(graphs(max_n=8), st.data())
def test_module_definition(g, data):
    m = data.draw(st.sets(st.integers(0, g.n - 1)))
    expected = all(len(set(g.neighbors(v)) & m) in (0, len(m)) for v in range(g.n) if v not in m)
    assert is_module(g, m) == expected


@given(graphs(max_n=8))
def test_complement_involution_and_module_preservation(g):
    assert complement(complement(g)) == g
    assert set(bf_enumerate_modules(g)) == set(bf_enumerate_modules(complement(g)))


@given(graphs(min_n=2, max_n=7), graphs(max_n=4), st.data())
def test_replacement_vertex_count_and_module(g, h, data):
    mods = [m for m in bf_enumerate_modules(g) if m != g.full or g.n == 1]
    m = data.draw(st.sampled_from(mods))
    g2, _ = modular_replacement(g, m, h)
    assert g2.n == g.n - m.bit_count() + h.n
    block = ((1 << h.n) - 1) << (g2.n - h.n)
    assert is_module(g2, block)


@given(graphs(min_n=2, max_n=7), st.data())
def test_identity_and_round_trip_replacement(g, data):
    m = data.draw(st.sampled_from(bf_enumerate_modules(g)))
    sub, _ = induced_subgraph(g, m)
    assert is_isomorphic(modular_replacement(g, m, sub)[0], g)
    shrunk, _ = modular_replacement(g, m, Graph(1, (0,)))
    back, _ = modular_replacement(shrunk, 1 << (shrunk.n - 1), sub)
    assert is_isomorphic(back, g)


@settings(max_examples=50)
@given(st.lists(graphs(max_n=4), min_size=1, max_size=3))
def test_union_blocks_recovered(gs):
    u, offsets = disjoint_union(gs)
    for h, off in zip(gs, offsets):
        block = ((1 << h.n) - 1) << off
        assert induced_subgraph(u, block)[0] == h


def test_substitute_matches_replacement():
    q = path(3)
    g, _ = substitute(q, [complete(2), Graph(1, (0,)), edgeless(2)])
    assert (g.n, g.m) == (5, 1 + 2 + 2)
