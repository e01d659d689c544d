import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slice_weaver.errors import CapacityError, InputError
from slice_weaver.graph_core import (
    Coloring,
    DependencyGraph,
    LayeredPartite,
    build_dependency_graph,
    chromatic_number_brute,
    chromatic_poly_complete,
    chromatic_poly_layered_partite,
    count_proper_colorings,
    degree_ordering,
    earlier_neighbors,
    greedy_color,
    is_maximal_clique,
    is_perfect_brute,
    max_clique_size_brute,
)

from oracles import (
    chromatic_number_product,
    clique_number_combinations,
    count_colorings_product,
    cycle_adj,
    path_adj,
)


@st.composite
def graphs(draw, max_vertices=8):
    n = draw(st.integers(0, max_vertices))
    pairs = [(v, w) for v in range(n) for w in range(v + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return DependencyGraph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def c5():
    return DependencyGraph(np.array(cycle_adj(5)))


# -- construction ----------------------------------------------------------


@pytest.mark.parametrize("u, edges", [(0, 0), (1, 0), (4, 6), (7, 21)])
def test_build_dependency_graph_edge_count(u, edges):
    g = build_dependency_graph(u)
    assert g.vertex_count == u
    assert g.edge_count == edges


def test_dependency_graph_each_service_sees_all_earlier():
    g = build_dependency_graph(6)
    for n in range(6):
        assert set(g.neighbors(n)) == set(range(6)) - {n}


def test_dependency_graph_rejects_asymmetric_and_loops():
    with pytest.raises(InputError):
        DependencyGraph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(InputError):
        DependencyGraph(np.array([[1, 0], [0, 0]], dtype=bool))
    with pytest.raises(InputError):
        DependencyGraph.from_edges(3, [(0, 3)])


def test_adjacency_is_read_only():
    g = build_dependency_graph(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = False


def test_layered_partite_structure():
    lp = LayeredPartite((2, 3, 1))
    g = lp.to_graph()
    a, b, c = lp.layers()
    assert g.edge_count == 2 * 3 + 3 * 1
    assert not any(g.adjacency[v, w] for v in a for w in a)
    assert not any(g.adjacency[v, w] for v in a for w in c)
    with pytest.raises(InputError):
        LayeredPartite(())
    with pytest.raises(InputError):
        LayeredPartite((2, 0))


# -- cliques ---------------------------------------------------------------


def test_is_maximal_clique_examples():
    k5 = build_dependency_graph(5)
    assert is_maximal_clique(k5, range(5))
    assert not is_maximal_clique(k5, {0, 1})
    assert is_maximal_clique(build_dependency_graph(0), set())
    with pytest.raises(InputError):
        is_maximal_clique(k5, {7})


def test_is_maximal_clique_on_cycle():
    g = c5()
    assert is_maximal_clique(g, {0, 1})
    assert not is_maximal_clique(g, {0, 2})


@pytest.mark.parametrize(
    "g, expected",
    [
        (build_dependency_graph(6), 6),
        (build_dependency_graph(1), 1),
        (LayeredPartite((2, 2)).to_graph(), 2),
        (build_dependency_graph(0), 0),
    ],
)
def test_max_clique_examples(g, expected):
    assert max_clique_size_brute(g) == expected


def test_max_clique_budget():
    assert max_clique_size_brute(build_dependency_graph(16)) == 16
    with pytest.raises(CapacityError):
        max_clique_size_brute(build_dependency_graph(17))


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_max_clique_matches_combinations(g):
    assert max_clique_size_brute(g) == clique_number_combinations(g.adjacency.tolist())


# -- coloring --------------------------------------------------------------


@pytest.mark.parametrize(
    "g, used",
    [
        (build_dependency_graph(5), 5),
        (build_dependency_graph(1), 1),
        (LayeredPartite((3, 3, 3)).to_graph(), 2),
    ],
)
def test_greedy_color_examples(g, used):
    col = greedy_color(g)
    assert col.colors_used == used
    assert col.is_proper(g)


def test_greedy_color_on_clique_gives_index_colors():
    assert greedy_color(build_dependency_graph(4)).assignment == (0, 1, 2, 3)


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=10))
def test_greedy_color_is_proper_and_contiguous(g):
    col = greedy_color(g)
    assert col.is_proper(g)
    assert sorted(set(col.assignment)) == list(range(col.colors_used))


def test_degree_ordering_ties_ascending():
    assert degree_ordering(build_dependency_graph(5)) == [0, 1, 2, 3, 4]
    star = DependencyGraph.from_edges(4, [(3, 0), (3, 1), (3, 2)])
    assert degree_ordering(star) == [3, 0, 1, 2]


@pytest.mark.parametrize("position, expected", [(0, 0), (4, 4)])
def test_earlier_neighbors_clique(position, expected):
    g = build_dependency_graph(5)
    assert earlier_neighbors(g, degree_ordering(g), position) == expected


def test_earlier_neighbors_path():
    g = LayeredPartite((1, 1, 1)).to_graph()
    assert earlier_neighbors(g, (0, 1, 2), 2) == 1
    with pytest.raises(InputError):
        earlier_neighbors(g, (0, 1, 2), 3)


@pytest.mark.parametrize("u", range(1, 11))
def test_earlier_neighbors_min_rule(u):
    g = build_dependency_graph(u)
    order = degree_ordering(g)
    assert [earlier_neighbors(g, order, p) for p in range(u)] == [
        min(u - 1, p) for p in range(u)
    ]


# -- chromatic number and perfectness -------------------------------------


@pytest.mark.parametrize(
    "g, chi",
    [
        (build_dependency_graph(4), 4),
        (build_dependency_graph(1), 1),
        (LayeredPartite((2, 2, 2)).to_graph(), 2),
        (c5(), 3),
        (build_dependency_graph(0), 0),
    ],
)
def test_chromatic_number_examples(g, chi):
    assert chromatic_number_brute(g) == chi


def test_chromatic_number_budget():
    with pytest.raises(CapacityError):
        chromatic_number_brute(build_dependency_graph(11))


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=7))
def test_chromatic_number_matches_product(g):
    assert chromatic_number_brute(g) == chromatic_number_product(g.adjacency.tolist())


def test_perfectness_examples():
    assert is_perfect_brute(build_dependency_graph(6))
    assert not is_perfect_brute(c5())
    assert is_perfect_brute(DependencyGraph.from_edges(3, []))
    with pytest.raises(CapacityError):
        is_perfect_brute(build_dependency_graph(9))


def test_perfectness_catches_odd_hole_inside_larger_graph():
    g = DependencyGraph.from_edges(6, [(i, (i + 1) % 5) for i in range(5)] + [(0, 5)])
    assert not is_perfect_brute(g)


@pytest.mark.parametrize("u", range(0, 9))
def test_clique_graphs_are_perfect_and_maximal(u):
    g = build_dependency_graph(u)
    assert is_perfect_brute(g)
    assert is_maximal_clique(g, range(u))


# -- chromatic polynomials ------------------------------------------------


@pytest.mark.parametrize("u, k, expected", [(1, 7, 7), (3, 3, 6), (4, 3, 0), (0, 4, 1), (0, 0, 1)])
def test_chromatic_poly_complete_examples(u, k, expected):
    assert chromatic_poly_complete(u, k) == expected


def test_chromatic_poly_complete_example_oracles():
    assert count_colorings_product([[v != w for w in range(3)] for v in range(3)], 3) == 6
    assert count_colorings_product([[v != w for w in range(4)] for v in range(4)], 3) == 0


@pytest.mark.parametrize("u", range(0, 11))
@pytest.mark.parametrize("k", range(0, 7))
def test_chromatic_poly_complete_matches_enumeration(u, k):
    assert chromatic_poly_complete(u, k) == count_proper_colorings(build_dependency_graph(u), k)


def test_chromatic_poly_complete_never_negative():
    for u in range(12):
        for k in range(12):
            assert chromatic_poly_complete(u, k) >= 0


@pytest.mark.parametrize("n, k, expected", [(1, 5, 5), (2, 3, 6), (3, 2, 2)])
def test_chromatic_poly_layered_partite_examples(n, k, expected):
    assert chromatic_poly_layered_partite(n, k) == expected
    assert count_colorings_product(path_adj(n), k) == expected


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", range(1, 6))
def test_chromatic_poly_layered_partite_matches_path_enumeration(n, k):
    assert chromatic_poly_layered_partite(n, k) == count_colorings_product(path_adj(n), k)


def test_chromatic_poly_layered_partite_errors():
    with pytest.raises(InputError):
        chromatic_poly_layered_partite(0, 3)
    with pytest.raises(InputError):
        chromatic_poly_layered_partite(2, 0)


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=6), st.integers(0, 4))
def test_count_proper_colorings_matches_product(g, k):
    assert count_proper_colorings(g, k) == count_colorings_product(g.adjacency.tolist(), k)


def test_coloring_dataclass():
    col = Coloring((0, 1, 0))
    assert col.colors_used == 2
    assert col.is_proper(LayeredPartite((1, 1, 1)).to_graph())
    assert not col.is_proper(build_dependency_graph(3))
