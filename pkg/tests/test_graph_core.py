"""
TRANSDUCTIONS - Graph Core Tests
================================

Construction, graph algebra, balls and color-preserving isomorphism.

Run:
  pytest tests/test_graph_core.py -v
"""

import math

import networkx as nx
import pytest
from hypothesis import given

from strategies import PROPERTY_SETTINGS, colored_graphs, graphs
from transductions import (
    INF,
    ColoredGraph,
    Graph,
    GraphError,
    VertexTag,
    ball,
    build_colored,
    build_graph,
    complement,
    complete_graph,
    complete_join,
    connected_components,
    cycle_graph,
    disjoint_union,
    distance,
    empty_graph,
    from_networkx,
    grid_graph,
    induced_subgraph,
    is_isomorphic,
    is_subgraph,
    max_degree,
    pair_subgraph,
    path_graph,
    power,
    relabel,
    star_graph,
    to_networkx,
)


# ============================================================================
# TEST 1: CONSTRUCTION
# ============================================================================

class TestConstruction:
    """Canonical edges, validation and named builders."""

    def test_duplicate_and_reversed_pairs_collapse(self):
        G = build_graph(3, [(0, 1), (1, 0), (2, 1)])
        assert G.edge_list() == [(0, 1), (1, 2)]

    def test_self_loop_rejected(self):
        with pytest.raises(GraphError, match="Self-loop"):
            build_graph(2, [(1, 1)])

    def test_endpoint_out_of_range(self):
        with pytest.raises(GraphError, match="outside"):
            build_graph(2, [(0, 2)])

    def test_negative_order(self):
        with pytest.raises(GraphError):
            Graph(-1)

    def test_color_outside_vertex_set(self):
        with pytest.raises(GraphError, match="outside"):
            build_colored(2, colors={"A": [3]})

    def test_reserved_color_name(self):
        """E and dist belong to the formula language."""
        with pytest.raises(GraphError, match="reserved"):
            build_colored(2, colors={"E": [0]})

    def test_empty_color_is_kept(self):
        G = build_colored(2, [(0, 1)], {"A": []})
        assert G.colors["A"] == frozenset()

    def test_builders(self, small_graphs):
        assert len(complete_graph(4).edges) == 6
        assert len(cycle_graph(5).edges) == 5
        assert star_graph(3).degree(0) == 3
        assert grid_graph(2, 3).has_edge(1, 4)
        assert not grid_graph(2, 3).has_edge(2, 3)
        assert small_graphs["P2+K1"].degree(2) == 0

    def test_short_cycle_rejected(self):
        with pytest.raises(GraphError):
            cycle_graph(2)

    def test_vertex_tag_clone_index(self):
        with pytest.raises(GraphError):
            VertexTag(0, 0)

    def test_color_sets(self, colored_p4):
        assert colored_p4.color_set(0) == {"A"}
        assert colored_p4.color_set(2) == frozenset()
        assert colored_p4.with_colors({"C": [2]}).color_set(2) == {"C"}
        assert "B" not in colored_p4.restrict_colors(["A"]).colors


# ============================================================================
# TEST 2: GRAPH ALGEBRA
# ============================================================================

class TestAlgebra:
    """Union, join, power, complement, subgraphs and relabelling."""

    def test_disjoint_union_shifts_second_graph(self, colored_p4):
        union, shift = disjoint_union(path_graph(2), colored_p4)
        assert union.n == 6
        assert shift == {0: 2, 1: 3, 2: 4, 3: 5}
        assert union.has_edge(2, 3) and not union.has_edge(1, 2)
        assert isinstance(union, ColoredGraph)
        assert union.colors["A"] == {2, 5}

    def test_union_of_plain_graphs_is_plain(self):
        union, _ = disjoint_union(path_graph(2), path_graph(2))
        assert isinstance(union, Graph)

    def test_complete_join(self):
        assert is_isomorphic(complete_join(empty_graph(1), empty_graph(3)), star_graph(3))[0]

    def test_power_of_path(self):
        assert power(path_graph(4), 2).edge_list() == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
        with pytest.raises(GraphError):
            power(path_graph(4), 0)

    @PROPERTY_SETTINGS
    @given(colored_graphs(max_vertices=6))
    def test_complement_is_involution(self, G):
        assert complement(complement(G)) == G

    def test_pair_subgraph(self):
        """Only edges between A and B survive."""
        H, origin = pair_subgraph(complete_graph(4), [0, 1], [2])
        assert origin == (0, 1, 2)
        assert H.edge_list() == [(0, 2), (1, 2)]

    def test_induced_subgraph_restricts_colors(self, colored_p4):
        H, origin = induced_subgraph(colored_p4, [1, 2, 3])
        assert origin == (1, 2, 3)
        assert H.colors["A"] == {2}
        assert H.colors["B"] == {0}

    def test_relabel_requires_permutation(self):
        with pytest.raises(GraphError):
            relabel(path_graph(3), {0: 0, 1: 0, 2: 1})
        assert relabel(path_graph(3), {0: 1, 1: 0, 2: 2}).edge_list() == [(0, 1), (0, 2)]

    def test_is_subgraph(self):
        assert is_subgraph(path_graph(3), cycle_graph(4), {0: 0, 1: 1, 2: 2})
        assert not is_subgraph(path_graph(3), cycle_graph(4), {0: 0, 1: 2, 2: 1})


# ============================================================================
# TEST 3: DISTANCES AND BALLS
# ============================================================================

class TestDistances:
    """BFS distances, INF across components, balls."""

    def test_distance_across_components_is_inf(self, small_graphs):
        assert distance(small_graphs["2K1"], 0, 1) == INF
        assert math.isinf(INF)

    def test_distance_on_cycle(self):
        assert distance(cycle_graph(6), 0, 3) == 3

    def test_ball_of_grid_centre(self):
        B, origin = ball(grid_graph(3, 3), [4], 1)
        assert origin == (1, 3, 4, 5, 7)
        assert is_isomorphic(B, star_graph(4))[0]

    def test_ball_with_two_centres(self):
        B, origin = ball(path_graph(7), [0, 6], 1)
        assert origin == (0, 1, 5, 6)
        assert len(connected_components(B)) == 2

    def test_ball_errors(self):
        with pytest.raises(GraphError):
            ball(path_graph(3), [], 1)
        with pytest.raises(GraphError):
            ball(path_graph(3), [0], -1)

    @PROPERTY_SETTINGS
    @given(graphs(min_vertices=1, max_vertices=7))
    def test_ball_matches_networkx_ego_graph(self, G):
        g = to_networkx(G)
        for r in range(3):
            B, origin = ball(G, [0], r)
            assert set(origin) == set(nx.ego_graph(g, 0, radius=r).nodes)
            assert B.n == len(origin)


# ============================================================================
# TEST 4: ISOMORPHISM AND NETWORKX BRIDGE
# ============================================================================

class TestIsomorphism:
    """Color-preserving isomorphism with a checked witness."""

    def test_relabelled_path(self):
        G = build_graph(4, [(2, 0), (0, 3), (3, 1)])
        same, witness = is_isomorphic(path_graph(4), G)
        assert same
        assert all(G.has_edge(witness[u], witness[v]) for u, v in path_graph(4).edges)

    def test_different_degree_sequences(self, small_graphs):
        assert is_isomorphic(small_graphs["P4"], small_graphs["K1,3"]) == (False, None)

    def test_colors_distinguish(self):
        left = build_colored(2, [(0, 1)], {"A": [0]})
        right = build_colored(2, [(0, 1)], {"B": [0]})
        assert not is_isomorphic(left, right)[0]

    def test_color_moved_along_path(self):
        """A on an end vertex differs from A on an inner vertex."""
        end = build_colored(3, [(0, 1), (1, 2)], {"A": [0]})
        inner = build_colored(3, [(0, 1), (1, 2)], {"A": [1]})
        mirrored = build_colored(3, [(0, 1), (1, 2)], {"A": [2]})
        assert not is_isomorphic(end, inner)[0]
        assert is_isomorphic(end, mirrored)[1] == {0: 2, 1: 1, 2: 0}

    def test_c6_is_not_two_triangles(self):
        two_triangles, _ = disjoint_union(complete_graph(3), complete_graph(3))
        assert not is_isomorphic(cycle_graph(6), two_triangles)[0]

    @PROPERTY_SETTINGS
    @given(colored_graphs(max_vertices=6))
    def test_networkx_round_trip(self, G):
        back = from_networkx(to_networkx(G))
        if any(G.colors.values()):
            assert is_isomorphic(back, G)[0]
        else:
            assert back.plain() == G.plain()

    def test_max_degree(self, small_graphs):
        assert max_degree(small_graphs["K1,3"]) == 3
        assert max_degree(empty_graph(0)) == 0
