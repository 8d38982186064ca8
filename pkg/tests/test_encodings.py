"""
TRANSDUCTIONS - Encoding Tests
==============================

Every host construction is checked through its artifact: the pipeline
applied to the host must give the target back.

Run:
  pytest tests/test_encodings.py -v
"""

import networkx as nx
import pytest

from transductions import (
    BudgetExceededError,
    ColoredGraph,
    CompressedCaterpillar,
    EncodingError,
    HostArtifact,
    IntervalFamily,
    Perturbation,
    apply_sequence,
    build_graph,
    complete_graph,
    compress_caterpillar,
    copy,
    cycle_graph,
    disjoint_union,
    empty_graph,
    encode_bounded_components,
    encode_caterpillar_in_path,
    encode_cubic,
    encode_grid,
    encode_interval,
    encode_pathwidth_planar,
    expand_caterpillar,
    grid_graph,
    grid_unit_interval_model,
    interval_model_from_order,
    is_isomorphic,
    path_graph,
    path_selfcopy,
    pathpower_embedding,
    planar_host,
    star_graph,
    to_networkx,
)
from transductions.encodings import grid_host, interval_family, regular_supergraph


# ============================================================================
# TEST 1: INTERVAL GRAPHS
# ============================================================================

class TestIntervalEncoding:
    """Any graph is the image of a marked interval graph."""

    def test_host_size(self):
        assert encode_interval(complete_graph(2)).host.n == 7

    def test_small_graphs(self, small_graphs):
        for name, G in small_graphs.items():
            artifact = encode_interval(G)
            assert is_isomorphic(artifact.image(), G)[0], name
            assert artifact.model.intersection_graph() == artifact.host.base, name

    def test_first_intervals_are_the_vertices(self):
        family = interval_family(path_graph(3))
        assert family.tags[:3] == ["I1", "I2", "I3"]
        assert family.intervals[3] == ("L1", 0, 1)

    def test_needs_a_vertex(self):
        with pytest.raises(EncodingError):
            encode_interval(empty_graph(0))

    def test_bad_interval(self):
        with pytest.raises(EncodingError, match="lo"):
            IntervalFamily((("a", 3, 1),))

    def test_artifact_json_round_trip(self):
        artifact = encode_interval(path_graph(3))
        assert HostArtifact.from_json(artifact.to_json()) == artifact


# ============================================================================
# TEST 2: GRIDS
# ============================================================================

class TestGridEncoding:
    """Grids from unit interval hosts without copying."""

    @pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_grid_image(self, n, m):
        artifact = encode_grid(n, m)
        assert artifact.host.n == n * m
        assert is_isomorphic(artifact.image(), grid_graph(n, m))[0]

    def test_unit_interval_model(self):
        model = grid_unit_interval_model(3, 4)
        assert set(model.lengths()) == {5}
        assert model.intersection_graph() == grid_host(3, 4).base

    def test_row_marks_cycle_mod_three(self):
        host = grid_host(4, 2)
        assert host.colors["M0"] == {0, 1, 6, 7}
        assert host.colors["M1"] == {2, 3}

    def test_too_small(self):
        with pytest.raises(EncodingError):
            encode_grid(1, 3)


# ============================================================================
# TEST 3: BOUNDED PATHWIDTH IN PLANAR HOSTS
# ============================================================================

class TestPlanarEncoding:
    """Pathwidth-bounded graphs from planar hosts."""

    def test_model_from_order(self):
        model = interval_model_from_order(path_graph(3), [0, 1, 2])
        assert model.intervals == ((0, 1, 3), (1, 2, 5), (2, 4, 6))
        assert model.intersection_graph() == path_graph(3)

    @pytest.mark.parametrize("name", ["P3", "P4", "C4", "K3", "K1,3"])
    def test_image_and_planarity(self, name, small_graphs):
        G = small_graphs[name]
        artifact = encode_pathwidth_planar(G)
        planar, _ = nx.check_planarity(to_networkx(artifact.host))
        assert planar
        assert is_isomorphic(artifact.image(), G)[0]

    def test_white_vertices_are_intervals(self):
        model = interval_model_from_order(path_graph(4), [0, 1, 2, 3])
        host = planar_host(model)
        assert host.colors["W"] == {0, 1, 2, 3}
        assert "L1" in host.colors

    def test_repeated_endpoints(self):
        model = IntervalFamily(((0, 1, 2), (1, 2, 3)))
        with pytest.raises(EncodingError, match="distinct"):
            encode_pathwidth_planar(path_graph(2), model)

    def test_edge_outside_supergraph(self):
        model = IntervalFamily(((0, 1, 2), (1, 3, 4)))
        with pytest.raises(EncodingError, match="supergraph"):
            encode_pathwidth_planar(path_graph(2), model)

    def test_model_tags(self):
        model = IntervalFamily((("a", 1, 2), ("b", 3, 4)))
        with pytest.raises(EncodingError, match="tags"):
            encode_pathwidth_planar(path_graph(2), model)


# ============================================================================
# TEST 4: BOUNDED COMPONENTS AND CUBIC HOSTS
# ============================================================================

class TestBoundedComponents:
    """Graphs with small components from edgeless hosts."""

    def test_mixed_components(self):
        G = disjoint_union(disjoint_union(path_graph(3), complete_graph(2))[0], complete_graph(1))[0]
        artifact = encode_bounded_components(G, 3)
        assert artifact.host == empty_graph(3)
        assert is_isomorphic(artifact.image(), G)[0]

    def test_with_perturbation(self):
        G = disjoint_union(complete_graph(2), complete_graph(2))[0]
        P = Perturbation((frozenset({0, 2}), frozenset({1, 3})), 4)
        artifact = encode_bounded_components(G, 2, perturbation=P)
        assert is_isomorphic(artifact.image(), apply_sequence(G, P))[0]

    def test_component_too_large(self):
        with pytest.raises(EncodingError, match="vertices"):
            encode_bounded_components(path_graph(4), 3)

    def test_order_cap(self):
        with pytest.raises(BudgetExceededError):
            encode_bounded_components(empty_graph(1), 50)


class TestCubicEncoding:
    """Bounded-degree graphs from cubic hosts."""

    @pytest.mark.parametrize("name", ["K1", "K2", "P3", "K3", "C4", "K1,3", "P2+K1"])
    def test_cubic_host(self, name, small_graphs):
        G = small_graphs[name]
        encoding = encode_cubic(G)
        assert encoding.verify()
        assert all(encoding.host.degree(v) == 3 for v in range(encoding.host.n))
        assert is_isomorphic(encoding.artifact.image(), G)[0]

    def test_gadget_height_grows_with_degree(self):
        assert encode_cubic(star_graph(3)).p == 1
        assert encode_cubic(complete_graph(5)).p == 2

    def test_degree_below_maximum(self):
        with pytest.raises(EncodingError):
            encode_cubic(star_graph(3), D=2)

    def test_regular_supergraph_is_induced(self):
        H = regular_supergraph(path_graph(3), 3)
        assert all(H.degree(v) == 3 for v in range(H.n))
        assert [(u, v) for u, v in H.edge_list() if u < 3 and v < 3] == [(0, 1), (1, 2)]


# ============================================================================
# TEST 5: CATERPILLARS AND PATHS
# ============================================================================

def _sample_caterpillar():
    path = ColoredGraph(path_graph(2), {"B": frozenset({1})})
    return CompressedCaterpillar.from_counts(
        path, {(0, frozenset({"A"})): 2, (1, frozenset()): 1}, ("A",)
    )


class TestCaterpillars:
    """Compression, expansion and the colored path host."""

    def test_expand(self):
        C = expand_caterpillar(_sample_caterpillar())
        assert C.n == 5
        assert C.edge_list() == [(0, 1), (0, 2), (0, 3), (1, 4)]
        assert C.colors["A"] == {2, 3}
        assert C.colors["B"] == {1}

    def test_compress_of_expand(self):
        CC = _sample_caterpillar()
        assert is_isomorphic(expand_caterpillar(compress_caterpillar(expand_caterpillar(CC))),
                             expand_caterpillar(CC))[0]

    def test_encoding_in_path(self):
        CC = _sample_caterpillar()
        artifact = encode_caterpillar_in_path(CC, 4)
        assert artifact.host.n == 2 * 3 + 3
        assert is_isomorphic(artifact.image(), expand_caterpillar(CC))[0]

    def test_degree_bound(self):
        with pytest.raises(EncodingError, match="degree"):
            encode_caterpillar_in_path(_sample_caterpillar(), 2)

    def test_block_marks_reserved(self):
        CC = CompressedCaterpillar.from_counts(path_graph(1), {(0, frozenset({"S"})): 1})
        with pytest.raises(EncodingError, match="block marks"):
            encode_caterpillar_in_path(CC, 3)

    def test_not_a_tree(self):
        with pytest.raises(EncodingError, match="tree"):
            compress_caterpillar(cycle_graph(4))

    def test_spider_is_not_a_caterpillar(self):
        spider = build_graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        with pytest.raises(EncodingError, match="branches"):
            compress_caterpillar(spider)

    def test_spine_must_be_a_path(self):
        with pytest.raises(EncodingError, match="Spine"):
            CompressedCaterpillar.from_counts(star_graph(2), {})

    def test_json_round_trip(self):
        CC = _sample_caterpillar()
        assert CompressedCaterpillar.from_json(CC.to_json()) == CC


class TestPathCopies:
    """Copies of paths from longer paths."""

    @pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (3, 2), (2, 3), (4, 3)])
    def test_selfcopy(self, n, k):
        artifact = path_selfcopy(n, k)
        assert artifact.host.n == n * k
        assert is_isomorphic(artifact.image(), copy(path_graph(n), k)[0])[0]

    @pytest.mark.parametrize("n,k", [(2, 2), (3, 3), (5, 2)])
    def test_pathpower_embedding(self, n, k):
        mapping = pathpower_embedding(n, k)
        assert sorted(mapping.values()) == list(range(n * k))

    def test_selfcopy_arguments(self):
        with pytest.raises(EncodingError):
            path_selfcopy(0, 2)
