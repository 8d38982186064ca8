"""
TRANSDUCTIONS - Transduction Tests
==================================

Interpretations, copying, pipelines, image enumeration, gluing and the
copying facts.

Run:
  pytest tests/test_transduction.py -v
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import PROPERTY_SETTINGS, colored_graphs, graphs
from transductions import (
    BudgetExceededError,
    ColoredGraph,
    ColorSearch,
    ColorWitness,
    Copy,
    EncodingError,
    Graph,
    Interpret,
    Interpretation,
    InterpretationError,
    Perturb,
    Pipeline,
    PipelineError,
    VertexTag,
    apply_pipeline,
    build_colored,
    check_immersive,
    complete_graph,
    copy,
    copy_commute_check,
    cycle_graph,
    empty_graph,
    enumerate_images,
    glue,
    glued_interpretation,
    hereditary,
    interpret,
    is_isomorphic,
    member_check,
    monotone_closure_witness,
    path_graph,
    pendant_selfcopy,
    star_chromatic_number,
)
from transductions.logic import Edge, Pred, TrueF
from transductions.transduction import (
    edge_coloring_witness,
    identity_interpretation,
    pipeline_from_json,
    pipeline_to_json,
    trivial_gluing,
)


# ============================================================================
# TEST 1: INTERPRETATIONS
# ============================================================================

class TestInterpret:
    """Simple interpretations and the symmetry/irreflexivity check."""

    def test_hereditary_extracts_marked_vertices(self, colored_p4):
        image, origin = interpret(colored_p4, hereditary("A"))
        assert origin == (0, 3)
        assert image.n == 2 and not image.edges

    def test_output_colors(self):
        I = Interpretation.parse("true", "E(x,y)", {"Leaf": "!exists z exists w (E(x,z) & E(x,w) & !z = w)"})
        image, _ = interpret(path_graph(3), I)
        assert isinstance(image, ColoredGraph)
        assert image.colors["Leaf"] == {0, 2}

    def test_complement_by_formula(self):
        I = Interpretation.parse("true", "!E(x,y) & !x = y")
        image, _ = interpret(path_graph(3), I)
        assert image.edge_list() == [(0, 2)]

    def test_asymmetric_relation_names_pair(self):
        G = build_colored(2, [(0, 1)], {"A": [0]})
        with pytest.raises(InterpretationError) as info:
            interpret(G, Interpretation.parse("true", "E(x,y) & A(x)"))
        assert info.value.pair == (0, 1)

    def test_reflexive_relation(self):
        with pytest.raises(InterpretationError) as info:
            interpret(path_graph(2), Interpretation.parse("true", "x = y"))
        assert info.value.pair == (0, 0)

    def test_free_variable_check(self):
        with pytest.raises(InterpretationError):
            Interpretation(Edge("x", "y"), Edge("x", "y"))

    @PROPERTY_SETTINGS
    @given(colored_graphs(max_vertices=6))
    def test_identity_is_identity(self, G):
        image, origin = interpret(G, identity_interpretation())
        assert origin == tuple(range(G.n))
        assert image.edges == G.edges


# ============================================================================
# TEST 2: COPY
# ============================================================================

class TestCopy:
    """Copy operation and its identities."""

    def test_copy_of_edge_is_c4(self):
        C, tags = copy(path_graph(2), 2)
        assert is_isomorphic(C, cycle_graph(4))[0]
        assert tags[3] == VertexTag(1, 2)

    def test_clone_numbering(self):
        """Clone i of v has id (i-1)*n + v."""
        C, tags = copy(path_graph(3), 3)
        for vid, tag in enumerate(tags):
            assert vid == (tag.clone - 1) * 3 + tag.origin
        assert C.has_edge(1, 4) and C.has_edge(1, 7) and C.has_edge(4, 7)

    def test_colors_replicated(self, colored_p4):
        C, _ = copy(colored_p4, 2)
        assert C.colors["A"] == {0, 3, 4, 7}

    def test_copy_needs_positive_k(self):
        with pytest.raises(PipelineError):
            copy(path_graph(2), 0)
        with pytest.raises(PipelineError):
            Copy(0)

    @PROPERTY_SETTINGS
    @given(colored_graphs(max_vertices=6))
    def test_single_copy_is_identity(self, G):
        assert copy(G, 1)[0] == G

    @PROPERTY_SETTINGS
    @given(graphs(max_vertices=3), st.integers(1, 3), st.integers(1, 2))
    def test_copies_commute(self, G, k, l):
        assert copy_commute_check(G, k, l)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_pendant_selfcopy(self, k, small_graphs):
        for name, G in small_graphs.items():
            host, T = pendant_selfcopy(G, k)
            image = apply_pipeline(host, T)
            assert image.edges == copy(G, k)[0].edges, f"{name}, k={k}"
            assert host.n == G.n * (k + 1)


# ============================================================================
# TEST 3: PIPELINES
# ============================================================================

class TestPipeline:
    """Stage application, witnesses and exhaustive search."""

    def test_color_then_interpret(self):
        T = Pipeline((ColorWitness({"M": [0, 1, 3]}), Interpret(hereditary())))
        image = apply_pipeline(path_graph(4), T)
        assert isinstance(image, Graph)
        assert image.edge_list() == [(0, 1)]

    def test_copy_then_perturb(self):
        T = Pipeline((Copy(2), Perturb(({0, 1, 2, 3},))))
        image = apply_pipeline(empty_graph(2), T)
        assert is_isomorphic(image, cycle_graph(4))[0]

    def test_witness_count_mismatch(self):
        T = Pipeline((ColorSearch(("M",)), Interpret(hereditary())))
        with pytest.raises(PipelineError, match="witness"):
            apply_pipeline(path_graph(3), T)

    def test_witness_with_wrong_colors(self):
        T = Pipeline((ColorSearch(("M",)),))
        with pytest.raises(PipelineError):
            apply_pipeline(path_graph(3), T, [{"N": frozenset({0})}])

    def test_witness_outside_host(self):
        T = Pipeline((ColorSearch(("M",)),))
        with pytest.raises(PipelineError, match="uses vertices"):
            apply_pipeline(path_graph(3), T, [{"M": frozenset({7})}])

    def test_repeated_search_color(self):
        with pytest.raises(PipelineError):
            ColorSearch(("M", "M"))

    def test_non_stage_rejected(self):
        with pytest.raises(PipelineError):
            Pipeline(("copy",))

    def test_hereditary_images_of_p3(self):
        """Induced subgraphs of P3 up to isomorphism."""
        T = Pipeline((ColorSearch(("M",)), Interpret(hereditary())))
        images = enumerate_images(path_graph(3), T)
        assert [(H.n, len(H.edges)) for H in images] == [(0, 0), (1, 0), (2, 0), (2, 1), (3, 2)]

    def test_member_check(self):
        T = Pipeline((ColorSearch(("M",)), Interpret(hereditary())))
        witnesses = member_check(complete_graph(2), T, path_graph(3))
        assert witnesses is not None
        assert is_isomorphic(apply_pipeline(path_graph(3), T, witnesses), complete_graph(2))[0]
        assert member_check(complete_graph(3), T, path_graph(3)) is None

    def test_budget_refuses_large_search(self):
        T = Pipeline((ColorSearch(("M",)), Interpret(hereditary())))
        with pytest.raises(BudgetExceededError) as info:
            enumerate_images(path_graph(4), T, budget=8)
        assert info.value.estimate == 16

    def test_json_round_trip(self):
        T = Pipeline((
            Copy(2),
            ColorWitness({"M": [0, 2]}),
            ColorSearch(("A", "B")),
            Interpret(Interpretation.parse("M(x) | A(x)", "E(x,y) & !B(y) & !B(x)", {"C": "A(x)"})),
            Perturb(({0, 1}, {2})),
        ))
        assert pipeline_from_json(pipeline_to_json(T)) == T

    def test_json_errors(self):
        with pytest.raises(PipelineError, match="unknown op"):
            pipeline_from_json([{"op": "rotate"}])
        with pytest.raises(PipelineError, match="missing field"):
            pipeline_from_json([{"op": "copy"}])


# ============================================================================
# TEST 4: GLUING AND MONOTONE CLOSURE
# ============================================================================

def _split_parts():
    """Identity inside part 1, complement inside part 2, identity across."""
    return {
        (1, 1): identity_interpretation(),
        (2, 2): Interpretation.parse("true", "!E(x,y) & !x = y"),
        (1, 2): identity_interpretation(),
    }


class TestGluing:
    """Gluing and its single-interpretation equivalent."""

    def test_trivial_gluing_is_disjoint(self):
        G = build_colored(4, [(0, 1), (1, 2), (2, 3)], {"V1": [0, 1], "V2": [2, 3]})
        image, origin = glue(trivial_gluing([identity_interpretation()] * 2), G, 2)
        assert origin == (0, 1, 2, 3)
        assert image.edge_list() == [(0, 1), (2, 3)]

    def test_earlier_mark_wins(self):
        """A vertex in V1 and V2 belongs to A_1 only."""
        G = build_colored(3, [(0, 1), (1, 2)], {"V1": [0, 1], "V2": [1, 2]})
        image, origin = glue(trivial_gluing([identity_interpretation()] * 2), G, 2)
        assert origin == (0, 1, 2)
        assert image.edge_list() == [(0, 1)]

    def test_missing_part(self):
        G = build_colored(2, [], {"V1": [0], "V2": [1]})
        with pytest.raises(PipelineError, match="missing the part"):
            glue({(1, 1): identity_interpretation()}, G, 2)

    def test_part_reading_marks(self):
        parts = trivial_gluing([hereditary("V2"), identity_interpretation()])
        with pytest.raises(PipelineError, match="part mark"):
            glued_interpretation(parts, 2)

    @PROPERTY_SETTINGS
    @given(graphs(min_vertices=1, max_vertices=6), st.data())
    def test_glued_interpretation_matches_glue(self, G, data):
        V1 = data.draw(st.sets(st.integers(0, G.n - 1)))
        V2 = data.draw(st.sets(st.integers(0, G.n - 1)))
        host = ColoredGraph(G, {"V1": frozenset(V1), "V2": frozenset(V2)})
        parts = _split_parts()
        glued, glued_origin = glue(parts, host, 2)
        single, single_origin = interpret(host, glued_interpretation(parts, 2))
        assert glued_origin == single_origin
        assert glued.edges == single.edges


class TestMonotoneClosure:
    """Subgraph extraction through star colorings."""

    def test_recovers_every_subgraph_of_c5(self):
        G = cycle_graph(5)
        _, coloring = star_chromatic_number(G)
        edges = G.edge_list()
        for mask in range(2 ** len(edges)):
            kept = [e for i, e in enumerate(edges) if mask >> i & 1]
            witness = monotone_closure_witness(G, kept, coloring)
            image, origin = interpret(ColoredGraph(G, witness.witness), witness.interpretation)
            assert origin == tuple(range(5))
            assert {(origin[a], origin[b]) for a, b in image.edges} == set(kept), f"kept={kept}"

    def test_rejects_non_star_coloring(self):
        with pytest.raises(EncodingError, match="bicolored path"):
            monotone_closure_witness(path_graph(4), [(0, 1)], {0: 0, 1: 1, 2: 0, 3: 1})

    def test_rejects_non_edge(self):
        with pytest.raises(EncodingError, match="not an edge"):
            monotone_closure_witness(path_graph(3), [(0, 2)], {0: 0, 1: 1, 2: 2})

    def test_edge_coloring(self):
        G = path_graph(4)
        _, coloring = star_chromatic_number(G)
        result = edge_coloring_witness(G, {(0, 1): "R", (1, 2): "S", (2, 3): "R"}, coloring)
        host = ColoredGraph(G, result.witness)
        red, origin = interpret(host, result.interpretations["R"])
        assert {(origin[a], origin[b]) for a, b in red.edges} == {(0, 1), (2, 3)}


# ============================================================================
# TEST 5: IMMERSIVE INTERPRETATIONS
# ============================================================================

class TestImmersive:

    def test_hereditary_is_immersive(self, colored_p4):
        family = [ColoredGraph(path_graph(4), {"M": frozenset({0, 1})}), colored_p4]
        assert check_immersive(hereditary(), family, 1)

    def test_complement_is_not(self):
        assert not check_immersive(Interpretation.parse("true", "!E(x,y) & !x = y"), [empty_graph(2)], 1)

    def test_marks(self):
        assert Interpretation(TrueF(), Pred("M", "x")).marks() == {"M"}
