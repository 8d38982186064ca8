"""
TRANSDUCTIONS - Logic Tests
===========================

Parser, printer, syntactic queries, evaluation and locality checks.

Run:
  pytest tests/test_logic.py -v
"""

import networkx as nx
import pytest
from hypothesis import given

from strategies import PROPERTY_SETTINGS, colored_graphs, formulas, graphs
from transductions import (
    ColoredGraph,
    EvaluationError,
    FormulaSyntaxError,
    ball,
    check_r_local,
    check_strongly_local,
    complete_graph,
    empty_graph,
    evaluate,
    formula_to_text,
    free_variables,
    parse_formula,
    path_graph,
    quantifier_rank,
    t_localize,
    to_networkx,
)
from transductions.logic import (
    And,
    DistLE,
    Edge,
    Eq,
    Exists,
    Forall,
    Implies,
    Not,
    Or,
    Pred,
    expand_distance,
    push_negations,
    relativize,
    rename_free,
)


# ============================================================================
# TEST 1: PARSER
# ============================================================================

class TestParser:
    """Grammar, precedence and scoping rules."""

    def test_atoms(self):
        """Every atom kind parses to its node."""
        assert parse_formula("E(x,y)") == Edge("x", "y")
        assert parse_formula("x = y") == Eq("x", "y")
        assert parse_formula("Red(x)") == Pred("Red", "x")
        assert parse_formula("dist(x,y) <= 3") == DistLE("x", "y", 3)

    def test_precedence(self):
        """! binds tighter than &, & than |, | than ->."""
        phi = parse_formula("!E(x,y) & A(x) | B(y) -> x = y")
        expected = Implies(Or(And(Not(Edge("x", "y")), Pred("A", "x")), Pred("B", "y")), Eq("x", "y"))
        assert phi == expected, f"Got {formula_to_text(phi)}"

    def test_implication_is_right_associative(self):
        """a -> b -> c reads a -> (b -> c)."""
        phi = parse_formula("A(x) -> B(x) -> C(x)")
        assert phi == Implies(Pred("A", "x"), Implies(Pred("B", "x"), Pred("C", "x")))

    def test_quantifier_scopes_over_unary(self):
        """A quantifier takes the next unary formula; parentheses widen it."""
        narrow = parse_formula("exists z E(x,z) & A(x)")
        assert narrow == And(Exists("z", Edge("x", "z")), Pred("A", "x"))
        wide = parse_formula("exists z (E(x,z) & A(z))")
        assert wide == Exists("z", And(Edge("x", "z"), Pred("A", "z")))

    def test_syntax_error_has_position(self):
        """Grammar violations raise FormulaSyntaxError with a location."""
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("E(x,y) &")
        assert "ends unexpectedly" in str(info.value)

    def test_malformed_distance_bound(self):
        """A distance bound must be a non-negative integer."""
        with pytest.raises(FormulaSyntaxError, match="distance bound"):
            parse_formula("dist(x,y) <= y")

    def test_unbound_variable_rejected(self):
        """Variables outside the declared free set are unbound."""
        with pytest.raises(FormulaSyntaxError, match="Unbound"):
            parse_formula("E(x,w)", free={"x", "y"})

    def test_shadowing_rejected(self):
        """Re-binding a variable on one path is rejected."""
        with pytest.raises(FormulaSyntaxError, match="bound twice"):
            parse_formula("exists z (E(x,z) & exists z E(z,x))")

    def test_bound_and_free_rejected(self):
        """A variable cannot be both free and bound."""
        with pytest.raises(FormulaSyntaxError):
            parse_formula("E(x,z) & exists z A(z)")

    def test_sibling_scopes_reuse_names(self):
        """The same name may be bound in two separate subformulas."""
        phi = parse_formula("(exists z E(x,z)) & (forall z (E(x,z) -> A(z)))")
        assert quantifier_rank(phi) == 1

    @PROPERTY_SETTINGS
    @given(formulas(scope=("x", "y"), depth=4))
    def test_print_parse_round_trip(self, phi):
        """Printed text parses back to the same AST."""
        assert parse_formula(formula_to_text(phi)) == phi


# ============================================================================
# TEST 2: SYNTACTIC QUERIES
# ============================================================================

class TestSyntax:
    """Free variables, rank and rewriting."""

    def test_free_variables(self):
        phi = parse_formula("exists z (E(x,z) & E(z,y))")
        assert free_variables(phi) == {"x", "y"}

    def test_quantifier_rank_counts_nesting(self):
        phi = parse_formula("exists a (forall b E(a,b)) & exists c A(c)")
        assert quantifier_rank(phi) == 2

    def test_distance_atoms_have_rank_zero(self):
        """dist atoms are primitive and add nothing to the rank."""
        assert quantifier_rank(parse_formula("dist(x,y) <= 5")) == 0

    def test_rename_free_avoids_capture(self):
        """Renaming x to z inside a z-quantifier renames the bound z first."""
        phi = parse_formula("exists z E(x,z)")
        renamed = rename_free(phi, {"x": "z"})
        assert free_variables(renamed) == {"z"}
        assert evaluate(path_graph(2), renamed, {"z": 0})

    @PROPERTY_SETTINGS
    @given(formulas(scope=("x",), depth=3), colored_graphs(min_vertices=1, max_vertices=4))
    def test_negation_normal_form_preserves_truth(self, phi, G):
        """De Morgan rewriting never changes evaluation."""
        nnf = push_negations(phi)
        for u in range(G.n):
            assert evaluate(G, phi, {"x": u}) == evaluate(G, nnf, {"x": u})


# ============================================================================
# TEST 3: EVALUATION
# ============================================================================

class TestEvaluation:
    """Brute-force model checking."""

    def test_common_neighbour(self):
        phi = parse_formula("exists z (E(x,z) & E(y,z))")
        assert evaluate(path_graph(3), phi, {"x": 0, "y": 2})
        assert not evaluate(path_graph(4), phi, {"x": 0, "y": 3})

    def test_universal_over_empty_graph_is_true(self):
        assert evaluate(empty_graph(0), parse_formula("forall z false"), {})

    def test_colors(self, colored_p4):
        phi = parse_formula("A(x) & exists z (E(x,z) & B(z))")
        assert [u for u in range(4) if evaluate(colored_p4, phi, {"x": u})] == [0]

    def test_unknown_color_is_empty(self):
        """A color the graph does not carry holds nowhere."""
        assert not evaluate(path_graph(2), parse_formula("Missing(x)"), {"x": 0})

    def test_distance_never_crosses_components(self):
        assert not evaluate(empty_graph(2), parse_formula("dist(x,y) <= 5"), {"x": 0, "y": 1})

    def test_missing_assignment(self):
        with pytest.raises(EvaluationError, match="y"):
            evaluate(path_graph(2), parse_formula("E(x,y)"), {"x": 0})

    def test_assignment_out_of_range(self):
        with pytest.raises(EvaluationError):
            evaluate(path_graph(2), parse_formula("x = x"), {"x": 5})

    @PROPERTY_SETTINGS
    @given(graphs(min_vertices=1, max_vertices=6))
    def test_distance_atom_matches_expansion(self, G):
        """dist(x,y) <= r agrees with its first-order expansion, r <= 3."""
        for r in range(4):
            phi = DistLE("x", "y", r)
            expanded = expand_distance(phi)
            for u in range(G.n):
                for v in range(G.n):
                    a = {"x": u, "y": v}
                    assert evaluate(G, phi, a) == evaluate(G, expanded, a), f"r={r} at {u},{v}"

    @PROPERTY_SETTINGS
    @given(graphs(min_vertices=1, max_vertices=6))
    def test_distance_matches_networkx(self, G):
        lengths = dict(nx.all_pairs_shortest_path_length(to_networkx(G)))
        phi = parse_formula("dist(x,y) <= 2")
        for u in range(G.n):
            for v in range(G.n):
                assert evaluate(G, phi, {"x": u, "y": v}) == (lengths[u].get(v, 99) <= 2)

    def test_relativize_to_complement(self):
        """Reading E through !E evaluates in the complement."""
        phi = parse_formula("exists z E(x,z)")
        rel = relativize(phi, parse_formula("x = x"), parse_formula("!E(x,y) & !x = y"))
        assert not evaluate(complete_graph(3), rel, {"x": 0})
        assert evaluate(empty_graph(3), rel, {"x": 0})


# ============================================================================
# TEST 4: LOCALIZATION AND LOCALITY
# ============================================================================

class TestLocality:
    """t-localization and semantic locality checks."""

    def test_localize_exists(self):
        phi = t_localize(parse_formula("exists z E(x,z)"), 1)
        assert phi == Exists("z", And(DistLE("x", "z", 1), Edge("x", "z")))

    def test_localize_forall(self):
        phi = t_localize(parse_formula("forall z A(z)"), 2)
        assert phi == Forall("z", Implies(DistLE("x", "z", 2), Pred("A", "z")))

    def test_localize_negation(self):
        phi = t_localize(parse_formula("!exists z E(x,z)"), 2)
        assert phi == Not(Exists("z", And(DistLE("x", "z", 2), Edge("x", "z"))))

    def test_quantifier_free_unchanged(self):
        phi = parse_formula("A(x) | x = x")
        assert t_localize(phi, 3) == phi

    def test_needs_one_free_variable(self):
        with pytest.raises(FormulaSyntaxError):
            t_localize(parse_formula("E(x,y)"), 1)

    @PROPERTY_SETTINGS
    @given(formulas(scope=("x",), depth=3), colored_graphs(min_vertices=1, max_vertices=6))
    def test_localization_agrees_with_ball(self, phi, G):
        """G |= phi^(u) iff B_t(u) |= phi(u)."""
        phi = And(Eq("x", "x"), phi)
        for t in range(3):
            localized = t_localize(phi, t)
            assert quantifier_rank(localized) == quantifier_rank(phi)
            for u in range(G.n):
                B, origin = ball(G, [u], t)
                assert evaluate(G, localized, {"x": u}) == evaluate(B, phi, {"x": origin.index(u)}), \
                    f"t={t}, u={u}, phi={formula_to_text(phi)}"

    def test_localized_formula_is_local(self):
        phi = t_localize(parse_formula("exists z (E(x,z) & forall w (E(z,w) -> A(w)))"), 2)
        family = [ColoredGraph(path_graph(5), {"A": frozenset({0, 2, 4})}), complete_graph(3)]
        assert check_r_local(phi, family, 2)

    def test_far_witness_is_not_local(self):
        """Some vertex outside the 0-ball exists in 2K1 but not in its ball."""
        phi = parse_formula("exists z !dist(x,z) <= 0")
        report = check_r_local(phi, [complete_graph(1), empty_graph(2)], 0)
        assert not report
        assert report.graph_index == 1

    def test_edge_is_strongly_local(self):
        assert check_strongly_local(parse_formula("E(x,y)"), [path_graph(4), empty_graph(2)], 1)

    def test_true_is_not_strongly_local_on_disconnected(self):
        report = check_strongly_local(parse_formula("x = x & y = y"), [empty_graph(2)], 3)
        assert not report
        assert "distance" in report.reason

    def test_guarded_distance_is_strongly_local(self):
        phi = parse_formula("dist(x,y) <= 2 & exists z (E(x,z) & E(z,y))")
        assert check_strongly_local(phi, [path_graph(5), complete_graph(3)], 2)
