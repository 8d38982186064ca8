"""
TRANSDUCTIONS - Game Tests
==========================

The q-round game solver, cross-checked against rank types.

Run:
  pytest tests/test_games.py -v
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import PROPERTY_SETTINGS, colored_graphs, graphs
from transductions import (
    BudgetExceededError,
    GameError,
    GamePosition,
    build_colored,
    caterpillar_clone_check,
    complete_graph,
    cycle_graph,
    disjoint_union,
    distinguishing_rank,
    duplicator_wins,
    empty_graph,
    path_graph,
    star_graph,
)
from utils import elementarily_equivalent, rank_type


def _two_triangles():
    return disjoint_union(complete_graph(3), complete_graph(3))[0]


# ============================================================================
# TEST 1: KNOWN GAMES
# ============================================================================

class TestKnownGames:
    """Hand-checked game values."""

    def test_edge_against_non_edge(self):
        assert duplicator_wins(complete_graph(2), empty_graph(2), 1)
        assert not duplicator_wins(complete_graph(2), empty_graph(2), 2)

    def test_zero_rounds(self):
        assert duplicator_wins(complete_graph(3), empty_graph(0), 0)

    def test_dominating_vertex_needs_two_rounds(self):
        assert distinguishing_rank(path_graph(3), path_graph(4), 3) == 2

    def test_triangles_need_three_rounds(self):
        """C6 and 2C3 are both 2-regular."""
        assert duplicator_wins(cycle_graph(6), _two_triangles(), 2)
        assert distinguishing_rank(cycle_graph(6), _two_triangles(), 3) == 3

    def test_counting_leaves(self):
        assert duplicator_wins(star_graph(2), star_graph(3), 2)
        assert distinguishing_rank(star_graph(2), star_graph(3), 3) == 3

    def test_large_cliques_agree(self):
        """Twin reduction keeps cliques cheap."""
        assert duplicator_wins(complete_graph(7), complete_graph(8), 4)
        assert not duplicator_wins(complete_graph(3), complete_graph(4), 4)

    def test_colors_count(self):
        red = build_colored(1, colors={"A": [0]})
        plain = build_colored(1, colors={"A": []})
        assert not duplicator_wins(red, plain, 1)

    def test_isomorphic_graphs(self, small_graphs):
        for name, G in small_graphs.items():
            assert duplicator_wins(G, G, 3), name

    def test_no_rank_up_to_qmax(self):
        assert distinguishing_rank(complete_graph(5), complete_graph(6), 3) is None

    def test_negative_rounds(self):
        with pytest.raises(GameError):
            duplicator_wins(path_graph(2), path_graph(2), -1)
        with pytest.raises(GameError):
            distinguishing_rank(path_graph(2), path_graph(3), -1)

    def test_state_budget(self):
        with pytest.raises(BudgetExceededError):
            duplicator_wins(cycle_graph(6), _two_triangles(), 3, budget=1)

    def test_partial_isomorphism(self):
        position = GamePosition(0, ((0, 0), (1, 1)))
        assert position.is_partial_isomorphism(path_graph(2), path_graph(2))
        assert not position.is_partial_isomorphism(path_graph(2), empty_graph(2))


# ============================================================================
# TEST 2: AGREEMENT WITH RANK TYPES
# ============================================================================

class TestRankTypeOracle:
    """The solver decides exactly rank-q elementary equivalence."""

    def test_rank_type_of_empty_graph(self):
        assert rank_type(empty_graph(0), 1) == (((), (), ()), frozenset())

    @PROPERTY_SETTINGS
    @given(graphs(max_vertices=4), graphs(max_vertices=4), st.integers(0, 2))
    def test_plain_graphs(self, G, H, q):
        assert duplicator_wins(G, H, q) == elementarily_equivalent(G, H, q)

    @PROPERTY_SETTINGS
    @given(colored_graphs(max_vertices=3), colored_graphs(max_vertices=3), st.integers(0, 2))
    def test_colored_graphs(self, G, H, q):
        assert duplicator_wins(G, H, q) == elementarily_equivalent(G, H, q)

    @PROPERTY_SETTINGS
    @given(graphs(max_vertices=5), graphs(max_vertices=5), st.integers(0, 3))
    def test_symmetry(self, G, H, q):
        assert duplicator_wins(G, H, q) == duplicator_wins(H, G, q)


# ============================================================================
# TEST 3: CATERPILLAR CLONES
# ============================================================================

class TestCaterpillarClones:
    """Children counts above q cannot be told apart in q rounds."""

    @pytest.mark.parametrize("q", [1, 2])
    def test_extra_leaves_invisible(self, q):
        f1 = {(0, frozenset()): q, (1, frozenset({"A"})): 1}
        f2 = {(0, frozenset()): q + 2, (1, frozenset({"A"})): 1}
        assert caterpillar_clone_check(path_graph(2), f1, f2, q)

    def test_f1_must_not_exceed_f2(self):
        with pytest.raises(GameError, match="exceeds"):
            caterpillar_clone_check(path_graph(1), {(0, frozenset()): 3}, {(0, frozenset()): 2}, 2)

    def test_counts_below_q_must_agree(self):
        with pytest.raises(GameError, match="differ below"):
            caterpillar_clone_check(path_graph(1), {(0, frozenset()): 1}, {(0, frozenset()): 3}, 2)
