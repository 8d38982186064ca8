"""
TRANSDUCTIONS - Ehrenfeucht-Fraisse Games
=========================================

Memoized game-tree search for the q-round game on colored graphs. Two
graphs are q-back-and-forth equivalent exactly when Duplicator wins, i.e.
when they satisfy the same sentences of quantifier rank q.

Spoiler and Duplicator moves are enumerated over one representative per
twin class of unpicked vertices: twins with equal colors are exchanged by
an automorphism fixing every other vertex. Re-picking a picked vertex is
never useful to Spoiler and is skipped.

Functions:
    - duplicator_wins: decide the q-round game
    - distinguishing_rank: least q at which Spoiler wins
    - caterpillar_clone_check: the game on two expansions of one compressed caterpillar
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .encodings import CompressedCaterpillar, expand_caterpillar
from .errors import BudgetExceededError, GameError
from .graph_core import AnyGraph, ColoredGraph, is_isomorphic
from .limits import resolve_budget

logger = logging.getLogger(__name__)

Multiplicity = Mapping[Tuple[int, FrozenSet[str]], int]


@dataclass(frozen=True)
class GamePosition:
    """Rounds still to play and the pairs picked so far, sorted."""

    picks_left: int
    pairs: Tuple[Tuple[int, int], ...] = ()

    def extend(self, a: int, b: int) -> "GamePosition":
        return GamePosition(self.picks_left - 1, tuple(sorted(self.pairs + ((a, b),))))

    def is_partial_isomorphism(self, G: AnyGraph, H: AnyGraph) -> bool:
        """Injective both ways, preserving edges, non-edges and colors."""
        for i, (a, b) in enumerate(self.pairs):
            if G.color_set(a) != H.color_set(b):
                return False
            for c, d in self.pairs[i + 1:]:
                if (a == c) != (b == d) or G.has_edge(a, c) != H.has_edge(b, d):
                    return False
        return True


def _twin_classes(G: AnyGraph) -> List[int]:
    """Representative (least member) of each vertex's twin class."""
    rep = list(range(G.n))
    for v in range(G.n):
        for u in range(v):
            if rep[u] != u:
                continue
            if G.color_set(u) == G.color_set(v) and G.neighbors(u) - {v} == G.neighbors(v) - {u}:
                rep[v] = u
                break
    return rep


class _Game:
    """One query: both graphs, their twin classes and the memo table."""

    def __init__(self, G: AnyGraph, H: AnyGraph, budget: Optional[int]):
        self.G, self.H = G, H
        self.classes = (_twin_classes(G), _twin_classes(H))
        self.limit = resolve_budget(budget)
        self.memo: Dict[GamePosition, bool] = {}

    def _moves(self, side: int, picked: FrozenSet[int]) -> List[int]:
        graph = self.G if side == 0 else self.H
        rep = self.classes[side]
        chosen: Dict[int, int] = {}
        for v in range(graph.n):
            if v not in picked and rep[v] not in chosen:
                chosen[rep[v]] = v
        return sorted(chosen.values())

    def _consistent(self, position: GamePosition, a: int, b: int) -> bool:
        if self.G.color_set(a) != self.H.color_set(b):
            return False
        return all(self.G.has_edge(a, c) == self.H.has_edge(b, d) for c, d in position.pairs)

    def wins(self, position: GamePosition) -> bool:
        if position.picks_left == 0:
            return True
        cached = self.memo.get(position)
        if cached is not None:
            return cached
        if len(self.memo) >= self.limit:
            raise BudgetExceededError(
                "Game search exceeded its state budget", estimate=len(self.memo) + 1, budget=self.limit
            )
        picked_G = frozenset(a for a, _ in position.pairs)
        picked_H = frozenset(b for _, b in position.pairs)
        result = True
        for side in (0, 1):
            answers = self._moves(1 - side, picked_H if side == 0 else picked_G)
            for spoiler in self._moves(side, picked_G if side == 0 else picked_H):
                answered = False
                for reply in answers:
                    a, b = (spoiler, reply) if side == 0 else (reply, spoiler)
                    if self._consistent(position, a, b) and self.wins(position.extend(a, b)):
                        answered = True
                        break
                if not answered:
                    result = False
                    break
            if not result:
                break
        self.memo[position] = result
        return result


def duplicator_wins(G: AnyGraph, H: AnyGraph, q: int, budget: Optional[int] = None) -> bool:
    """
    Whether Duplicator survives q rounds of the game on G and H.

    Colors take part in the partial-isomorphism condition.

    Raises:
        GameError: if q is negative
        BudgetExceededError: when the memo table outgrows the budget

    Examples:
        >>> from transductions.graph_core import complete_graph, empty_graph
        >>> duplicator_wins(complete_graph(2), empty_graph(2), 1)
        True
        >>> duplicator_wins(complete_graph(2), empty_graph(2), 2)
        False
    """
    if q < 0:
        raise GameError(f"Number of rounds must be non-negative, got {q}")
    if q == 0 or G == H or is_isomorphic(G, H)[0]:
        return True
    game = _Game(G, H, budget)
    result = game.wins(GamePosition(q))
    logger.debug("q=%d game on %d+%d vertices: %d states, duplicator %s",
                 q, G.n, H.n, len(game.memo), "wins" if result else "loses")
    return result


def distinguishing_rank(G: AnyGraph, H: AnyGraph, qmax: int, budget: Optional[int] = None) -> Optional[int]:
    """
    Least q <= qmax at which Spoiler wins, or None when Duplicator survives
    every q up to qmax (the rank is then at least qmax + 1).
    """
    if qmax < 0:
        raise GameError(f"qmax must be non-negative, got {qmax}")
    for q in range(qmax + 1):
        if not duplicator_wins(G, H, q, budget):
            return q
    return None


def caterpillar_clone_check(path: ColoredGraph, f1: Multiplicity, f2: Multiplicity, q: int,
                            budget: Optional[int] = None) -> bool:
    """
    Play the q-round game on the expansions of (path, f1) and (path, f2).

    Requires f1 <= f2 and min(f1, q) = min(f2, q) at every (vertex, color set).

    Raises:
        GameError: when a precondition fails, naming the offending key
    """
    for key in sorted(set(f1) | set(f2), key=lambda k: (k[0], sorted(k[1]))):
        low, high = f1.get(key, 0), f2.get(key, 0)
        if low > high:
            raise GameError(f"f1 exceeds f2 at {key[0]}, {sorted(key[1])}: {low} > {high}")
        if min(low, q) != min(high, q):
            raise GameError(
                f"Multiplicities {low} and {high} at {key[0]}, {sorted(key[1])} differ below q={q}"
            )
    first = expand_caterpillar(CompressedCaterpillar.from_counts(path, f1))
    second = expand_caterpillar(CompressedCaterpillar.from_counts(path, f2))
    return duplicator_wins(first, second, q, budget)
