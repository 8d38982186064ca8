"""
TRANSDUCTIONS - Independent Oracles
===================================

Slow reference computations used to cross-check the library.

rank_type(G, q) is the rank-q type of G: the set of rank-(q-1) types
of G with one more vertex picked, bottoming out at the atomic type of the
picked tuple. Two graphs have the same rank-q type exactly when they
satisfy the same sentences of quantifier rank q, so comparing types
decides elementary equivalence without a game search.
"""

from typing import FrozenSet, Hashable, Tuple

from transductions.graph_core import AnyGraph


def atomic_type(G: AnyGraph, picked: Tuple[int, ...]) -> Hashable:
    """Equalities, edges and colors among the picked vertices, by position."""
    k = len(picked)
    equal = tuple((i, j) for i in range(k) for j in range(i + 1, k) if picked[i] == picked[j])
    edges = tuple((i, j) for i in range(k) for j in range(i + 1, k) if G.has_edge(picked[i], picked[j]))
    colors = tuple(tuple(sorted(G.color_set(v))) for v in picked)
    return equal, edges, colors


def rank_type(G: AnyGraph, q: int, picked: Tuple[int, ...] = ()) -> Hashable:
    if q == 0:
        return atomic_type(G, picked)
    children: FrozenSet[Hashable] = frozenset(rank_type(G, q - 1, picked + (v,)) for v in range(G.n))
    return atomic_type(G, picked), children


def elementarily_equivalent(G: AnyGraph, H: AnyGraph, q: int) -> bool:
    return rank_type(G, q) == rank_type(H, q)
