"""
TRANSDUCTIONS - Instance Generators
===================================

Deterministic sources of small test instances for the verification
phases: the networkx graph atlas, seeded random graphs, random formulas
in one free variable and random compressed caterpillars.

Functions:
    - atlas_graphs: every graph up to a given order, one per isomorphism class
    - random_graph: G(n, 1/2) with an optional random color
    - random_formula: a first-order formula over E, =, and color atoms
    - random_caterpillar: a compressed caterpillar within degree and palette bounds
"""

from typing import Iterator, List, Optional, Sequence

import networkx as nx
import numpy as np

from transductions.encodings import CompressedCaterpillar
from transductions.graph_core import ColoredGraph, Graph, from_networkx, path_graph
from transductions.logic import And, Edge, Eq, Exists, Forall, Formula, Not, Or, Pred


def atlas_graphs(max_vertices: int, min_vertices: int = 0) -> Iterator[Graph]:
    """All graphs with min_vertices..max_vertices vertices (max 7), up to isomorphism."""
    for g in nx.graph_atlas_g():
        if min_vertices <= g.number_of_nodes() <= max_vertices:
            yield from_networkx(g)


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5,
                 color: Optional[str] = None) -> Graph:
    mask = rng.random((n, n)) < p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if mask[u, v]]
    G = Graph(n, frozenset(edges))
    if color is None:
        return G
    members = frozenset(int(v) for v in np.flatnonzero(rng.random(n) < 0.5))
    return ColoredGraph(G, {color: members})


def random_formula(rng: np.random.Generator, free: str = "x", depth: int = 3,
                   colors: Sequence[str] = ("C",), max_rank: int = 2) -> Formula:
    """
    A random formula whose only free variable is `free`. Bound variables
    are fresh per quantifier (z1, z2, ...), so shadowing never occurs.
    """
    counter = iter(range(1, 1000))

    def atom(scope: List[str]) -> Formula:
        kind = rng.integers(3)
        a, b = rng.choice(scope), rng.choice(scope)
        if kind == 0:
            return Edge(str(a), str(b))
        if kind == 1:
            return Eq(str(a), str(b))
        return Pred(str(rng.choice(list(colors))), str(a))

    def build(scope: List[str], d: int, rank: int) -> Formula:
        if d == 0:
            return atom(scope)
        kind = rng.integers(5)
        if kind == 0:
            return Not(build(scope, d - 1, rank))
        if kind == 1:
            return And(build(scope, d - 1, rank), build(scope, d - 1, rank))
        if kind == 2:
            return Or(build(scope, d - 1, rank), build(scope, d - 1, rank))
        if rank == 0:
            return atom(scope)
        var = f"z{next(counter)}"
        quantifier = Exists if kind == 3 else Forall
        return quantifier(var, build(scope + [var], d - 1, rank - 1))

    phi = build([free], depth, max_rank)
    # every formula mentions the free variable
    return And(Eq(free, free), phi)


def random_caterpillar(rng: np.random.Generator, max_spine: int = 4, delta: int = 4,
                       palette: Sequence[str] = ("A", "B")) -> CompressedCaterpillar:
    """
    Random spine length and spine colors, then children per (vertex, color
    set) while the expanded degree stays within delta.
    """
    palette = list(palette)
    L = int(rng.integers(1, max_spine + 1))
    path_colors = {
        name: frozenset(v for v in range(L) if rng.random() < 0.5) for name in palette
    }
    subsets = [frozenset(c for i, c in enumerate(palette) if mask >> i & 1)
               for mask in range(2 ** len(palette))]
    counts = {}
    for v in range(L):
        room = delta - (v > 0) - (v < L - 1)
        for I in subsets:
            if room <= 0:
                break
            take = int(rng.integers(0, room + 1))
            if take:
                counts[(v, I)] = take
                room -= take
    return CompressedCaterpillar.from_counts(ColoredGraph(path_graph(L), path_colors), counts, palette)
