"""
TRANSDUCTIONS - Graph Core
==========================

Finite simple graphs with named unary relations (colors), and the graph
algebra every other module is built on.

Vertices are the dense integer ids 0..n-1. Operations that renumber vertices
return an explicit map back to the source ids instead of structured ids.

Types:
    - Graph: vertex count plus a set of unordered edges
    - ColoredGraph: a Graph plus named vertex subsets
    - VertexTag: (origin, clone) provenance of a copied vertex

Functions:
    - build_graph, build_colored: validating constructors
    - disjoint_union, complete_join, power, complement
    - induced_subgraph, pair_subgraph, ball, relabel
    - distance, distances_from
    - is_isomorphic: color-aware isomorphism test with witness
    - empty_graph, complete_graph, path_graph, cycle_graph, star_graph, grid_graph
    - to_networkx, from_networkx
"""

import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import GraphError

logger = logging.getLogger(__name__)

# Distance between different components. Never a large integer.
INF = math.inf

COLOR_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
RESERVED_NAMES = frozenset({"E", "dist", "true", "false", "exists", "forall"})

Edge = Tuple[int, int]


def _normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> FrozenSet[Edge]:
    normalized = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"Edge {tuple(pair)!r} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"Self-loop ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        normalized.add((u, v) if u < v else (v, u))
    return frozenset(normalized)


def _normalize_colors(n: int, colors: Optional[Mapping[str, Iterable[int]]]) -> Mapping[str, FrozenSet[int]]:
    normalized: Dict[str, FrozenSet[int]] = {}
    for name, members in sorted((colors or {}).items()):
        if not isinstance(name, str) or not COLOR_NAME_PATTERN.match(name):
            raise GraphError(f"Invalid color name {name!r}")
        if name in RESERVED_NAMES:
            raise GraphError(f"Color name {name!r} is reserved by the formula language")
        members = frozenset(int(v) for v in members)
        bad = sorted(v for v in members if not 0 <= v < n)
        if bad:
            raise GraphError(f"Color {name!r} contains vertices outside 0..{n - 1}: {bad}")
        normalized[name] = members
    return MappingProxyType(normalized)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on vertices 0..n-1."""

    n: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    @property
    def colors(self) -> Mapping[str, FrozenSet[int]]:
        return MappingProxyType({})

    @property
    def base(self) -> "Graph":
        return self

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        neighbours: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return tuple(frozenset(s) for s in neighbours)

    @cached_property
    def distance_matrix(self) -> Tuple[Tuple[float, ...], ...]:
        """All-pairs BFS distances, INF across components."""
        lengths = dict(nx.all_pairs_shortest_path_length(to_networkx(self)))
        return tuple(
            tuple(lengths[u].get(v, INF) for v in range(self.n))
            for u in range(self.n)
        )

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def color_set(self, v: int) -> FrozenSet[str]:
        return frozenset()

    def plain(self) -> "Graph":
        return self

    def edge_list(self) -> List[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class ColoredGraph:
    """A graph with named unary relations. Empty colors are kept as given."""

    base: Graph
    colors: Mapping[str, FrozenSet[int]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", _normalize_colors(self.base.n, self.colors))

    def __hash__(self):
        return hash((self.base, tuple((k, v) for k, v in self.colors.items())))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self.base.edges

    @property
    def vertices(self) -> range:
        return self.base.vertices

    @property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        return self.base.adjacency

    @property
    def distance_matrix(self) -> Tuple[Tuple[float, ...], ...]:
        return self.base.distance_matrix

    @cached_property
    def _color_sets(self) -> Tuple[FrozenSet[str], ...]:
        per_vertex: List[set] = [set() for _ in range(self.n)]
        for name, members in self.colors.items():
            for v in members:
                per_vertex[v].add(name)
        return tuple(frozenset(s) for s in per_vertex)

    def has_edge(self, u: int, v: int) -> bool:
        return self.base.has_edge(u, v)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.base.neighbors(v)

    def degree(self, v: int) -> int:
        return self.base.degree(v)

    def color_set(self, v: int) -> FrozenSet[str]:
        """Names of the colors containing v."""
        return self._color_sets[v]

    def plain(self) -> Graph:
        return self.base

    def edge_list(self) -> List[Edge]:
        return self.base.edge_list()

    def with_colors(self, extra: Mapping[str, Iterable[int]]) -> "ColoredGraph":
        """Add (or overwrite) colors."""
        merged = dict(self.colors)
        merged.update({name: frozenset(members) for name, members in extra.items()})
        return ColoredGraph(self.base, merged)

    def restrict_colors(self, names: Iterable[str]) -> "ColoredGraph":
        keep = set(names)
        return ColoredGraph(self.base, {k: v for k, v in self.colors.items() if k in keep})


AnyGraph = Union[Graph, ColoredGraph]


@dataclass(frozen=True)
class VertexTag:
    """Provenance of a vertex created by the copy operation."""

    origin: int
    clone: int

    def __post_init__(self):
        if self.clone < 1:
            raise GraphError(f"Clone index must be >= 1, got {self.clone}")


# ============================================================================
# CONSTRUCTION
# ============================================================================

def build_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    """
    Build a canonical graph, deduplicating repeated pairs.

    Args:
        n: Number of vertices (ids 0..n-1)
        edges: Iterable of vertex pairs

    Returns:
        Graph

    Raises:
        GraphError: on a self-loop or an endpoint outside 0..n-1

    Examples:
        >>> build_graph(3, [(0, 1), (1, 2), (2, 1)]).edge_list()
        [(0, 1), (1, 2)]
    """
    return Graph(int(n), frozenset(tuple(e) for e in edges))


def build_colored(n: int, edges: Iterable[Sequence[int]] = (),
                  colors: Optional[Mapping[str, Iterable[int]]] = None) -> ColoredGraph:
    """Build a colored graph; `colors` maps names to vertex collections."""
    return ColoredGraph(build_graph(n, edges), {k: frozenset(v) for k, v in (colors or {}).items()})


def as_colored(G: AnyGraph) -> ColoredGraph:
    if isinstance(G, ColoredGraph):
        return G
    return ColoredGraph(G, {})


def rebuild_like(like: Sequence[AnyGraph], n: int, edges: Iterable[Edge],
             colors: Mapping[str, Iterable[int]]) -> AnyGraph:
    """Return a ColoredGraph when any input was colored, else a Graph."""
    graph = Graph(n, frozenset(edges))
    if any(isinstance(g, ColoredGraph) for g in like):
        return ColoredGraph(graph, {k: frozenset(v) for k, v in colors.items()})
    return graph


def empty_graph(n: int = 0) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    """P_n: n vertices 0-1-...-(n-1)."""
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex (i, j) has id i*cols + j."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, frozenset(edges))


# ============================================================================
# GRAPH ALGEBRA
# ============================================================================

def disjoint_union(G: AnyGraph, H: AnyGraph) -> Tuple[AnyGraph, Dict[int, int]]:
    """
    Disjoint union; H's vertices are shifted by |V(G)|.

    Returns:
        Tuple of (union, map from H's vertex ids to their new ids)
    """
    shift = {v: v + G.n for v in range(H.n)}
    edges = set(G.edges) | {(u + G.n, v + G.n) for u, v in H.edges}
    colors: Dict[str, set] = {}
    for name, members in G.colors.items():
        colors.setdefault(name, set()).update(members)
    for name, members in H.colors.items():
        colors.setdefault(name, set()).update(shift[v] for v in members)
    return rebuild_like((G, H), G.n + H.n, edges, colors), shift


def complete_join(G: AnyGraph, H: AnyGraph) -> AnyGraph:
    """Disjoint union plus every edge between the two sides."""
    union, shift = disjoint_union(G, H)
    cross = {(u, shift[v]) for u in range(G.n) for v in range(H.n)}
    return rebuild_like((G, H), union.n, set(union.edges) | cross, union.colors)


def power(G: AnyGraph, k: int) -> AnyGraph:
    """k-th power: uv is an edge iff 1 <= dist(u, v) <= k."""
    if k < 1:
        raise GraphError(f"Power exponent must be >= 1, got {k}")
    dist = G.distance_matrix
    edges = {(u, v) for u in range(G.n) for v in range(u + 1, G.n) if dist[u][v] <= k}
    return rebuild_like((G,), G.n, edges, G.colors)


def complement(G: AnyGraph) -> AnyGraph:
    edges = {(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not G.has_edge(u, v)}
    return rebuild_like((G,), G.n, edges, G.colors)


def _check_vertices(G: AnyGraph, S: Iterable[int]) -> FrozenSet[int]:
    S = frozenset(int(v) for v in S)
    bad = sorted(v for v in S if not 0 <= v < G.n)
    if bad:
        raise GraphError(f"Vertices {bad} are outside 0..{G.n - 1}")
    return S


def pair_subgraph(G: AnyGraph, A: Iterable[int], B: Iterable[int]) -> Tuple[AnyGraph, Tuple[int, ...]]:
    """
    G[A, B]: vertex set A ∪ B, edges uv of G with u ∈ A and v ∈ B.

    Returns:
        Tuple of (subgraph, origin) where origin[i] is the G-vertex of new vertex i.
        New vertices are numbered in increasing G-id order; colors are restricted.
    """
    A = _check_vertices(G, A)
    B = _check_vertices(G, B)
    origin = tuple(sorted(A | B))
    index = {v: i for i, v in enumerate(origin)}
    edges = set()
    for u, v in G.edges:
        if (u in A and v in B) or (v in A and u in B):
            edges.add((index[u], index[v]))
    colors = {name: {index[v] for v in members if v in index} for name, members in G.colors.items()}
    return rebuild_like((G,), len(origin), edges, colors), origin


def induced_subgraph(G: AnyGraph, S: Iterable[int]) -> Tuple[AnyGraph, Tuple[int, ...]]:
    """G[S]; same numbering convention as pair_subgraph."""
    S = frozenset(S)
    return pair_subgraph(G, S, S)


def relabel(G: AnyGraph, mapping: Mapping[int, int]) -> AnyGraph:
    """Apply a bijection old id -> new id of 0..n-1."""
    if sorted(mapping.keys()) != list(range(G.n)) or sorted(mapping.values()) != list(range(G.n)):
        raise GraphError("Relabelling must be a permutation of the vertex set")
    edges = {(mapping[u], mapping[v]) for u, v in G.edges}
    colors = {name: {mapping[v] for v in members} for name, members in G.colors.items()}
    return rebuild_like((G,), G.n, edges, colors)


# ============================================================================
# DISTANCES AND BALLS
# ============================================================================

def distances_from(G: AnyGraph, sources: Iterable[int]) -> List[float]:
    """Multi-source BFS distance of every vertex to the source set."""
    sources = _check_vertices(G, sources)
    dist = G.distance_matrix
    return [min((dist[s][v] for s in sources), default=INF) for v in range(G.n)]


def distance(G: AnyGraph, u: int, v: int) -> float:
    """Shortest-path length, or INF when u and v lie in different components."""
    _check_vertices(G, (u, v))
    return G.distance_matrix[u][v]


def ball(G: AnyGraph, U: Iterable[int], r: int) -> Tuple[AnyGraph, Tuple[int, ...]]:
    """
    Subgraph induced by the vertices at distance at most r from U.

    Raises:
        GraphError: if U is empty or r is negative
    """
    U = _check_vertices(G, U)
    if not U:
        raise GraphError("Ball centre set must be nonempty")
    if r < 0:
        raise GraphError(f"Radius must be non-negative, got {r}")
    dist = distances_from(G, U)
    return induced_subgraph(G, [v for v in range(G.n) if dist[v] <= r])


# ============================================================================
# DEGREES AND COMPONENTS
# ============================================================================

def degree_sequence(G: AnyGraph) -> List[int]:
    return sorted((G.degree(v) for v in range(G.n)), reverse=True)


def max_degree(G: AnyGraph) -> int:
    return max((G.degree(v) for v in range(G.n)), default=0)


def connected_components(G: AnyGraph) -> List[Tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by smallest vertex."""
    comps = [tuple(sorted(c)) for c in nx.connected_components(to_networkx(G))]
    return sorted(comps)


def is_subgraph(G: AnyGraph, H: AnyGraph, mapping: Mapping[int, int]) -> bool:
    """True iff `mapping` is an injective map V(G) -> V(H) sending edges to edges."""
    if sorted(mapping.keys()) != list(range(G.n)):
        return False
    if len(set(mapping.values())) != G.n or any(not 0 <= w < H.n for w in mapping.values()):
        return False
    return all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges)


# ============================================================================
# NETWORKX BRIDGE AND ISOMORPHISM
# ============================================================================

def to_networkx(G: AnyGraph) -> nx.Graph:
    """networkx view with node attribute 'colors' (frozenset of names)."""
    g = nx.Graph()
    for v in range(G.n):
        g.add_node(v, colors=G.color_set(v))
    g.add_edges_from(G.edges)
    return g


def from_networkx(g: nx.Graph, color_attribute: str = "colors") -> AnyGraph:
    """Convert a networkx graph, relabelling nodes in sorted order."""
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    colors: Dict[str, set] = {}
    for v, data in g.nodes(data=True):
        for name in data.get(color_attribute, ()):
            colors.setdefault(name, set()).add(v)
    graph = Graph(g.number_of_nodes(), frozenset((u, v) for u, v in g.edges() if u != v))
    if colors:
        return ColoredGraph(graph, colors)
    return graph


def _color_profile(G: AnyGraph) -> List[Tuple[str, int]]:
    return sorted((name, len(members)) for name, members in G.colors.items() if members)


def _is_witness(G: AnyGraph, H: AnyGraph, mapping: Mapping[int, int]) -> bool:
    if sorted(mapping.keys()) != list(range(G.n)) or sorted(mapping.values()) != list(range(H.n)):
        return False
    for u in range(G.n):
        if G.color_set(u) != H.color_set(mapping[u]):
            return False
        for v in range(u + 1, G.n):
            if G.has_edge(u, v) != H.has_edge(mapping[u], mapping[v]):
                return False
    return True


def is_isomorphic(G: AnyGraph, H: AnyGraph) -> Tuple[bool, Optional[Dict[int, int]]]:
    """
    Color-preserving isomorphism test.

    Cheap invariants (order, size, degree sequence, color class sizes) are
    compared first; the search itself is networkx's VF2 matcher with vertex
    color sets as labels. A returned witness is re-checked edge by edge.

    Returns:
        Tuple of (isomorphic, bijection V(G) -> V(H) or None)

    Examples:
        >>> is_isomorphic(path_graph(3), complete_graph(3))
        (False, None)
    """
    if G.n != H.n or len(G.edges) != len(H.edges):
        return False, None
    if degree_sequence(G) != degree_sequence(H) or _color_profile(G) != _color_profile(H):
        return False, None
    matcher = isomorphism.GraphMatcher(
        to_networkx(G), to_networkx(H),
        node_match=lambda a, b: a["colors"] == b["colors"],
    )
    if not matcher.is_isomorphic():
        return False, None
    witness = dict(matcher.mapping)
    if not _is_witness(G, H, witness):
        raise GraphError("Isomorphism matcher returned an invalid bijection")
    return True, witness


def isomorphic(G: AnyGraph, H: AnyGraph) -> bool:
    return is_isomorphic(G, H)[0]
