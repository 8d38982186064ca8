"""
TRANSDUCTIONS - Encodings
=========================

Explicit constructions encoding a target graph in a host graph, each
packaged as a HostArtifact whose contract (the pipeline maps the host to a
graph isomorphic to the target) is checked before it is returned.

Functions:
    - encode_interval: any graph in a marked interval graph
    - encode_grid, grid_unit_interval_model: grids in unit interval graphs
    - encode_pathwidth_planar, planar_host, interval_model_from_order:
      bounded pathwidth in planar graphs
    - encode_bounded_components: graphs with small components from edgeless hosts
    - encode_cubic: bounded degree in cubic graphs
    - compress_caterpillar, expand_caterpillar, encode_caterpillar_in_path
    - path_selfcopy, pathpower_embedding
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import EncodingError, VerificationError
from .graph_core import (
    AnyGraph, ColoredGraph, Graph, complete_graph, connected_components, empty_graph,
    from_networkx, grid_graph, induced_subgraph, is_isomorphic, is_subgraph, max_degree, path_graph,
    power, to_networkx,
)
from .limits import require_budget, require_size
from .loaders import graph_from_json, graph_to_json
from .logic import (
    And, DistLE, Edge, Eq, Exists, FalseF, Formula, Iff, Not, Or, Pred, TrueF,
    conj, disj, exactly_distance, neq, parse_formula,
)
from .params import star_chromatic_number, vertex_separation_order
from .perturbation import Perturbation, apply_sequence
from .transduction import (
    ColoringWitness, ColorWitness, Copy, Interpret, Interpretation, Perturb, Pipeline,
    apply_pipeline, copy, hereditary, monotone_closure_witness, pipeline_from_json,
    pipeline_to_json, witness_from_json, witness_to_json,
)

logger = logging.getLogger(__name__)


# ============================================================================
# ARTIFACTS AND INTERVAL FAMILIES
# ============================================================================

@dataclass(frozen=True)
class IntervalFamily:
    """Closed intervals (tag, lo, hi); vertex i of the intersection graph is interval i."""

    intervals: Tuple[Tuple[Hashable, int, int], ...]

    def __post_init__(self):
        normalized = tuple((tag, int(lo), int(hi)) for tag, lo, hi in self.intervals)
        for tag, lo, hi in normalized:
            if lo > hi:
                raise EncodingError(f"Interval {tag!r} has lo {lo} > hi {hi}")
        object.__setattr__(self, "intervals", normalized)

    def __len__(self):
        return len(self.intervals)

    @property
    def tags(self) -> List[Hashable]:
        return [tag for tag, _, _ in self.intervals]

    def intersection_graph(self) -> Graph:
        edges = [
            (i, j)
            for (i, (_, lo1, hi1)), (j, (_, lo2, hi2)) in itertools.combinations(enumerate(self.intervals), 2)
            if lo1 <= hi2 and lo2 <= hi1
        ]
        return Graph(len(self.intervals), frozenset(edges))

    def has_distinct_endpoints(self) -> bool:
        points = [p for _, lo, hi in self.intervals for p in (lo, hi)]
        return len(set(points)) == len(points)

    def lengths(self) -> List[int]:
        return [hi - lo for _, lo, hi in self.intervals]

    def to_json(self) -> List[Dict[str, Any]]:
        return [{"tag": tag, "lo": lo, "hi": hi} for tag, lo, hi in self.intervals]


@dataclass(frozen=True)
class HostArtifact:
    """A host, a pipeline and its witnesses, verified to produce the target."""

    host: AnyGraph
    pipeline: Pipeline
    witnesses: Tuple[ColoringWitness, ...]
    target: AnyGraph
    model: Optional[IntervalFamily] = field(default=None, compare=False)

    @classmethod
    def build(cls, host: AnyGraph, pipeline: Pipeline, target: AnyGraph,
              witnesses: Sequence[ColoringWitness] = (),
              model: Optional[IntervalFamily] = None) -> "HostArtifact":
        """
        Apply the pipeline and compare with the target.

        Raises:
            VerificationError: if the image is not isomorphic to the target
        """
        image = apply_pipeline(host, pipeline, witnesses)
        if not is_isomorphic(image, target)[0]:
            raise VerificationError(
                f"Pipeline image ({image.n} vertices, {len(image.edges)} edges) is not isomorphic "
                f"to the target ({target.n} vertices, {len(target.edges)} edges)"
            )
        logger.debug("artifact verified: host %d vertices, target %d vertices", host.n, target.n)
        return cls(host, pipeline, tuple(witnesses), target, model)

    def image(self) -> AnyGraph:
        return apply_pipeline(self.host, self.pipeline, self.witnesses)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "host": graph_to_json(self.host),
            "pipeline": pipeline_to_json(self.pipeline),
            "witnesses": [witness_to_json(w) for w in self.witnesses],
            "target": graph_to_json(self.target),
        }
        if self.model is not None:
            data["model"] = self.model.to_json()
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "HostArtifact":
        """Rebuild and re-verify a bundle written by to_json."""
        return cls.build(
            graph_from_json(data["host"]),
            pipeline_from_json(data["pipeline"]),
            graph_from_json(data["target"]),
            [witness_from_json(w) for w in data.get("witnesses", [])],
        )


def _single_stage(nu: Formula, eta: Formula, colors=()) -> Pipeline:
    return Pipeline((Interpret(Interpretation(nu, eta, tuple(colors))),))


# ============================================================================
# INTERVAL GRAPHS
# ============================================================================

INTERVAL_ETA = parse_formula(
    "!x = y & exists z (E(x,z) & E(y,z) & (exists t (E(x,t) & !E(z,t))) & (exists t (E(y,t) & !E(z,t))))",
    free={"x", "y"},
)


def interval_family(G: AnyGraph) -> IntervalFamily:
    """
    For vertex v (i = v + 1): I_i = [4i-4, 4i-1], L_i = [4i-4, 4i-3],
    R_i = [4i-2, 4i-1], and E_ij = [4i-2, 4j-3] for every edge i < j.
    The I intervals come first so that host vertex v is I_{v+1}.
    """
    n = G.n
    intervals: List[Tuple[Hashable, int, int]] = []
    intervals += [(f"I{i}", 4 * i - 4, 4 * i - 1) for i in range(1, n + 1)]
    intervals += [(f"L{i}", 4 * i - 4, 4 * i - 3) for i in range(1, n + 1)]
    intervals += [(f"R{i}", 4 * i - 2, 4 * i - 1) for i in range(1, n + 1)]
    intervals += [(f"E{u + 1}_{v + 1}", 4 * u + 2, 4 * v + 1) for u, v in G.edge_list()]
    return IntervalFamily(tuple(intervals))


def encode_interval(G: AnyGraph) -> HostArtifact:
    """
    Encode G in an interval graph: intervals I_i are marked M and two marked
    intervals are adjacent in the image iff they share a neighbour z and
    each has a neighbour outside N(z).

    Examples:
        >>> encode_interval(complete_graph(2)).host.n
        7
    """
    if G.n < 1:
        raise EncodingError("Interval encoding needs at least one vertex")
    model = interval_family(G)
    host = ColoredGraph(model.intersection_graph(), {"M": frozenset(range(G.n))})
    return HostArtifact.build(host, _single_stage(Pred("M", "x"), INTERVAL_ETA), G.plain(), model=model)


# ============================================================================
# GRIDS IN UNIT INTERVAL GRAPHS
# ============================================================================

def grid_host(n: int, m: int) -> ColoredGraph:
    """
    H_{n,m}: row cliques V_0..V_{n-1}, v_{i,j} adjacent to v_{i+1,j'} for
    j' <= j; row i is marked M<i mod 3>. Vertex v_{i,j} has id i*m + j.
    """
    edges = []
    for i in range(n):
        row = [i * m + j for j in range(m)]
        edges.extend(itertools.combinations(row, 2))
        if i + 1 < n:
            edges.extend((i * m + j, (i + 1) * m + k) for j in range(m) for k in range(j + 1))
    marks = {f"M{c}": frozenset(i * m + j for i in range(c, n, 3) for j in range(m)) for c in range(3)}
    return ColoredGraph(Graph(n * m, frozenset(edges)), marks)


def grid_unit_interval_model(n: int, m: int) -> IntervalFamily:
    """v_{i,j} -> [i(m+1) + j, i(m+1) + j + m + 1]; all intervals have length m + 1."""
    return IntervalFamily(tuple(
        (f"v{i}_{j}", i * (m + 1) + j, i * (m + 1) + j + m + 1) for i in range(n) for j in range(m)
    ))


def _one_difference(c: int, a: str, b: str) -> str:
    """Neighbourhoods of a and b inside M<c> differ in exactly one vertex."""
    return (
        f"(exists w (M{c}(w) & !(E({a},w) <-> E({b},w)) & "
        f"(forall wp (M{c}(wp) & !wp = w -> (E({a},wp) <-> E({b},wp))))))"
    )


def _cross(c: int, d: int, a: str, b: str) -> str:
    """Some a' in M<c> has the M<d>-neighbourhood of a minus b."""
    return (
        f"(M{c}({a}) & M{d}({b}) & "
        f"(exists xp (M{c}(xp) & (forall w (M{d}(w) -> (E(xp,w) <-> E({a},w) & !w = {b}))))))"
    )


@lru_cache(maxsize=None)
def grid_eta() -> Formula:
    same_row = [
        f"(M{c}(x) & M{c}(y) & ({_one_difference((c - 1) % 3, 'x', 'y')} | "
        f"{_one_difference((c + 1) % 3, 'x', 'y')}))"
        for c in range(3)
    ]
    cross = [
        f"{_cross(c, d, 'x', 'y')} | {_cross(c, d, 'y', 'x')}"
        for c in range(3) for d in range(3) if c != d
    ]
    text = f"!x = y & E(x,y) & ({' | '.join(same_row + cross)})"
    return parse_formula(text, free={"x", "y"})


def encode_grid(n: int, m: int) -> HostArtifact:
    """
    Encode the n x m grid in H_{n,m} (no copying, all vertices kept).

    Raises:
        EncodingError: if n or m is below 2
        VerificationError: if the unit interval model does not realise the host
    """
    if n < 2 or m < 2:
        raise EncodingError(f"Grid encoding needs n, m >= 2, got {n} x {m}")
    host = grid_host(n, m)
    model = grid_unit_interval_model(n, m)
    if model.intersection_graph() != host.base or len(set(model.lengths())) != 1:
        raise VerificationError(f"Unit interval model does not realise H_{{{n},{m}}}")
    return HostArtifact.build(host, _single_stage(TrueF(), grid_eta()), grid_graph(n, m), model=model)


# ============================================================================
# BOUNDED PATHWIDTH IN PLANAR GRAPHS
# ============================================================================

def interval_model_from_order(G: AnyGraph, order: Sequence[int]) -> IntervalFamily:
    """
    Interval supergraph of G from a vertex ordering: v spans from its
    position to the last position of its closed neighbourhood. Endpoints are
    then renumbered 1..2n, left ends before right ends at equal coordinates,
    which keeps the intersection graph unchanged.
    """
    if sorted(order) != list(range(G.n)):
        raise EncodingError("Ordering must list every vertex exactly once")
    position = {v: i for i, v in enumerate(order)}
    spans = {v: (position[v], max([position[v]] + [position[w] for w in G.neighbors(v)])) for v in range(G.n)}
    events = sorted(
        [(lo, 0, v) for v, (lo, _) in spans.items()] + [(hi, 1, v) for v, (_, hi) in spans.items()]
    )
    ends: Dict[int, List[int]] = {v: [] for v in range(G.n)}
    for rank, (_, _, v) in enumerate(events, start=1):
        ends[v].append(rank)
    return IntervalFamily(tuple((v, ends[v][0], ends[v][1]) for v in range(G.n)))


def _check_model(G: AnyGraph, model: IntervalFamily) -> Graph:
    """The supergraph K on G's ids, after checking the model's preconditions."""
    if sorted(model.tags) != list(range(G.n)):
        raise EncodingError("Model tags must be the vertex ids 0..n-1")
    if not model.has_distinct_endpoints():
        raise EncodingError("Model endpoints are not pairwise distinct")
    by_tag = sorted(model.intervals, key=lambda item: item[0])
    K = IntervalFamily(tuple(by_tag)).intersection_graph()
    for u, v in G.edge_list():
        if not K.has_edge(u, v):
            raise EncodingError(f"Edge ({u}, {v}) is not in the interval supergraph")
    return K


@dataclass(frozen=True)
class _Shape:
    lo: int
    hi: int

    def depth(self, X: int) -> Optional[int]:
        """Doubled y-coordinate of the V at doubled abscissa X, or None outside."""
        if not 2 * self.lo <= X <= 2 * self.hi:
            return None
        return -min(X - 2 * self.lo, 2 * self.hi - X)

    @property
    def bottom(self) -> Tuple[int, int]:
        return self.lo + self.hi, self.lo - self.hi

    def contains(self, X: int, Y: int) -> bool:
        floor = self.depth(X)
        return floor is not None and floor <= Y <= 0


def planar_host(model: IntervalFamily) -> ColoredGraph:
    """
    Host planar graph of an interval model with distinct endpoints.

    Each interval [lo, hi] is drawn as a V with extremities (lo, 0), (hi, 0)
    and bottom ((lo+hi)/2, -(hi-lo)/2). Bottoms are white vertices (interval
    with tag v becomes vertex v), crossings of two V's are black vertices,
    consecutive vertices along a V are adjacent, and each white bottom is
    linked to the lower end of the V edge directly below it. The layer of a
    vertex is the number of closed V-regions containing it.

    Marks: W (white), L1..Lt (layers).
    """
    shapes = {tag: _Shape(lo, hi) for tag, lo, hi in model.intervals}
    n = len(shapes)
    points: Dict[Tuple[int, int], int] = {}
    on_shape: Dict[Hashable, List[Tuple[int, int]]] = {tag: [] for tag in shapes}
    for v in range(n):
        points[shapes[v].bottom] = v
        on_shape[v].append(shapes[v].bottom)
    crossings = []
    for u, w in itertools.permutations(range(n), 2):
        a, b = shapes[u], shapes[w]
        if a.lo < b.lo < a.hi < b.hi:
            crossings.append(((b.lo + a.hi, b.lo - a.hi), u, w))
    for offset, (point, u, w) in enumerate(sorted(crossings)):
        points[point] = n + offset
        on_shape[u].append(point)
        on_shape[w].append(point)

    edges = set()
    for v in range(n):
        line = sorted(on_shape[v])
        edges.update((points[p], points[q]) for p, q in zip(line, line[1:]))

    for v in range(n):
        X, Y = shapes[v].bottom
        below = [(shapes[f].depth(X), f) for f in range(n) if f != v and shapes[f].depth(X) is not None]
        below = [(y, f) for y, f in below if y < Y]
        if not below:
            continue
        top = max(y for y, _ in below)
        if (X, top) in points:
            target = points[(X, top)]
        else:
            f = next(f for y, f in below if y == top)
            bottom_X = shapes[f].bottom[0]
            line = sorted(on_shape[f])
            if X < bottom_X:
                target = points[min((p for p in line if p[0] > X), key=lambda p: p[0])]
            else:
                target = points[max((p for p in line if p[0] < X), key=lambda p: p[0])]
        edges.add((v, target))

    layer = {}
    for point, vid in points.items():
        layer[vid] = sum(1 for s in shapes.values() if s.contains(*point))
    t = max(layer.values(), default=0)
    marks = {"W": frozenset(range(n))}
    for i in range(1, t + 1):
        marks[f"L{i}"] = frozenset(vid for vid, depth in layer.items() if depth == i)
    graph = Graph(len(points), frozenset((min(e), max(e)) for e in edges))
    return ColoredGraph(graph, marks)


def _descends(source: str, target: str, steps: int, t: int) -> Formula:
    """A path from source to target going down one layer per edge, of length <= steps."""
    if steps == 0 or t < 2:
        return Eq(source, target)
    w = f"w{steps}"
    down = disj(*[And(Pred(f"L{i}", source), Pred(f"L{i - 1}", w)) for i in range(2, t + 1)])
    return Or(Eq(source, target), Exists(w, conj(Edge(source, w), down, _descends(w, target, steps - 1, t))))


def supergraph_interpretation(t: int) -> Interpretation:
    """
    Whites adjacent iff one is reached from the other by a descending path,
    or both are reached from a common vertex.
    """
    eta = conj(
        Pred("W", "x"), Pred("W", "y"), neq("x", "y"),
        Exists("z", And(_descends("z", "x", t - 1, t), _descends("z", "y", t - 1, t))),
    )
    return Interpretation(Pred("W", "x"), eta)


def encode_pathwidth_planar(G: AnyGraph, model: Optional[IntervalFamily] = None) -> HostArtifact:
    """
    Encode a graph of small pathwidth in a planar host.

    Without a model the interval supergraph K comes from an optimal
    vertex-separation ordering. The pipeline recovers K from the host and
    then extracts G from K with a gluing over a star coloring of K.

    Raises:
        EncodingError: model endpoints not distinct, tags not 0..n-1, or G not in K
        VerificationError: host not planar, or the image differs from G
    """
    if model is None:
        _, order = vertex_separation_order(G)
        model = interval_model_from_order(G, order)
    K = _check_model(G, model)
    host = planar_host(model)
    planar, _ = nx.check_planarity(to_networkx(host))
    if not planar:
        raise VerificationError("Host drawing is not planar")
    t = sum(1 for name in host.colors if name.startswith("L"))
    _, coloring = star_chromatic_number(K)
    mono = monotone_closure_witness(K, G.edges, coloring)
    pipeline = Pipeline((
        Interpret(supergraph_interpretation(t)),
        ColorWitness(mono.witness),
        Interpret(mono.interpretation),
    ))
    return HostArtifact.build(host, pipeline, G.plain(), model=model)


# ============================================================================
# BOUNDED COMPONENTS
# ============================================================================

@lru_cache(maxsize=None)
def connected_atlas(order: int) -> Tuple[Graph, ...]:
    """Connected graphs on exactly `order` vertices, in graph-atlas order."""
    return tuple(
        from_networkx(g) for g in nx.graph_atlas_g()
        if g.number_of_nodes() == order and (order == 0 or nx.is_connected(g))
    )


def _component_mark(i: int, a: int) -> str:
    return f"M{i}_{a}"


def encode_bounded_components(G: AnyGraph, n: int,
                              perturbation: Optional[Perturbation] = None) -> HostArtifact:
    """
    Encode a graph whose components have at most n vertices in an edgeless
    host: copy each host vertex n times, mark each clone clique as one of
    the connected graphs F_1..F_N on n vertices (the component padded with a
    pendant path), interpret the F edges, then keep the unpadded vertices.
    With a perturbation the target is the perturbed graph.

    Raises:
        EncodingError: a component larger than n
    """
    if n < 1:
        raise EncodingError(f"Component order must be at least 1, got {n}")
    require_size(n, "MAX_COMPONENT_ORDER", "component encoding")
    atlas = connected_atlas(n)
    components = connected_components(G)
    for comp in components:
        if len(comp) > n:
            raise EncodingError(f"Component {list(comp)} has {len(comp)} > {n} vertices")
    N = len(components)
    marks: Dict[str, set] = {"K": set()}
    for i, F in enumerate(atlas, start=1):
        marks.update({_component_mark(i, a + 1): set() for a in range(n)})
    placed: Dict[int, int] = {}
    for k, comp in enumerate(components):
        sub, origin = induced_subgraph(G.plain(), comp)
        c = len(comp)
        pad = list(sub.edges) + [(a - 1 if a > c else 0, a) for a in range(c, n)]
        padded = Graph(n, frozenset((min(e), max(e)) for e in pad))
        for i, F in enumerate(atlas, start=1):
            ok, mapping = is_isomorphic(padded, F)
            if ok:
                break
        else:
            raise VerificationError(f"No atlas graph matches padded component {list(comp)}")
        for local in range(n):
            vid = mapping[local] * N + k
            marks[_component_mark(i, mapping[local] + 1)].add(vid)
            if local < c:
                marks["K"].add(vid)
                placed[origin[local]] = vid

    eta_parts = []
    for i, F in enumerate(atlas, start=1):
        for a, b in F.edge_list():
            ma, mb = _component_mark(i, a + 1), _component_mark(i, b + 1)
            eta_parts.append(Or(And(Pred(ma, "x"), Pred(mb, "y")), And(Pred(mb, "x"), Pred(ma, "y"))))
    eta = And(Edge("x", "y"), disj(*eta_parts))
    stages = [
        Copy(n),
        ColorWitness({name: frozenset(members) for name, members in marks.items()}),
        Interpret(Interpretation(TrueF(), eta, (("K", Pred("K", "x")),))),
        Interpret(hereditary("K")),
    ]
    target = G.plain()
    if perturbation is not None:
        final = {vid: i for i, vid in enumerate(sorted(placed.values()))}
        stages.append(Perturb(tuple(frozenset(final[placed[v]] for v in Z) for Z in perturbation.sets)))
        target = apply_sequence(target, perturbation)
    return HostArtifact.build(empty_graph(N), Pipeline(tuple(stages)), target)


# ============================================================================
# CUBIC GRAPHS
# ============================================================================

def regular_supergraph(G: AnyGraph, degree: int, budget: Optional[int] = None) -> Graph:
    """
    A degree-regular graph containing G as an induced subgraph on ids 0..n-1:
    repeatedly add a mirrored copy and join every deficient vertex to its mirror.
    """
    if max_degree(G) > degree:
        raise EncodingError(f"Maximum degree {max_degree(G)} exceeds {degree}")
    if G.n == 0:
        return Graph(0)
    rounds = degree - min(G.degree(v) for v in range(G.n))
    require_budget(G.n * 2 ** rounds, budget, "regular supergraph")
    current = G.plain()
    for _ in range(rounds):
        size = current.n
        edges = set(current.edges) | {(u + size, v + size) for u, v in current.edges}
        edges |= {(v, v + size) for v in range(size) if current.degree(v) < degree}
        current = Graph(2 * size, frozenset(edges))
    return current


def _gadget(p: int) -> Tuple[List[Tuple[int, int]], List[int], int]:
    """
    Tree Y of height p - 1 with a degree-3 root and binary internal vertices,
    as (edges, leaves, size); the root is 0. For p = 1 Y is a single vertex.
    """
    if p == 1:
        return [], [0], 1
    edges, level, size = [], [0], 1
    for depth in range(p - 1):
        children = 3 if depth == 0 else 2
        nxt = []
        for parent in level:
            for _ in range(children):
                edges.append((parent, size))
                nxt.append(size)
                size += 1
        level = nxt
    return edges, level, size


@dataclass(frozen=True)
class CubicEncoding:
    """H_G with the gadget height p; roots[v] is the root of v's gadget."""

    host: Graph
    p: int
    roots: Tuple[int, ...]
    regular_supergraph: Graph
    target: Graph

    def verify(self) -> bool:
        """
        Cubic host, and roots within distance 2p - 1 exactly when adjacent in the target.

        Raises:
            VerificationError: naming the first failure
        """
        bad = [v for v in range(self.host.n) if self.host.degree(v) != 3]
        if bad:
            raise VerificationError(f"Host is not cubic at vertices {bad[:5]}")
        dist = self.host.distance_matrix
        for u, v in itertools.combinations(range(self.target.n), 2):
            close = dist[self.roots[u]][self.roots[v]] <= 2 * self.p - 1
            if close != self.target.has_edge(u, v):
                raise VerificationError(f"Roots of {u} and {v} break the distance condition")
        return True

    @property
    def artifact(self) -> HostArtifact:
        host = ColoredGraph(self.host, {"R": frozenset(self.roots)})
        eta = And(neq("x", "y"), DistLE("x", "y", 2 * self.p - 1))
        return HostArtifact.build(host, _single_stage(Pred("R", "x"), eta), self.target)


def encode_cubic(G: AnyGraph, D: Optional[int] = None, budget: Optional[int] = None) -> CubicEncoding:
    """
    Cubic host H_G: G' is a D'-regular supergraph (D' = 3 * 2^(p-1) >= D), every
    vertex of G' is replaced by a gadget tree and every G' edge joins two
    gadget leaves (first leaf with a free slot).
    """
    D = max_degree(G) if D is None else D
    if D < max_degree(G):
        raise EncodingError(f"D = {D} is below the maximum degree {max_degree(G)}")
    p = 1
    while 3 * 2 ** (p - 1) < D:
        p += 1
    degree = 3 * 2 ** (p - 1)
    supergraph = regular_supergraph(G, degree, budget)
    tree_edges, leaves, size = _gadget(p)
    N = supergraph.n
    require_budget(N * size, budget, "cubic host")

    def node(v: int, local: int) -> int:
        return v if local == 0 else N + v * (size - 1) + local - 1

    edges = {(node(v, a), node(v, b)) for v in range(N) for a, b in tree_edges}
    capacity = 3 if p == 1 else 2
    used = {(v, leaf): 0 for v in range(N) for leaf in leaves}

    def free_leaf(v: int) -> int:
        for leaf in leaves:
            if used[(v, leaf)] < capacity:
                used[(v, leaf)] += 1
                return node(v, leaf)
        raise VerificationError(f"Gadget of {v} has no free leaf")

    for u, v in supergraph.edge_list():
        edges.add((free_leaf(u), free_leaf(v)))
    host = Graph(N * size, frozenset((min(e), max(e)) for e in edges))
    encoding = CubicEncoding(host, p, tuple(range(G.n)), supergraph, G.plain())
    encoding.verify()
    return encoding


# ============================================================================
# CATERPILLARS
# ============================================================================

ColorSet = FrozenSet[str]


def _color_key(I: ColorSet) -> Tuple[int, List[str]]:
    return len(I), sorted(I)


@dataclass(frozen=True)
class CompressedCaterpillar:
    """
    A colored spine path 0-1-...-(L-1) with counts[(v, I)] children of spine
    vertex v colored exactly by I.
    """

    path: ColoredGraph
    counts: Tuple[Tuple[Tuple[int, ColorSet], int], ...] = ()
    palette: Tuple[str, ...] = ()

    def __post_init__(self):
        path = self.path if isinstance(self.path, ColoredGraph) else ColoredGraph(self.path, {})
        if path.edges != path_graph(path.n).edges:
            raise EncodingError("Spine must be the path 0-1-...-(L-1)")
        counts: Dict[Tuple[int, ColorSet], int] = {}
        for (v, I), count in dict(self.counts).items():
            if not 0 <= v < path.n:
                raise EncodingError(f"Spine vertex {v} outside 0..{path.n - 1}")
            if count < 0:
                raise EncodingError(f"Negative multiplicity {count} at {v}, {sorted(I)}")
            if count:
                counts[(v, frozenset(I))] = count
        names = set(self.palette) | set(path.colors) | {c for (_, I) in counts for c in I}
        object.__setattr__(self, "path", path)
        object.__setattr__(self, "counts", tuple(sorted(counts.items(), key=lambda kv: (kv[0][0], _color_key(kv[0][1])))))
        object.__setattr__(self, "palette", tuple(sorted(names)))

    @classmethod
    def from_counts(cls, path: AnyGraph, f: Mapping[Tuple[int, ColorSet], int],
                    palette: Sequence[str] = ()) -> "CompressedCaterpillar":
        return cls(path, tuple(f.items()), tuple(palette))

    @property
    def f(self) -> Dict[Tuple[int, ColorSet], int]:
        return dict(self.counts)

    def children(self, v: int, I: ColorSet) -> int:
        return self.f.get((v, frozenset(I)), 0)

    def to_json(self) -> Dict[str, Any]:
        return {
            "path": graph_to_json(self.path),
            "palette": list(self.palette),
            "f": [{"v": v, "colors": sorted(I), "count": c} for (v, I), c in self.counts],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CompressedCaterpillar":
        counts = {(int(e["v"]), frozenset(e["colors"])): int(e["count"]) for e in data.get("f", [])}
        return cls.from_counts(graph_from_json(data["path"]), counts, data.get("palette", ()))


def expand_caterpillar(CC: CompressedCaterpillar) -> ColoredGraph:
    """Spine keeps ids 0..L-1; children follow, by spine vertex then color set."""
    L = CC.path.n
    edges = set(CC.path.edges)
    colors: Dict[str, set] = {name: set(CC.path.colors.get(name, ())) for name in CC.palette}
    vid = L
    for (v, I), count in CC.counts:
        for _ in range(count):
            edges.add((v, vid))
            for name in I:
                colors[name].add(vid)
            vid += 1
    return ColoredGraph(Graph(vid, frozenset(edges)), colors)


def _spine(C: AnyGraph) -> List[int]:
    if C.n == 0:
        return []
    inner = [v for v in range(C.n) if C.degree(v) > 1]
    if not inner:
        return [0]
    ends = [v for v in inner if sum(1 for w in C.neighbors(v) if w in set(inner)) <= 1]
    start = min(ends) if ends else None
    if start is None:
        raise EncodingError("Not a caterpillar: the non-leaf vertices contain a cycle")
    order, previous, current = [start], None, start
    inner_set = set(inner)
    while True:
        nxt = [w for w in C.neighbors(current) if w in inner_set and w != previous]
        if not nxt:
            break
        if len(nxt) > 1:
            raise EncodingError(f"Not a caterpillar: vertex {current} branches inside the spine")
        previous, current = current, nxt[0]
        order.append(current)
    if len(order) != len(inner):
        raise EncodingError("Not a caterpillar: the non-leaf vertices are not a path")
    return order


def compress_caterpillar(C: AnyGraph) -> CompressedCaterpillar:
    """
    Spine = the non-leaf vertices (a single vertex, the least id, when
    there are none); every other vertex is a child of its spine neighbour.

    Raises:
        EncodingError: if C is not a caterpillar
    """
    if C.n and (len(C.edges) != C.n - 1 or len(connected_components(C)) != 1):
        raise EncodingError("Not a caterpillar: the graph is not a tree")
    spine = _spine(C)
    index = {v: i for i, v in enumerate(spine)}
    path_colors = {name: {index[v] for v in members if v in index} for name, members in C.colors.items()}
    path = ColoredGraph(path_graph(len(spine)), path_colors)
    counts: Dict[Tuple[int, ColorSet], int] = {}
    for v in range(C.n):
        if v in index:
            continue
        (parent,) = [w for w in C.neighbors(v) if w in index]
        key = (index[parent], C.color_set(v))
        counts[key] = counts.get(key, 0) + 1
    return CompressedCaterpillar(path, tuple(counts.items()), tuple(C.colors))


def _walk(source: str, target: str, steps: int) -> Formula:
    """A walk of length <= steps from source to target with no inner S vertex."""
    if steps == 0:
        return Eq(source, target)
    w = f"w{steps}"
    inner_ok = Or(Eq(w, target), Not(Pred("S", w)))
    return Or(Eq(source, target), Exists(w, conj(Edge(source, w), inner_ok, _walk(w, target, steps - 1))))


def _next_to_s(var: str) -> Formula:
    return Exists("s0", And(Edge(var, "s0"), Pred("S", "s0")))


def caterpillar_interpretation(delta: int, palette: Sequence[str]) -> Interpretation:
    reach = delta + 2
    eta = And(neq("x", "y"), Or(
        And(Or(_next_to_s("x"), _next_to_s("y")), _walk("x", "y", reach)),
        conj(_next_to_s("x"), _next_to_s("y"),
             Exists("s", conj(Pred("S", "s"), _walk("x", "s", reach), _walk("s", "y", reach)))),
    ))
    nu = And(Not(Pred("S", "x")), Not(Pred("T", "x")))
    return Interpretation(nu, eta, tuple((name, Pred(name, "x")) for name in palette))


def encode_caterpillar_in_path(CC: CompressedCaterpillar, delta: int) -> HostArtifact:
    """
    Encode a caterpillar of maximum degree <= delta in a colored path: each
    spine vertex becomes S, the vertex, its children, T.

    Raises:
        EncodingError: degree bound violated, or the palette uses S or T
    """
    target = expand_caterpillar(CC)
    if max_degree(target) > delta:
        raise EncodingError(f"Caterpillar has maximum degree {max_degree(target)} > {delta}")
    clash = {"S", "T"} & set(CC.palette)
    if clash:
        raise EncodingError(f"Palette may not use the block marks {sorted(clash)}")
    sequence: List[FrozenSet[str]] = []
    for v in range(CC.path.n):
        sequence.append(frozenset({"S"}))
        sequence.append(CC.path.color_set(v))
        for (u, I), count in CC.counts:
            if u == v:
                sequence.extend([I] * count)
        sequence.append(frozenset({"T"}))
    colors: Dict[str, set] = {name: set() for name in ("S", "T") + CC.palette}
    for i, names in enumerate(sequence):
        for name in names:
            colors[name].add(i)
    host = ColoredGraph(path_graph(len(sequence)), colors)
    pipeline = Pipeline((Interpret(caterpillar_interpretation(delta, CC.palette)),))
    return HostArtifact.build(host, pipeline, target)


# ============================================================================
# PATHS
# ============================================================================

def path_selfcopy(n: int, k: int) -> HostArtifact:
    """
    C_k(P_n) from P_{nk}: blocks of k consecutive vertices, odd blocks
    marked M; adjacent iff at distance exactly k, or closer and equally marked.
    """
    if n < 1 or k < 1:
        raise EncodingError(f"Path self-copy needs n, k >= 1, got n={n}, k={k}")
    host = ColoredGraph(path_graph(n * k), {"M": frozenset(i for i in range(n * k) if (i // k) % 2 == 1)})
    close = And(DistLE("x", "y", k - 1), Iff(Pred("M", "x"), Pred("M", "y"))) if k > 1 else FalseF()
    eta = And(neq("x", "y"), Or(exactly_distance("x", "y", k), close))
    return HostArtifact.build(host, _single_stage(TrueF(), eta), copy(path_graph(n), k)[0])


def pathpower_embedding(n: int, k: int) -> Dict[int, int]:
    """
    Embed C_k(P_n) in the (k+1)-th power of P_{nk}: clone i of v goes to
    position v*k + i - 1.

    Raises:
        VerificationError: if some copied edge is not an edge of the power
    """
    copied, tags = copy(path_graph(n), k)
    mapping = {vid: tag.origin * k + tag.clone - 1 for vid, tag in enumerate(tags)}
    if not is_subgraph(copied, power(path_graph(n * k), k + 1), mapping):
        raise VerificationError(f"C_{k}(P_{n}) does not embed in the {k + 1}-th power of P_{n * k}")
    return mapping
