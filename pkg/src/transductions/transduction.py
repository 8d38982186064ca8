"""
TRANSDUCTIONS - Transduction Algebra
====================================

Copy operations, coloring witnesses, simple interpretations and pipelines
of stages applied left to right. Every stage maps a colored graph to a
colored graph:

    Copy(k)          k clones per vertex, clones of a vertex form a clique
    ColorWitness(c)  add the fixed marks c
    ColorSearch(U)   add marks chosen by a witness (search modes range over all)
    Interpret(I)     vertex set nu, edge set eta, output colors of I
    Perturb(Z..)     subset complementations

Clone i (1-based) of vertex v of an n-vertex graph has id (i-1)*n + v, so
clone 1 keeps its id and Copy(1) is the identity.

Functions:
    - copy, interpret, apply_pipeline, enumerate_images, member_check
    - glue, glued_interpretation, trivial_gluing
    - monotone_closure_witness, edge_coloring_witness
    - pendant_selfcopy, copy_commute_check
    - hereditary, pair_hereditary, identity_interpretation, complement_interpretation
    - check_immersive
    - pipeline_to_json, pipeline_from_json, witness_to_json, witness_from_json
"""

import itertools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import EncodingError, InterpretationError, PipelineError, VerificationError
from .graph_core import (
    AnyGraph, ColoredGraph, Graph, VertexTag, as_colored, degree_sequence, is_isomorphic,
    pair_subgraph, rebuild_like,
)
from .limits import require_budget
from .logic import (
    And, Edge, FalseF, Formula, Iff, Not, Or, Pred, TrueF,
    check_r_local, check_strongly_local, compile_formula, conj, disj, exactly_distance,
    formula_to_text, free_variables, neq, parse_formula, predicate_names, relativize, rename_free,
)
from .params import is_star_coloring
from .perturbation import Perturbation, apply_sequence

logger = logging.getLogger(__name__)

ColoringWitness = Mapping[str, FrozenSet[int]]


# ============================================================================
# INTERPRETATIONS
# ============================================================================

@dataclass(frozen=True)
class Interpretation:
    """
    Simple interpretation (nu(x), eta(x, y)), optionally defining output
    colors by formulas in x.
    """

    nu: Formula
    eta: Formula
    colors: Tuple[Tuple[str, Formula], ...] = ()

    def __post_init__(self):
        if isinstance(self.colors, Mapping):
            object.__setattr__(self, "colors", tuple(sorted(self.colors.items())))
        if not free_variables(self.nu) <= {"x"}:
            raise InterpretationError(f"nu may only use x free, got {sorted(free_variables(self.nu))}")
        if not free_variables(self.eta) <= {"x", "y"}:
            raise InterpretationError(f"eta may only use x, y free, got {sorted(free_variables(self.eta))}")
        for name, phi in self.colors:
            if not free_variables(phi) <= {"x"}:
                raise InterpretationError(f"Output color {name!r} may only use x free")

    @classmethod
    def parse(cls, nu: str, eta: str, colors: Optional[Mapping[str, str]] = None) -> "Interpretation":
        return cls(
            parse_formula(nu, free={"x"}),
            parse_formula(eta, free={"x", "y"}),
            tuple((name, parse_formula(text, free={"x"})) for name, text in sorted((colors or {}).items())),
        )

    @property
    def color_map(self) -> Dict[str, Formula]:
        return dict(self.colors)

    def marks(self) -> FrozenSet[str]:
        """Color names the formulas read."""
        names = predicate_names(self.nu) | predicate_names(self.eta)
        for _, phi in self.colors:
            names |= predicate_names(phi)
        return names


def identity_interpretation() -> Interpretation:
    return Interpretation(TrueF(), Edge("x", "y"))


def hereditary(mark: str = "M") -> Interpretation:
    """(M(x), E(x,y)): the induced subgraph on the marked vertices."""
    return Interpretation(Pred(mark, "x"), Edge("x", "y"))


def pair_hereditary(a: str = "A", b: str = "B") -> Interpretation:
    """Extract G[A, B]: vertices A or B, edges with one end in A and the other in B."""
    return Interpretation(
        Or(Pred(a, "x"), Pred(b, "x")),
        conj(Edge("x", "y"), Or(Pred(a, "x"), Pred(a, "y")), Or(Pred(b, "x"), Pred(b, "y"))),
    )


def complement_interpretation(mark: str = "M") -> Interpretation:
    """Quantifier-free subset complementation of the marked set."""
    return Interpretation(
        TrueF(),
        And(neq("x", "y"), Not(Iff(Edge("x", "y"), And(Pred(mark, "x"), Pred(mark, "y"))))),
    )


def interpret(Gplus: AnyGraph, I: Interpretation) -> Tuple[AnyGraph, Tuple[int, ...]]:
    """
    Apply a simple interpretation.

    Image vertices are the nu-vertices of Gplus numbered in increasing host
    order; edges are the eta-pairs among them. The realised relation is
    checked to be symmetric and irreflexive.

    Returns:
        Tuple of (image, origin) with origin[i] the host vertex of image vertex i.
        The image is a ColoredGraph exactly when I defines output colors.

    Raises:
        InterpretationError: naming the first reflexive or asymmetric pair
    """
    nu = compile_formula(I.nu).bind(Gplus)
    eta = compile_formula(I.eta).bind(Gplus)
    origin = tuple(v for v in range(Gplus.n) if nu(x=v))
    index = {v: i for i, v in enumerate(origin)}

    edges = set()
    for u in origin:
        if eta(x=u, y=u):
            raise InterpretationError(f"eta is reflexive at vertex {u}", pair=(u, u))
    for a, u in enumerate(origin):
        for v in origin[a + 1:]:
            forward, backward = eta(x=u, y=v), eta(x=v, y=u)
            if forward != backward:
                pair = (u, v) if forward else (v, u)
                raise InterpretationError(
                    f"eta is asymmetric: holds for {pair} but not for {pair[::-1]}", pair=pair
                )
            if forward:
                edges.add((index[u], index[v]))

    image = Graph(len(origin), frozenset(edges))
    if I.colors:
        colors = {}
        for name, phi in I.colors:
            holds = compile_formula(phi).bind(Gplus)
            colors[name] = frozenset(index[v] for v in origin if holds(x=v))
        return ColoredGraph(image, colors), origin
    return image, origin


# ============================================================================
# COPY
# ============================================================================

def copy(G: AnyGraph, k: int) -> Tuple[AnyGraph, Tuple[VertexTag, ...]]:
    """
    k clones of G; clones of one vertex are pairwise adjacent, colors are
    replicated to every clone.

    Returns:
        Tuple of (copied graph, tags) with tags[id] = VertexTag(origin, clone)
    """
    if k < 1:
        raise PipelineError(f"Copy needs k >= 1, got {k}")
    n = G.n
    edges = set()
    for i in range(k):
        edges.update((u + i * n, v + i * n) for u, v in G.edges)
    for v in range(n):
        for i, j in itertools.combinations(range(k), 2):
            edges.add((v + i * n, v + j * n))
    colors = {name: {v + i * n for v in members for i in range(k)} for name, members in G.colors.items()}
    tags = tuple(VertexTag(v, i + 1) for i in range(k) for v in range(n))
    return rebuild_like((G,), n * k, edges, colors), tags


# ============================================================================
# PIPELINES
# ============================================================================

@dataclass(frozen=True)
class Copy:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise PipelineError(f"Copy stage needs an integer k >= 1, got {self.k!r}")


@dataclass(frozen=True)
class ColorWitness:
    colors: Mapping[str, FrozenSet[int]]

    def __post_init__(self):
        object.__setattr__(self, "colors", MappingProxyType(
            {name: frozenset(members) for name, members in sorted(self.colors.items())}
        ))

    def __hash__(self):
        return hash(tuple(self.colors.items()))


@dataclass(frozen=True)
class ColorSearch:
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise PipelineError(f"ColorSearch repeats a color name: {self.names}")


@dataclass(frozen=True)
class Interpret:
    interpretation: Interpretation


@dataclass(frozen=True)
class Perturb:
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(Z) for Z in self.sets))


Stage = Union[Copy, ColorWitness, ColorSearch, Interpret, Perturb]
_STAGE_TYPES = (Copy, ColorWitness, ColorSearch, Interpret, Perturb)


@dataclass(frozen=True)
class Pipeline:
    """An ordered sequence of stages."""

    stages: Tuple[Stage, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        for position, stage in enumerate(self.stages):
            if not isinstance(stage, _STAGE_TYPES):
                raise PipelineError(f"Stage {position} is not a pipeline stage: {stage!r}")

    def __iter__(self):
        return iter(self.stages)

    def __len__(self):
        return len(self.stages)

    def then(self, *stages: Stage) -> "Pipeline":
        return Pipeline(self.stages + tuple(stages))

    @property
    def search_stages(self) -> List[ColorSearch]:
        return [s for s in self.stages if isinstance(s, ColorSearch)]


def _apply_stage(G: ColoredGraph, stage: Stage, witness: Optional[ColoringWitness]) -> ColoredGraph:
    if isinstance(stage, Copy):
        return as_colored(copy(G, stage.k)[0])
    if isinstance(stage, ColorWitness):
        _check_marks(G, stage.colors, "ColorWitness")
        return G.with_colors(stage.colors)
    if isinstance(stage, ColorSearch):
        if witness is None:
            raise PipelineError("ColorSearch stage reached without a witness")
        if set(witness) != set(stage.names):
            raise PipelineError(
                f"Witness colors {sorted(witness)} do not match the stage colors {sorted(stage.names)}"
            )
        _check_marks(G, witness, "Witness")
        return G.with_colors(witness)
    if isinstance(stage, Interpret):
        return as_colored(interpret(G, stage.interpretation)[0])
    if isinstance(stage, Perturb):
        return as_colored(apply_sequence(G, Perturbation(stage.sets, G.n)))
    raise PipelineError(f"Unknown stage {stage!r}")


def _check_marks(G: AnyGraph, marks: Mapping[str, Iterable[int]], what: str) -> None:
    for name, members in marks.items():
        bad = sorted(v for v in members if not 0 <= v < G.n)
        if bad:
            raise PipelineError(f"{what} color {name!r} uses vertices {bad} of a {G.n}-vertex host")


def _strip(G: ColoredGraph) -> AnyGraph:
    return G if G.colors else G.base


def apply_pipeline(G: AnyGraph, T: Pipeline, witnesses: Sequence[ColoringWitness] = ()) -> AnyGraph:
    """
    Apply the stages left to right, using witnesses[i] at the i-th ColorSearch stage.

    Returns:
        The final graph; a plain Graph when no colors remain.

    Raises:
        PipelineError: wrong witness count, colors or host size
    """
    if len(witnesses) != len(T.search_stages):
        raise PipelineError(
            f"Pipeline has {len(T.search_stages)} ColorSearch stage(s) but {len(witnesses)} witness(es) were given"
        )
    current = as_colored(G)
    pending = iter(witnesses)
    for stage in T:
        witness = next(pending) if isinstance(stage, ColorSearch) else None
        current = _apply_stage(current, stage, witness)
    return _strip(current)


def _search_estimate(G: AnyGraph, T: Pipeline) -> int:
    """Upper bound on the number of witness combinations."""
    n, total = G.n, 1
    for stage in T:
        if isinstance(stage, Copy):
            n *= stage.k
        elif isinstance(stage, ColorSearch):
            total *= 2 ** (len(stage.names) * n)
    return total


def _witnesses_for(names: Sequence[str], n: int) -> Iterator[Dict[str, FrozenSet[int]]]:
    for bits in range(2 ** (len(names) * n)):
        witness = {}
        for c, name in enumerate(names):
            witness[name] = frozenset(v for v in range(n) if bits >> (c * n + v) & 1)
        yield witness


def _search(G: AnyGraph, T: Pipeline) -> Iterator[Tuple[List[ColoringWitness], AnyGraph]]:
    stages = list(T)

    def run(current: ColoredGraph, position: int, chosen: List[ColoringWitness]):
        while position < len(stages) and not isinstance(stages[position], ColorSearch):
            current = _apply_stage(current, stages[position], None)
            position += 1
        if position == len(stages):
            yield list(chosen), _strip(current)
            return
        stage = stages[position]
        for witness in _witnesses_for(stage.names, current.n):
            chosen.append(witness)
            yield from run(current.with_colors(witness), position + 1, chosen)
            chosen.pop()

    yield from run(as_colored(G), 0, [])


def _invariant(G: AnyGraph) -> Tuple:
    return (G.n, len(G.edges), tuple(degree_sequence(G)),
            tuple(sorted((k, len(v)) for k, v in G.colors.items() if v)))


def enumerate_images(G: AnyGraph, T: Pipeline, budget: Optional[int] = None) -> List[AnyGraph]:
    """
    All images of G under T up to isomorphism, one representative per class,
    ordered by (order, size, edge list).

    Raises:
        BudgetExceededError: when the witness space exceeds the budget
    """
    require_budget(_search_estimate(G, T), budget, "image enumeration")
    buckets: Dict[Tuple, List[AnyGraph]] = {}
    visited = 0
    for _, image in _search(G, T):
        visited += 1
        bucket = buckets.setdefault(_invariant(image), [])
        if not any(is_isomorphic(image, rep)[0] for rep in bucket):
            bucket.append(image)
    logger.debug("enumerated %d witness combinations", visited)
    images = [rep for bucket in buckets.values() for rep in bucket]
    return sorted(images, key=lambda H: (H.n, len(H.edges), H.edge_list()))


def member_check(H: AnyGraph, T: Pipeline, G: AnyGraph,
                 budget: Optional[int] = None) -> Optional[List[ColoringWitness]]:
    """
    Witnesses with apply_pipeline(G, T, witnesses) isomorphic to H, or None
    after an exhaustive search.
    """
    require_budget(_search_estimate(G, T), budget, "membership search")
    target = _invariant(H)
    for witnesses, image in _search(G, T):
        if _invariant(image) == target and is_isomorphic(image, H)[0]:
            return witnesses
    return None


# ============================================================================
# GLUING
# ============================================================================

def part_mark(i: int) -> str:
    return f"V{i}"


def _check_parts(parts: Mapping[Tuple[int, int], Interpretation], n: int) -> None:
    if n < 1:
        raise PipelineError(f"Gluing needs at least one part, got {n}")
    reserved = {part_mark(i) for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if (i, j) not in parts:
                raise PipelineError(f"Gluing is missing the part ({i}, {j})")
            clash = parts[(i, j)].marks() & reserved
            if clash:
                raise PipelineError(f"Part ({i}, {j}) reads the part mark(s) {sorted(clash)}")
    extra = [key for key in parts if not (1 <= key[0] <= key[1] <= n)]
    if extra:
        raise PipelineError(f"Gluing parts outside 1 <= i <= j <= {n}: {sorted(extra)}")


def _domains(G: AnyGraph, n: int) -> List[FrozenSet[int]]:
    """A_k = V_k minus every earlier V_k'."""
    missing = [part_mark(i) for i in range(1, n + 1) if part_mark(i) not in G.colors]
    if missing:
        raise PipelineError(f"Gluing marks missing from the host: {missing}")
    seen: set = set()
    domains = []
    for i in range(1, n + 1):
        A = frozenset(G.colors[part_mark(i)]) - seen
        seen |= A
        domains.append(A)
    return domains


def glue(parts: Mapping[Tuple[int, int], Interpretation], G: AnyGraph, n: int) -> Tuple[AnyGraph, Tuple[int, ...]]:
    """
    Gluing of the parts I_{i,j} (1 <= i <= j <= n).

    The image has vertex set A_1 + ... + A_n (in increasing host order); its
    edge set is the union over i <= j of the edges of I_{i,j} applied to
    G[A_i, A_j].

    Returns:
        Tuple of (image, origin)
    """
    _check_parts(parts, n)
    domains = _domains(G, n)
    origin = tuple(sorted(set().union(*domains)))
    index = {v: a for a, v in enumerate(origin)}
    host_marks = {name for name in G.colors if name not in {part_mark(i) for i in range(1, n + 1)}}
    edges = set()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            sub, sub_origin = pair_subgraph(as_colored(G).restrict_colors(host_marks),
                                            domains[i - 1], domains[j - 1])
            image, image_origin = interpret(sub, parts[(i, j)])
            for a, b in image.edges:
                u, v = sub_origin[image_origin[a]], sub_origin[image_origin[b]]
                edges.add((index[u], index[v]))
    return Graph(len(origin), frozenset(edges)), origin


def _domain_formula(k: int) -> Formula:
    return conj(Pred(part_mark(k), "x"), *[Not(Pred(part_mark(i), "x")) for i in range(1, k)])


def glued_interpretation(parts: Mapping[Tuple[int, int], Interpretation], n: int) -> Interpretation:
    """
    A single interpretation equivalent to glue(parts, ., n).

    Each part is relativized to A_i + A_j, with E read as the edge relation
    of G[A_i, A_j]; free variables are guarded explicitly.
    """
    _check_parts(parts, n)
    A = {k: _domain_formula(k) for k in range(1, n + 1)}

    def in_pair(var: str, i: int, j: int) -> Formula:
        return disj(rename_free(A[i], {"x": var}), rename_free(A[j], {"x": var}))

    disjuncts = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            Ai_y, Aj_y = rename_free(A[i], {"x": "y"}), rename_free(A[j], {"x": "y"})
            pair_edge = And(Edge("x", "y"), disj(And(A[i], Aj_y), And(A[j], Ai_y)))
            domain = in_pair("x", i, j)
            part = parts[(i, j)]
            nu_x = relativize(part.nu, domain, pair_edge)
            nu_y = relativize(rename_free(part.nu, {"x": "y"}), domain, pair_edge)
            eta = relativize(part.eta, domain, pair_edge)
            disjuncts.append(conj(in_pair("x", i, j), in_pair("y", i, j), nu_x, nu_y, eta))
    nu = disj(*[Pred(part_mark(i), "x") for i in range(1, n + 1)])
    return Interpretation(nu, disj(*disjuncts))


def trivial_gluing(diagonal: Sequence[Interpretation]) -> Dict[Tuple[int, int], Interpretation]:
    """Parts with I_{i,i} = diagonal[i-1] and (true, false) between parts."""
    n = len(diagonal)
    parts = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            parts[(i, j)] = diagonal[i - 1] if i == j else Interpretation(TrueF(), FalseF())
    return parts


# ============================================================================
# MONOTONE CLOSURE VIA STAR COLORINGS
# ============================================================================

@dataclass(frozen=True)
class MonotoneWitness:
    """Marks and gluing parts extracting a chosen subgraph."""

    witness: Mapping[str, FrozenSet[int]]
    parts: Mapping[Tuple[int, int], Interpretation]
    n_parts: int
    interpretation: Interpretation = field(compare=False)

    def recover(self, G: AnyGraph) -> Tuple[AnyGraph, Tuple[int, ...]]:
        return glue(self.parts, as_colored(G).with_colors(self.witness), self.n_parts)


def _bridge_mark(prefix: str, i: int, j: int) -> str:
    return f"{prefix}B{i}_{j}"


def monotone_closure_witness(G: AnyGraph, H_edges: Iterable[Sequence[int]],
                             star_coloring: Mapping[int, Hashable],
                             vertices: Optional[Iterable[int]] = None,
                             mark_prefix: str = "") -> MonotoneWitness:
    """
    Marks realising the subgraph H = (vertices, H_edges) of G by a gluing
    over the color classes of a star coloring.

    V<i> marks color class i inside V(H). Between classes i < j (a star
    forest in G) the mark B<i>_<j> holds the vertices incident to a kept edge
    of that bipartite piece, and the part is (true, B(x) & B(y) & E(x,y)):
    in a star forest no discarded edge joins two marked vertices. Classes
    are independent, so diagonal parts are (true, false).

    Raises:
        EncodingError: invalid star coloring (with the offending path),
            or H not a subgraph of G
        VerificationError: if the gluing does not give back H
    """
    vertices = frozenset(range(G.n) if vertices is None else vertices)
    kept = {(min(u, v), max(u, v)) for u, v in H_edges}
    for u, v in sorted(kept):
        if not G.has_edge(u, v):
            raise EncodingError(f"({u}, {v}) is not an edge of the host graph")
        if u not in vertices or v not in vertices:
            raise EncodingError(f"Edge ({u}, {v}) has an endpoint outside the subgraph's vertices")
    bad = is_star_coloring(G, star_coloring)
    if bad is not None:
        kind = "monochromatic edge" if len(bad) == 2 else "bicolored path"
        raise EncodingError(f"Not a star coloring: {kind} {bad}")

    palette = sorted(set(star_coloring[v] for v in range(G.n)), key=repr)
    class_of = {v: palette.index(star_coloring[v]) + 1 for v in range(G.n)}
    m = max(len(palette), 1)
    witness: Dict[str, FrozenSet[int]] = {}
    for i in range(1, m + 1):
        witness[part_mark(i)] = frozenset(v for v in vertices if class_of.get(v) == i)

    parts: Dict[Tuple[int, int], Interpretation] = {}
    for i in range(1, m + 1):
        parts[(i, i)] = Interpretation(TrueF(), FalseF())
        for j in range(i + 1, m + 1):
            name = _bridge_mark(mark_prefix, i, j)
            between = [(u, v) for u, v in kept if {class_of[u], class_of[v]} == {i, j}]
            witness[name] = frozenset(w for e in between for w in e)
            parts[(i, j)] = Interpretation(
                TrueF(), conj(Pred(name, "x"), Pred(name, "y"), Edge("x", "y"))
            )

    result = MonotoneWitness(
        MappingProxyType(witness), MappingProxyType(parts), m, glued_interpretation(parts, m)
    )
    image, origin = result.recover(G)
    recovered = {(origin[a], origin[b]) for a, b in image.edges}
    if set(origin) != set(vertices) or recovered != kept:
        raise VerificationError("Gluing over the star coloring did not reproduce the subgraph")
    return result


@dataclass(frozen=True)
class EdgeColoringWitness:
    """One monotone witness per edge color on a shared vertex set."""

    witness: Mapping[str, FrozenSet[int]]
    interpretations: Mapping[str, Interpretation]


def edge_coloring_witness(G: AnyGraph, edge_colors: Mapping[Tuple[int, int], str],
                          star_coloring: Mapping[int, Hashable]) -> EdgeColoringWitness:
    """
    Recover each color class of an edge-colored subgraph of G.

    Args:
        edge_colors: kept edge -> color name (an identifier)
    """
    by_color: Dict[str, List[Tuple[int, int]]] = {}
    for edge, name in edge_colors.items():
        by_color.setdefault(name, []).append(tuple(edge))
    witness: Dict[str, FrozenSet[int]] = {}
    interpretations: Dict[str, Interpretation] = {}
    for name in sorted(by_color):
        mono = monotone_closure_witness(G, by_color[name], star_coloring, mark_prefix=f"{name}_")
        witness.update(mono.witness)
        interpretations[name] = mono.interpretation
    return EdgeColoringWitness(MappingProxyType(witness), MappingProxyType(interpretations))


# ============================================================================
# COPYING FACTS
# ============================================================================

def pendant_mark(i: int) -> str:
    return f"M{i}"


def pendant_selfcopy(G: AnyGraph, k: int) -> Tuple[ColoredGraph, Pipeline]:
    """
    Host: G plus k pendant vertices per vertex, the i-th marked M<i>.
    Interpretation: pendants, adjacent iff at distance 2, or equally marked
    at distance 3. The image is copy(G, k) with the same vertex numbering.
    """
    if k < 1:
        raise PipelineError(f"Pendant self-copy needs k >= 1, got {k}")
    n = G.n
    edges = set(G.edges)
    colors: Dict[str, set] = {}
    for i in range(1, k + 1):
        for v in range(n):
            pendant = n + (i - 1) * n + v
            edges.add((v, pendant))
            colors.setdefault(pendant_mark(i), set()).add(pendant)
    host = ColoredGraph(Graph(n + n * k, frozenset(edges)), colors)
    nu = disj(*[Pred(pendant_mark(i), "x") for i in range(1, k + 1)])
    eta = And(neq("x", "y"), Or(
        exactly_distance("x", "y", 2),
        disj(*[conj(Pred(pendant_mark(i), "x"), Pred(pendant_mark(i), "y"), exactly_distance("x", "y", 3))
               for i in range(1, k + 1)]),
    ))
    return host, Pipeline((Interpret(Interpretation(nu, eta)),))


def copy_commute_check(G: AnyGraph, k: int, l: int, budget: Optional[int] = None) -> bool:
    """C_k(C_l(G)) isomorphic to C_l(C_k(G))."""
    require_budget(k * l * G.n, budget, "copy commutation check")
    left = copy(copy(G, l)[0], k)[0]
    right = copy(copy(G, k)[0], l)[0]
    return is_isomorphic(left, right)[0]


def check_immersive(I: Interpretation, family: Sequence[AnyGraph], r: int):
    """nu r-local and eta strongly r-local on every graph of the family."""
    report = check_r_local(I.nu, family, r)
    if not report:
        return report
    return check_strongly_local(I.eta, family, r)


# ============================================================================
# JSON
# ============================================================================

def witness_to_json(witness: ColoringWitness) -> Dict[str, List[int]]:
    return {name: sorted(members) for name, members in sorted(witness.items())}


def witness_from_json(data: Mapping[str, Iterable[int]]) -> Dict[str, FrozenSet[int]]:
    if not isinstance(data, Mapping):
        raise PipelineError("A witness must be a JSON object mapping color names to vertex lists")
    return {str(name): frozenset(int(v) for v in members) for name, members in data.items()}


def interpretation_to_json(I: Interpretation) -> Dict[str, object]:
    data: Dict[str, object] = {"nu": formula_to_text(I.nu), "eta": formula_to_text(I.eta)}
    if I.colors:
        data["colors"] = {name: formula_to_text(phi) for name, phi in I.colors}
    return data


def pipeline_to_json(T: Pipeline) -> List[Dict[str, object]]:
    out: List[Dict[str, object]] = []
    for stage in T:
        if isinstance(stage, Copy):
            out.append({"op": "copy", "k": stage.k})
        elif isinstance(stage, ColorWitness):
            out.append({"op": "colorwitness", "colors": witness_to_json(stage.colors)})
        elif isinstance(stage, ColorSearch):
            out.append({"op": "colorsearch", "colors": list(stage.names)})
        elif isinstance(stage, Interpret):
            out.append({"op": "interpret", **interpretation_to_json(stage.interpretation)})
        else:
            out.append({"op": "perturb", "sets": [sorted(Z) for Z in stage.sets]})
    return out


def pipeline_from_json(data: Sequence[Mapping[str, object]]) -> Pipeline:
    """Inverse of pipeline_to_json; unknown ops raise PipelineError."""
    if not isinstance(data, (list, tuple)):
        raise PipelineError("Pipeline JSON must be a list of stages")
    stages: List[Stage] = []
    for position, entry in enumerate(data):
        op = entry.get("op") if isinstance(entry, Mapping) else None
        try:
            if op == "copy":
                stages.append(Copy(int(entry["k"])))
            elif op == "colorwitness":
                stages.append(ColorWitness(witness_from_json(entry["colors"])))
            elif op == "colorsearch":
                stages.append(ColorSearch(tuple(str(c) for c in entry["colors"])))
            elif op == "interpret":
                stages.append(Interpret(Interpretation.parse(entry["nu"], entry["eta"], entry.get("colors"))))
            elif op == "perturb":
                stages.append(Perturb(tuple(frozenset(Z) for Z in entry["sets"])))
            else:
                raise PipelineError(f"Stage {position}: unknown op {op!r}")
        except KeyError as exc:
            raise PipelineError(f"Stage {position} ({op}) is missing field {exc}") from None
    return Pipeline(tuple(stages))
