"""
TRANSDUCTIONS - First-Order Logic over Colored Graphs
=====================================================

Formula ASTs over the signature {E, =, unary colors} with the derived
distance atom dist(x,y) <= r, a lark grammar for the textual syntax, a
brute-force evaluator, quantifier rank, t-localization and semantic
locality checks.

Grammar (precedence ! > & > | > -> > <->; quantifiers bind like !):

    phi ::= true | false | E(x,y) | x = y | P(x) | dist(x,y) <= r
          | !phi | phi & phi | phi | phi | phi -> phi | phi <-> phi
          | exists x phi | forall x phi | (phi)

Functions:
    - parse_formula, formula_to_text
    - evaluate, compile_formula
    - free_variables, quantifier_rank
    - t_localize, check_r_local, check_strongly_local
    - expand_distance, push_negations, rename_free, relativize
    - conj, disj, neq, iff, exactly_distance
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .errors import EvaluationError, FormulaSyntaxError
from .graph_core import AnyGraph, ball, induced_subgraph

logger = logging.getLogger(__name__)


# ============================================================================
# AST
# ============================================================================

class Formula:
    """Base class of formula nodes."""

    def __str__(self) -> str:
        return formula_to_text(self)


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class Edge(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    x: str


@dataclass(frozen=True)
class DistLE(Formula):
    x: str
    y: str
    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise FormulaSyntaxError(f"Distance bound must be a non-negative integer, got {self.r!r}")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


Assignment = Mapping[str, int]

_ATOMS = (TrueF, FalseF, Edge, Eq, Pred, DistLE)
_BINARY = (And, Or, Implies, Iff)
_QUANTIFIERS = (Exists, Forall)


# ============================================================================
# BUILDERS
# ============================================================================

def _balanced(op, parts: Sequence[Formula]) -> Formula:
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return op(_balanced(op, parts[:mid]), _balanced(op, parts[mid:]))


def conj(*parts: Formula) -> Formula:
    """Conjunction of any number of formulas (true when empty)."""
    parts = [p for p in parts if not isinstance(p, TrueF)]
    if any(isinstance(p, FalseF) for p in parts):
        return FalseF()
    return _balanced(And, parts) if parts else TrueF()


def disj(*parts: Formula) -> Formula:
    """Disjunction of any number of formulas (false when empty)."""
    parts = [p for p in parts if not isinstance(p, FalseF)]
    if any(isinstance(p, TrueF) for p in parts):
        return TrueF()
    return _balanced(Or, parts) if parts else FalseF()


def neq(x: str, y: str) -> Formula:
    return Not(Eq(x, y))


def iff(left: Formula, right: Formula) -> Formula:
    return Iff(left, right)


def exactly_distance(x: str, y: str, r: int) -> Formula:
    """dist(x,y) = r expressed with DistLE."""
    if r == 0:
        return DistLE(x, y, 0)
    return And(DistLE(x, y, r), Not(DistLE(x, y, r - 1)))


# ============================================================================
# PARSER
# ============================================================================

GRAMMAR = r"""
    ?start: iff

    ?iff: implies
        | iff "<->" implies                        -> iff_

    ?implies: disj
        | disj "->" implies                        -> implies_

    ?disj: conj
        | disj "|" conj                            -> or_

    ?conj: unary
        | conj "&" unary                           -> and_

    ?unary: "!" unary                              -> not_
        | "exists" NAME unary                      -> exists_
        | "forall" NAME unary                      -> forall_
        | atom

    ?atom: "true"                                  -> true_
        | "false"                                  -> false_
        | "E" "(" NAME "," NAME ")"                -> edge_
        | "dist" "(" NAME "," NAME ")" "<=" INT    -> dist_
        | NAME "=" NAME                            -> eq_
        | NAME "(" NAME ")"                        -> pred_
        | "(" iff ")"

    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""


class _FormulaBuilder(Transformer):
    """Turns parse trees into Formula nodes while parsing."""

    def iff_(self, children):
        return Iff(children[0], children[1])

    def implies_(self, children):
        return Implies(children[0], children[1])

    def or_(self, children):
        return Or(children[0], children[1])

    def and_(self, children):
        return And(children[0], children[1])

    def not_(self, children):
        return Not(children[0])

    def exists_(self, children):
        return Exists(str(children[0]), children[1])

    def forall_(self, children):
        return Forall(str(children[0]), children[1])

    def true_(self, children):
        return TrueF()

    def false_(self, children):
        return FalseF()

    def edge_(self, children):
        return Edge(str(children[0]), str(children[1]))

    def dist_(self, children):
        return DistLE(str(children[0]), str(children[1]), int(children[2]))

    def eq_(self, children):
        return Eq(str(children[0]), str(children[1]))

    def pred_(self, children):
        return Pred(str(children[0]), str(children[1]))


_PARSER = Lark(GRAMMAR, parser="lalr", transformer=_FormulaBuilder())


def _syntax_message(exc: UnexpectedInput, text: str) -> str:
    if isinstance(exc, UnexpectedEOF):
        return f"Formula {text!r} ends unexpectedly"
    if isinstance(exc, UnexpectedCharacters):
        return f"Unexpected character {text[exc.pos_in_stream]!r} in formula {text!r}"
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == "$END":
            return f"Formula {text!r} ends unexpectedly"
        previous = text[:exc.pos_in_stream].rstrip()
        if previous.endswith("<="):
            return f"Malformed distance bound {exc.token.value!r} in formula {text!r}"
        return f"Unexpected token {exc.token.value!r} in formula {text!r}"
    return f"Cannot parse formula {text!r}"


def parse_formula(text: str, free: Optional[Iterable[str]] = None) -> Formula:
    """
    Parse formula text into an AST.

    Args:
        text: Formula in the grammar of this module
        free: If given, the variables allowed to occur free; any other free
              variable is reported as unbound

    Returns:
        Formula

    Raises:
        FormulaSyntaxError: grammar violation (with line/column), malformed
            distance bound, unbound variable, or a quantifier re-binding a
            variable that is already bound on the path or free in the formula

    Examples:
        >>> parse_formula("dist(x,y) <= 2")
        DistLE(x='x', y='y', r=2)
    """
    try:
        phi = _PARSER.parse(text)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        if line is not None and line < 0:
            line = column = None
        raise FormulaSyntaxError(_syntax_message(exc, text), line=line, column=column, text=text) from None
    check_scoping(phi, free)
    return phi


def check_scoping(phi: Formula, free: Optional[Iterable[str]] = None) -> None:
    """Reject shadowing and (optionally) variables outside `free`."""
    outer_free = free_variables(phi)
    if free is not None:
        unbound = sorted(outer_free - set(free))
        if unbound:
            raise FormulaSyntaxError(f"Unbound variable(s) {unbound} in {formula_to_text(phi)!r}")

    stack: List[Tuple[Formula, FrozenSet[str]]] = [(phi, frozenset())]
    while stack:
        node, bound = stack.pop()
        if isinstance(node, _QUANTIFIERS):
            if node.var in bound:
                raise FormulaSyntaxError(f"Variable {node.var!r} is bound twice on one path")
            if node.var in outer_free:
                raise FormulaSyntaxError(f"Variable {node.var!r} is bound but also occurs free")
            stack.append((node.body, bound | {node.var}))
        elif isinstance(node, Not):
            stack.append((node.body, bound))
        elif isinstance(node, _BINARY):
            stack.append((node.left, bound))
            stack.append((node.right, bound))


# ============================================================================
# PRINTING
# ============================================================================

def formula_to_text(phi: Formula, top: bool = True) -> str:
    """Print in the grammar; parse_formula(formula_to_text(phi)) == phi."""
    if isinstance(phi, TrueF):
        return "true"
    if isinstance(phi, FalseF):
        return "false"
    if isinstance(phi, Edge):
        return f"E({phi.x},{phi.y})"
    if isinstance(phi, Eq):
        return f"{phi.x} = {phi.y}"
    if isinstance(phi, Pred):
        return f"{phi.name}({phi.x})"
    if isinstance(phi, DistLE):
        return f"dist({phi.x},{phi.y}) <= {phi.r}"
    if isinstance(phi, Not):
        return "!" + formula_to_text(phi.body, top=False)
    if isinstance(phi, Exists):
        return f"exists {phi.var} " + formula_to_text(phi.body, top=False)
    if isinstance(phi, Forall):
        return f"forall {phi.var} " + formula_to_text(phi.body, top=False)
    symbol = {And: "&", Or: "|", Implies: "->", Iff: "<->"}[type(phi)]
    text = f"{formula_to_text(phi.left, top=False)} {symbol} {formula_to_text(phi.right, top=False)}"
    return text if top else f"({text})"


# ============================================================================
# SYNTACTIC QUERIES
# ============================================================================

def free_variables(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, (TrueF, FalseF)):
        return frozenset()
    if isinstance(phi, (Edge, Eq, DistLE)):
        return frozenset((phi.x, phi.y))
    if isinstance(phi, Pred):
        return frozenset((phi.x,))
    if isinstance(phi, Not):
        return free_variables(phi.body)
    if isinstance(phi, _QUANTIFIERS):
        return free_variables(phi.body) - {phi.var}
    return free_variables(phi.left) | free_variables(phi.right)


def all_variables(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, (TrueF, FalseF)):
        return frozenset()
    if isinstance(phi, (Edge, Eq, DistLE)):
        return frozenset((phi.x, phi.y))
    if isinstance(phi, Pred):
        return frozenset((phi.x,))
    if isinstance(phi, Not):
        return all_variables(phi.body)
    if isinstance(phi, _QUANTIFIERS):
        return all_variables(phi.body) | {phi.var}
    return all_variables(phi.left) | all_variables(phi.right)


def predicate_names(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, Pred):
        return frozenset((phi.name,))
    if isinstance(phi, Not) or isinstance(phi, _QUANTIFIERS):
        return predicate_names(phi.body)
    if isinstance(phi, _BINARY):
        return predicate_names(phi.left) | predicate_names(phi.right)
    return frozenset()


def quantifier_rank(phi: Formula) -> int:
    """Nesting depth of exists/forall as written; dist atoms count 0."""
    if isinstance(phi, _ATOMS):
        return 0
    if isinstance(phi, Not):
        return quantifier_rank(phi.body)
    if isinstance(phi, _QUANTIFIERS):
        return 1 + quantifier_rank(phi.body)
    return max(quantifier_rank(phi.left), quantifier_rank(phi.right))


def _fresh_names(avoid: Iterable[str], prefix: str) -> Iterator[str]:
    taken = set(avoid)
    for i in itertools.count(1):
        name = f"{prefix}{i}"
        if name not in taken:
            taken.add(name)
            yield name


# ============================================================================
# REWRITING
# ============================================================================

def rename_free(phi: Formula, mapping: Mapping[str, str]) -> Formula:
    """Capture-avoiding renaming of free variables."""
    fresh = _fresh_names(set(all_variables(phi)) | set(mapping.values()) | set(mapping.keys()), "_v")

    def walk(node: Formula, m: Mapping[str, str]) -> Formula:
        if not m:
            return node
        if isinstance(node, (TrueF, FalseF)):
            return node
        if isinstance(node, Edge):
            return Edge(m.get(node.x, node.x), m.get(node.y, node.y))
        if isinstance(node, Eq):
            return Eq(m.get(node.x, node.x), m.get(node.y, node.y))
        if isinstance(node, DistLE):
            return DistLE(m.get(node.x, node.x), m.get(node.y, node.y), node.r)
        if isinstance(node, Pred):
            return Pred(node.name, m.get(node.x, node.x))
        if isinstance(node, Not):
            return Not(walk(node.body, m))
        if isinstance(node, _QUANTIFIERS):
            inner = {k: v for k, v in m.items() if k != node.var}
            var, body = node.var, node.body
            if var in inner.values():
                var = next(fresh)
                body = walk(body, {node.var: var})
            return type(node)(var, walk(body, inner))
        return type(node)(walk(node.left, m), walk(node.right, m))

    return walk(phi, dict(mapping))


def expand_distance(phi: Formula) -> Formula:
    """
    Replace every dist(x,y) <= r by the pure first-order formula

        x = y | E(x,y) | exists z1 (E(x,z1) & (z1 = y | E(z1,y) | ...))

    with r-1 nested existentials and fresh variable names. Used as an oracle
    for the distance atom.
    """
    fresh = _fresh_names(all_variables(phi), "_d")

    def delta(x: str, y: str, r: int) -> Formula:
        if r == 0:
            return Eq(x, y)
        if r == 1:
            return Or(Eq(x, y), Edge(x, y))
        z = next(fresh)
        return Or(Eq(x, y), Or(Edge(x, y), Exists(z, And(Edge(x, z), delta(z, y, r - 1)))))

    def walk(node: Formula) -> Formula:
        if isinstance(node, DistLE):
            return delta(node.x, node.y, node.r)
        if isinstance(node, _ATOMS):
            return node
        if isinstance(node, Not):
            return Not(walk(node.body))
        if isinstance(node, _QUANTIFIERS):
            return type(node)(node.var, walk(node.body))
        return type(node)(walk(node.left), walk(node.right))

    return walk(phi)


def push_negations(phi: Formula) -> Formula:
    """Negation normal form: -> and <-> eliminated, ! only on atoms."""

    def pos(node: Formula) -> Formula:
        if isinstance(node, _ATOMS):
            return node
        if isinstance(node, Not):
            return neg(node.body)
        if isinstance(node, And):
            return And(pos(node.left), pos(node.right))
        if isinstance(node, Or):
            return Or(pos(node.left), pos(node.right))
        if isinstance(node, Implies):
            return Or(neg(node.left), pos(node.right))
        if isinstance(node, Iff):
            return Or(And(pos(node.left), pos(node.right)), And(neg(node.left), neg(node.right)))
        return type(node)(node.var, pos(node.body))

    def neg(node: Formula) -> Formula:
        if isinstance(node, TrueF):
            return FalseF()
        if isinstance(node, FalseF):
            return TrueF()
        if isinstance(node, _ATOMS):
            return Not(node)
        if isinstance(node, Not):
            return pos(node.body)
        if isinstance(node, And):
            return Or(neg(node.left), neg(node.right))
        if isinstance(node, Or):
            return And(neg(node.left), neg(node.right))
        if isinstance(node, Implies):
            return And(pos(node.left), neg(node.right))
        if isinstance(node, Iff):
            return Or(And(pos(node.left), neg(node.right)), And(neg(node.left), pos(node.right)))
        if isinstance(node, Exists):
            return Forall(node.var, neg(node.body))
        return Exists(node.var, neg(node.body))

    return pos(phi)


def relativize(phi: Formula, domain: Formula, edge: Formula,
               domain_var: str = "x", edge_vars: Tuple[str, str] = ("x", "y")) -> Formula:
    """
    Restrict quantifiers to `domain` and read E through `edge`.

    `domain` is a template in `domain_var`, `edge` a template in `edge_vars`.
    Distance atoms are expanded first so they follow the new edge relation.
    Free variables are not restricted; callers guard them.
    """
    def walk(node: Formula) -> Formula:
        if isinstance(node, Edge):
            return rename_free(edge, {edge_vars[0]: node.x, edge_vars[1]: node.y})
        if isinstance(node, _ATOMS):
            return node
        if isinstance(node, Not):
            return Not(walk(node.body))
        if isinstance(node, Exists):
            return Exists(node.var, And(rename_free(domain, {domain_var: node.var}), walk(node.body)))
        if isinstance(node, Forall):
            return Forall(node.var, Implies(rename_free(domain, {domain_var: node.var}), walk(node.body)))
        return type(node)(walk(node.left), walk(node.right))

    return walk(expand_distance(phi))


def t_localize(phi: Formula, t: int) -> Formula:
    """
    Relativize every quantifier of phi(x) to the radius-t ball around x.

    exists z theta  ->  exists z (dist(x,z) <= t & theta^)
    forall z theta  ->  forall z (dist(x,z) <= t -> theta^)

    Boolean connectives commute with the operator; quantifier-free formulas
    are returned unchanged.

    Raises:
        FormulaSyntaxError: unless phi has exactly one free variable
    """
    if t < 0:
        raise FormulaSyntaxError(f"Localization radius must be non-negative, got {t}")
    fv = free_variables(phi)
    if len(fv) != 1:
        raise FormulaSyntaxError(
            f"t-localization needs exactly one free variable, got {sorted(fv)}"
        )
    (x,) = fv

    def walk(node: Formula) -> Formula:
        if isinstance(node, _ATOMS):
            return node
        if isinstance(node, Not):
            return Not(walk(node.body))
        if isinstance(node, _QUANTIFIERS):
            if node.var == x:
                raise FormulaSyntaxError(f"Variable {x!r} is both free and bound")
            guard = DistLE(x, node.var, t)
            if isinstance(node, Exists):
                return Exists(node.var, And(guard, walk(node.body)))
            return Forall(node.var, Implies(guard, walk(node.body)))
        return type(node)(walk(node.left), walk(node.right))

    return walk(phi)


# ============================================================================
# EVALUATION
# ============================================================================

class _Context:
    """Per-graph data shared by every compiled node."""

    __slots__ = ("graph", "n", "adj", "colors")

    def __init__(self, G: AnyGraph):
        self.graph = G
        self.n = G.n
        self.adj = G.adjacency
        self.colors = G.colors

    @property
    def dist(self):
        return self.graph.distance_matrix


_EMPTY: FrozenSet[int] = frozenset()
Compiled = Callable[[_Context, Dict[str, int]], bool]
Domain = Callable[[_Context, Dict[str, int]], Iterable[int]]


def _flatten(node: Formula, kind) -> List[Formula]:
    out, stack = [], [node]
    while stack:
        cur = stack.pop()
        if isinstance(cur, kind):
            stack.append(cur.right)
            stack.append(cur.left)
        else:
            out.append(cur)
    return out


def _quantifier_domain(var: str, guards: List[Formula]) -> Domain:
    """
    Candidate values for a bound variable, read off guarding conjuncts.

    Only vertices satisfying every guard can make the body true (exists) or
    the antecedent true (forall), so restricting to them is exact.
    """
    def other(atom) -> Optional[str]:
        if atom.x == var and atom.y != var:
            return atom.y
        if atom.y == var and atom.x != var:
            return atom.x
        return None

    for g in guards:
        if isinstance(g, Eq) and other(g) is not None:
            w = other(g)
            return lambda ctx, env: (env[w],)
    for g in guards:
        if isinstance(g, Edge) and other(g) is not None:
            w = other(g)
            return lambda ctx, env: ctx.adj[env[w]]
    for g in guards:
        if isinstance(g, Pred) and g.x == var:
            name = g.name
            return lambda ctx, env: ctx.colors.get(name, _EMPTY)
    for g in guards:
        if isinstance(g, DistLE) and other(g) is not None:
            w, r = other(g), g.r

            def within(ctx, env, w=w, r=r):
                row = ctx.dist[env[w]]
                return [v for v in range(ctx.n) if row[v] <= r]
            return within
    return lambda ctx, env: range(ctx.n)


def _compile(node: Formula) -> Compiled:
    if isinstance(node, TrueF):
        return lambda ctx, env: True
    if isinstance(node, FalseF):
        return lambda ctx, env: False
    if isinstance(node, Edge):
        x, y = node.x, node.y
        return lambda ctx, env: env[y] in ctx.adj[env[x]]
    if isinstance(node, Eq):
        x, y = node.x, node.y
        return lambda ctx, env: env[x] == env[y]
    if isinstance(node, Pred):
        name, x = node.name, node.x
        return lambda ctx, env: env[x] in ctx.colors.get(name, _EMPTY)
    if isinstance(node, DistLE):
        x, y, r = node.x, node.y, node.r
        return lambda ctx, env: ctx.dist[env[x]][env[y]] <= r
    if isinstance(node, Not):
        body = _compile(node.body)
        return lambda ctx, env: not body(ctx, env)
    if isinstance(node, And):
        parts = [_compile(p) for p in _flatten(node, And)]
        return lambda ctx, env: all(p(ctx, env) for p in parts)
    if isinstance(node, Or):
        parts = [_compile(p) for p in _flatten(node, Or)]
        return lambda ctx, env: any(p(ctx, env) for p in parts)
    if isinstance(node, Implies):
        left, right = _compile(node.left), _compile(node.right)
        return lambda ctx, env: (not left(ctx, env)) or right(ctx, env)
    if isinstance(node, Iff):
        left, right = _compile(node.left), _compile(node.right)
        return lambda ctx, env: left(ctx, env) == right(ctx, env)

    var = node.var
    body = _compile(node.body)
    if isinstance(node, Exists):
        domain = _quantifier_domain(var, _flatten(node.body, And))
        want = True
    else:
        antecedent = _flatten(node.body.left, And) if isinstance(node.body, Implies) else []
        domain = _quantifier_domain(var, antecedent)
        want = False

    def quantify(ctx, env):
        saved = env.get(var)
        try:
            for w in domain(ctx, env):
                env[var] = w
                if bool(body(ctx, env)) == want:
                    return want
            return not want
        finally:
            if saved is None:
                env.pop(var, None)
            else:
                env[var] = saved

    return quantify


@dataclass(frozen=True)
class CompiledFormula:
    """A formula compiled once into closures, reusable across graphs."""

    formula: Formula
    free: FrozenSet[str]
    _run: Compiled

    def holds(self, G: AnyGraph, assignment: Assignment) -> bool:
        missing = sorted(self.free - set(assignment))
        if missing:
            raise EvaluationError(
                f"No vertex assigned to free variable(s) {missing} of {formula_to_text(self.formula)!r}"
            )
        env = {}
        for name in self.free:
            v = assignment[name]
            if not 0 <= v < G.n:
                raise EvaluationError(f"Variable {name!r} assigned to {v}, outside 0..{G.n - 1}")
            env[name] = v
        return bool(self._run(_Context(G), env))

    def bind(self, G: AnyGraph) -> Callable[..., bool]:
        """Unchecked evaluator on G taking the assignment as keywords."""
        ctx, run = _Context(G), self._run
        return lambda **env: bool(run(ctx, env))

    def satisfying(self, G: AnyGraph, variables: Sequence[str]) -> Iterator[Tuple[int, ...]]:
        """All tuples over V(G) (in `variables` order) satisfying the formula."""
        ctx = _Context(G)
        for values in itertools.product(range(G.n), repeat=len(variables)):
            if self._run(ctx, dict(zip(variables, values))):
                yield values


@lru_cache(maxsize=512)
def compile_formula(phi: Formula) -> CompiledFormula:
    return CompiledFormula(phi, free_variables(phi), _compile(phi))


def evaluate(G: AnyGraph, phi: Formula, a: Assignment) -> bool:
    """
    Decide G |= phi[a] by enumeration.

    Quantifiers range over all of V(G); dist(x,y) <= r holds iff the BFS
    distance is at most r (never across components).

    Raises:
        EvaluationError: when `a` misses a free variable of phi

    Examples:
        >>> from transductions.graph_core import path_graph
        >>> evaluate(path_graph(3), parse_formula("exists z (E(x,z) & E(y,z))"), {"x": 0, "y": 2})
        True
    """
    return compile_formula(phi).holds(G, a)


# ============================================================================
# SEMANTIC LOCALITY
# ============================================================================

@dataclass(frozen=True)
class LocalityReport:
    """Outcome of a locality check; the counterexample is the first failure."""

    ok: bool
    graph_index: Optional[int] = None
    tuple: Optional[Tuple[int, ...]] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _ordered_free(phi: Formula) -> List[str]:
    return sorted(free_variables(phi))


def check_r_local(phi: Formula, family: Sequence[AnyGraph], r: int) -> LocalityReport:
    """
    Check G |= phi(v) <=> B_r(v) |= phi(v) for every tuple of every graph.

    Free variables are taken in sorted order. A sentence is compared against
    the empty graph.
    """
    compiled = compile_formula(phi)
    variables = _ordered_free(phi)
    for index, G in enumerate(family):
        for values in itertools.product(range(G.n), repeat=len(variables)):
            in_graph = compiled.holds(G, dict(zip(variables, values)))
            if values:
                B, origin = ball(G, set(values), r)
            else:
                B, origin = induced_subgraph(G, ())
            position = {v: i for i, v in enumerate(origin)}
            in_ball = compiled.holds(B, {name: position[v] for name, v in zip(variables, values)})
            if in_graph != in_ball:
                logger.debug("phi not %d-local on graph %d at %s", r, index, values)
                return LocalityReport(False, index, values, "graph and ball disagree")
    return LocalityReport(True)


def check_strongly_local(phi: Formula, family: Sequence[AnyGraph], r: int) -> LocalityReport:
    """r-local and every satisfying tuple pairwise within distance r."""
    report = check_r_local(phi, family, r)
    if not report:
        return report
    compiled = compile_formula(phi)
    variables = _ordered_free(phi)
    for index, G in enumerate(family):
        dist = G.distance_matrix
        for values in compiled.satisfying(G, variables):
            for u, v in itertools.combinations(values, 2):
                if dist[u][v] > r:
                    return LocalityReport(False, index, values, "satisfying tuple not within distance r")
    return LocalityReport(True)
