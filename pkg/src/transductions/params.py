"""
TRANSDUCTIONS - Exact Graph Parameters
======================================

Exponential-time exact algorithms for desk-scale graphs. Every width
parameter refuses graphs above its vertex cap (BudgetExceededError) instead
of falling back to a heuristic.

Functions:
    - pathwidth, vertex_separation_order: subset DP over vertex-separation orderings
    - treewidth: subset DP over elimination orderings
    - treedepth: memoized recursion over components
    - bandwidth: layout backtracking with window pruning
    - star_chromatic_number, is_star_coloring: backtracking, bicolored P4 check
    - basic_params: clique number, max degree, girth, degeneracy, components
    - dilation_profile: largest radius-r ball over a family
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import GraphError
from .graph_core import INF, AnyGraph, connected_components, distances_from, max_degree, to_networkx
from .limits import require_size

logger = logging.getLogger(__name__)


def _neighbour_masks(G: AnyGraph) -> List[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _members(mask: int) -> List[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


# ============================================================================
# PATHWIDTH
# ============================================================================

def vertex_separation_order(G: AnyGraph) -> Tuple[int, List[int]]:
    """
    Minimum vertex separation and an ordering achieving it.

    The cost of a prefix S is the number of vertices of S with a neighbour
    outside S; the width of an ordering is its largest prefix cost. Vertex
    separation number equals pathwidth.

    Returns:
        Tuple of (pathwidth, ordering of all vertices)
    """
    require_size(G.n, "MAX_PATHWIDTH_VERTICES", "pathwidth")
    nbr = _neighbour_masks(G)
    full = (1 << G.n) - 1

    def boundary(S: int) -> int:
        return sum(1 for u in _members(S) if nbr[u] & ~S & full)

    @lru_cache(maxsize=None)
    def best(S: int) -> Tuple[int, int]:
        if S == 0:
            return 0, -1
        choice, value = -1, None
        for v in _members(S):
            cand = best(S & ~(1 << v))[0]
            if value is None or cand < value:
                value, choice = cand, v
        return max(value, boundary(S)), choice

    width = best(full)[0]
    order: List[int] = []
    S = full
    while S:
        v = best(S)[1]
        order.append(v)
        S &= ~(1 << v)
    order.reverse()
    return width, order


def pathwidth(G: AnyGraph) -> int:
    """
    Exact pathwidth.

    Examples:
        >>> from transductions.graph_core import complete_graph
        >>> pathwidth(complete_graph(4))
        3
    """
    return vertex_separation_order(G)[0]


# ============================================================================
# TREEWIDTH
# ============================================================================

def treewidth(G: AnyGraph) -> int:
    """
    Exact treewidth by the elimination-ordering recurrence

        TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)

    where Q(S, v) is the set of vertices outside S + v reachable from v
    through S.
    """
    require_size(G.n, "MAX_TREEWIDTH_VERTICES", "treewidth")
    if G.n == 0:
        return 0
    nbr = _neighbour_masks(G)

    def q_size(S: int, v: int) -> int:
        seen, frontier, reached = 1 << v, [v], 0
        while frontier:
            u = frontier.pop()
            for w in _members(nbr[u] & ~seen):
                seen |= 1 << w
                if S >> w & 1:
                    frontier.append(w)
                else:
                    reached |= 1 << w
        return bin(reached).count("1")

    @lru_cache(maxsize=None)
    def tw(S: int) -> int:
        if S == 0:
            return -1
        return min(max(tw(S & ~(1 << v)), q_size(S & ~(1 << v), v)) for v in _members(S))

    return max(tw((1 << G.n) - 1), 0)


# ============================================================================
# TREEDEPTH
# ============================================================================

def treedepth(G: AnyGraph) -> int:
    """Exact treedepth; the graph with no vertex has treedepth 0."""
    require_size(G.n, "MAX_TREEDEPTH_VERTICES", "treedepth")
    nbr = _neighbour_masks(G)

    def components(S: int) -> List[int]:
        comps, rest = [], S
        while rest:
            start = rest & -rest
            comp, frontier = start, start
            while frontier:
                grow = 0
                for u in _members(frontier):
                    grow |= nbr[u]
                frontier = grow & S & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    @lru_cache(maxsize=None)
    def td(S: int) -> int:
        if S == 0:
            return 0
        comps = components(S)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        if S & (S - 1) == 0:
            return 1
        return 1 + min(td(S & ~(1 << v)) for v in _members(S))

    return td((1 << G.n) - 1)


# ============================================================================
# BANDWIDTH
# ============================================================================

def bandwidth(G: AnyGraph) -> int:
    """Minimum over layouts of the longest edge stretch; 0 without edges."""
    require_size(G.n, "MAX_BANDWIDTH_VERTICES", "bandwidth")
    if not G.edges:
        return 0
    adj = G.adjacency
    lower = max(1, (max_degree(G) + 1) // 2)
    for b in range(lower, G.n):
        if _layout_exists(G.n, adj, b):
            return b
    return G.n - 1


def _layout_exists(n: int, adj, b: int) -> bool:
    position: Dict[int, int] = {}
    layout: List[int] = []

    def place(p: int) -> bool:
        if p == n:
            return True
        # the vertex leaving the window must be finished
        if p - b - 1 >= 0:
            leaving = layout[p - b - 1]
            if any(w not in position for w in adj[leaving]):
                return False
        for v in range(n):
            if v in position:
                continue
            if any(w in position and p - position[w] > b for w in adj[v]):
                continue
            position[v] = p
            layout.append(v)
            if place(p + 1):
                return True
            layout.pop()
            del position[v]
        return False

    return place(0)


# ============================================================================
# STAR COLORING
# ============================================================================

def is_star_coloring(G: AnyGraph, coloring: Mapping[int, Hashable]) -> Optional[Tuple[int, ...]]:
    """
    None when `coloring` is a star coloring, else the offending vertices:
    a monochromatic edge (u, v) or a bicolored path (a, b, c, d).
    """
    missing = [v for v in range(G.n) if v not in coloring]
    if missing:
        raise GraphError(f"Coloring leaves vertices {missing} uncolored")
    for u, v in sorted(G.edges):
        if coloring[u] == coloring[v]:
            return (u, v)
    for v in range(G.n):
        path = _bicolored_p4_through(v, coloring, G.adjacency)
        if path:
            return path
    return None


def _bicolored_p4_through(v: int, color: Mapping[int, Hashable], adj) -> Optional[Tuple[int, ...]]:
    """A bicolored P4 among colored vertices having v as an end or an inner vertex."""
    cv = color[v]
    # v as an end: v - a - b - d
    for a in adj[v]:
        if a not in color:
            continue
        for b in adj[a]:
            if b == v or color.get(b) != cv:
                continue
            for d in adj[b]:
                if d not in (v, a) and color.get(d) == color[a]:
                    return (v, a, b, d)
    # v as an inner vertex: a - v - b - d
    for a in adj[v]:
        for b in adj[v]:
            if a == b or a not in color or b not in color or color[a] != color[b]:
                continue
            for d in adj[b]:
                if d not in (v, a) and color.get(d) == cv:
                    return (a, v, b, d)
    return None


def star_chromatic_number(G: AnyGraph) -> Tuple[int, Dict[int, int]]:
    """
    Least number of colors of a proper coloring without bicolored P4.

    Returns:
        Tuple of (number of colors, coloring vertex -> 0..k-1)
    """
    require_size(G.n, "MAX_STAR_COLORING_VERTICES", "star chromatic number")
    if G.n == 0:
        return 0, {}
    adj = G.adjacency
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))

    def attempt(k: int) -> Optional[Dict[int, int]]:
        color: Dict[int, int] = {}

        def extend(i: int, used: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for c in range(min(used + 1, k)):
                if any(color.get(w) == c for w in adj[v]):
                    continue
                color[v] = c
                if _bicolored_p4_through(v, color, adj) is None and extend(i + 1, max(used, c + 1)):
                    return True
                del color[v]
            return False

        return dict(color) if extend(0, 0) else None

    for k in range(1, G.n + 1):
        found = attempt(k)
        if found is not None:
            logger.debug("star coloring with %d colors found", k)
            return k, found
    raise AssertionError("a graph always has a star coloring with n colors")


# ============================================================================
# BASIC PARAMETERS AND DILATION
# ============================================================================

@dataclass(frozen=True)
class BasicParams:
    omega: int
    max_degree: int
    girth: float
    degeneracy: int
    component_sizes: Tuple[int, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "omega": self.omega,
            "max_degree": self.max_degree,
            "girth": "inf" if self.girth == INF else int(self.girth),
            "degeneracy": self.degeneracy,
            "component_sizes": list(self.component_sizes),
        }


def basic_params(G: AnyGraph) -> BasicParams:
    """
    Clique number, maximum degree, girth (INF for forests), degeneracy and
    component sizes in decreasing order.

    Examples:
        >>> from transductions.graph_core import cycle_graph
        >>> basic_params(cycle_graph(5)).to_dict()["girth"]
        5
    """
    g = to_networkx(G)
    omega = max((len(c) for c in nx.find_cliques(g)), default=0)
    girth = nx.girth(g) if G.n else INF
    degeneracy = max(nx.core_number(g).values(), default=0)
    sizes = tuple(sorted((len(c) for c in connected_components(G)), reverse=True))
    return BasicParams(omega, max_degree(G), INF if girth == INF else int(girth), degeneracy, sizes)


def dilation_profile(family: Sequence[AnyGraph], rmax: int) -> Dict[int, int]:
    """r -> largest |B_r(v)| over every graph and vertex of the family, r = 0..rmax."""
    profile = {r: 0 for r in range(rmax + 1)}
    for G in family:
        for v in range(G.n):
            dist = distances_from(G, (v,))
            for r in range(rmax + 1):
                size = sum(1 for d in dist if d <= r)
                if size > profile[r]:
                    profile[r] = size
    return profile
