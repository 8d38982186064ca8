"""
TRANSDUCTIONS - Perturbations
=============================

Subset complementations, perturbation sequences, and the dual view of a
sequence Z_1..Z_k as a partition (V_x) indexed by bit vectors x in F_2^k:
applying the sequence flips exactly the pairs uv with u in V_x, v in V_y
and <x, y> = 1 over F_2.

Bit vectors are written as strings, little-endian over the sequence order:
character i is '1' iff the vertex belongs to Z_{i+1}.

Functions:
    - subset_complement, apply_sequence
    - sets_to_partition, partition_to_sets, apply_partition_flip
    - perturbation_to_json / perturbation_from_json
    - partition_to_json / partition_from_json
"""

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from .errors import PerturbationError
from .graph_core import AnyGraph, rebuild_like

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Perturbation:
    """An ordered sequence Z_1..Z_k of vertex subsets of a host with n vertices."""

    sets: Tuple[FrozenSet[int], ...]
    n: int

    def __post_init__(self):
        normalized = tuple(frozenset(int(v) for v in Z) for Z in self.sets)
        for i, Z in enumerate(normalized, start=1):
            bad = sorted(v for v in Z if not 0 <= v < self.n)
            if bad:
                raise PerturbationError(f"Z_{i} contains vertices outside 0..{self.n - 1}: {bad}")
        object.__setattr__(self, "sets", normalized)

    @property
    def k(self) -> int:
        return len(self.sets)

    def reversed(self) -> "Perturbation":
        return Perturbation(tuple(reversed(self.sets)), self.n)


@dataclass(frozen=True)
class FlipPartition:
    """Partition of 0..n-1 into parts V_x keyed by k-bit strings."""

    parts: Mapping[str, FrozenSet[int]]
    k: int
    n: int

    def __post_init__(self):
        normalized: Dict[str, FrozenSet[int]] = {}
        seen: Dict[int, str] = {}
        for key, members in sorted(self.parts.items()):
            if len(key) != self.k or set(key) - {"0", "1"}:
                raise PerturbationError(f"Part key {key!r} is not a {self.k}-bit string")
            members = frozenset(int(v) for v in members)
            for v in members:
                if not 0 <= v < self.n:
                    raise PerturbationError(f"Part {key!r} contains vertex {v} outside 0..{self.n - 1}")
                if v in seen:
                    raise PerturbationError(f"Not a partition: vertex {v} lies in parts {seen[v]!r} and {key!r}")
                seen[v] = key
            normalized[key] = members
        missing = sorted(set(range(self.n)) - set(seen))
        if missing:
            raise PerturbationError(f"Not a partition: vertices {missing} lie in no part")
        object.__setattr__(self, "parts", MappingProxyType(normalized))

    def __hash__(self):
        return hash((tuple(self.parts.items()), self.k, self.n))


def _as_perturbation(P: Union[Perturbation, Sequence[Iterable[int]]], n: int) -> Perturbation:
    if isinstance(P, Perturbation):
        if P.n != n:
            raise PerturbationError(f"Perturbation is for {P.n} vertices, graph has {n}")
        return P
    return Perturbation(tuple(frozenset(Z) for Z in P), n)


def _flip(edges: set, pairs: Iterable[Tuple[int, int]]) -> None:
    for u, v in pairs:
        pair = (u, v) if u < v else (v, u)
        if pair in edges:
            edges.remove(pair)
        else:
            edges.add(pair)


def subset_complement(G: AnyGraph, Z: Iterable[int]) -> AnyGraph:
    """
    Complement the adjacency inside Z; everything else is unchanged.

    Examples:
        >>> from transductions.graph_core import path_graph
        >>> subset_complement(path_graph(3), {0, 1, 2}).edge_list()
        [(0, 2)]
    """
    Z = sorted(_as_perturbation([Z], G.n).sets[0])
    edges = set(G.edges)
    _flip(edges, ((Z[i], Z[j]) for i in range(len(Z)) for j in range(i + 1, len(Z))))
    return rebuild_like((G,), G.n, edges, G.colors)


def apply_sequence(G: AnyGraph, P: Union[Perturbation, Sequence[Iterable[int]]]) -> AnyGraph:
    """Apply Z_1, ..., Z_k left to right."""
    P = _as_perturbation(P, G.n)
    for Z in P.sets:
        G = subset_complement(G, Z)
    return G


def bit_key(v: int, P: Perturbation) -> str:
    """Little-endian membership vector of v."""
    return "".join("1" if v in Z else "0" for Z in P.sets)


def sets_to_partition(P: Union[Perturbation, Sequence[Iterable[int]]], n: int) -> FlipPartition:
    """
    V_x = {v : v in Z_i <=> x_i = 1}. Only nonempty parts are stored.

    Examples:
        >>> sorted(sets_to_partition([{0, 1}, {1}], 3).parts.items())
        [('00', frozenset({2})), ('10', frozenset({0})), ('11', frozenset({1}))]
    """
    P = _as_perturbation(P, n)
    parts: Dict[str, set] = {}
    for v in range(n):
        parts.setdefault(bit_key(v, P), set()).add(v)
    return FlipPartition({key: frozenset(members) for key, members in parts.items()}, P.k, n)


def partition_to_sets(Q: FlipPartition) -> Perturbation:
    """Z_i = union of the parts V_x with x_i = 1."""
    sets = []
    for i in range(Q.k):
        sets.append(frozenset(v for key, members in Q.parts.items() if key[i] == "1" for v in members))
    return Perturbation(tuple(sets), Q.n)


def apply_partition_flip(G: AnyGraph, Q: FlipPartition) -> AnyGraph:
    """
    Flip the pairs uv (u != v) with u in V_x, v in V_y and <x, y> = 1 mod 2.

    Pair classes are visited once each (x <= y in key order), so no
    unordered pair is flipped twice.

    Raises:
        PerturbationError: if Q is not a partition of V(G)
    """
    if Q.n != G.n:
        raise PerturbationError(f"Partition covers {Q.n} vertices, graph has {G.n}")
    keys = sorted(Q.parts)
    edges = set(G.edges)
    if not keys or Q.k == 0:
        return rebuild_like((G,), G.n, edges, G.colors)
    vectors = np.array([[int(bit) for bit in key] for key in keys], dtype=np.int64)
    gram = (vectors @ vectors.T) % 2
    for a, x in enumerate(keys):
        for b in range(a, len(keys)):
            if not gram[a, b]:
                continue
            Vx, Vy = sorted(Q.parts[x]), sorted(Q.parts[keys[b]])
            if a == b:
                pairs = [(Vx[i], Vx[j]) for i in range(len(Vx)) for j in range(i + 1, len(Vx))]
            else:
                pairs = [(u, v) for u in Vx for v in Vy]
            logger.debug("flipping %d pairs between parts %s and %s", len(pairs), x, keys[b])
            _flip(edges, pairs)
    return rebuild_like((G,), G.n, edges, G.colors)


# ============================================================================
# JSON
# ============================================================================

def perturbation_to_json(P: Perturbation) -> Dict[str, List[List[int]]]:
    return {"sets": [sorted(Z) for Z in P.sets]}


def perturbation_from_json(data: Mapping, n: int) -> Perturbation:
    if "sets" not in data:
        raise PerturbationError("Perturbation JSON needs a 'sets' field")
    return Perturbation(tuple(frozenset(Z) for Z in data["sets"]), n)


def partition_to_json(Q: FlipPartition) -> Dict[str, Dict[str, List[int]]]:
    return {"parts": {key: sorted(members) for key, members in sorted(Q.parts.items())}}


def partition_from_json(data: Mapping, n: int) -> FlipPartition:
    if "parts" not in data:
        raise PerturbationError("Partition JSON needs a 'parts' field")
    keys = list(data["parts"])
    lengths = {len(key) for key in keys}
    if len(lengths) > 1:
        raise PerturbationError(f"Part keys have inconsistent lengths {sorted(lengths)}")
    k = lengths.pop() if lengths else 0
    return FlipPartition({key: frozenset(v) for key, v in data["parts"].items()}, k, n)
