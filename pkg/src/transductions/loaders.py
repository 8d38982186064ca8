"""
TRANSDUCTIONS - Loaders
=======================

JSON and DOT serialisation of graphs. Output is normalised (sorted ids and
edges, fixed key order) so a dump round-trips byte for byte.

Graph JSON:
    {"n": 3, "edges": [[0, 1], [1, 2]], "colors": {"M": [0]}}

"colors" is optional; a graph read without it is a plain Graph.

Functions:
    - graph_to_json, graph_from_json
    - graph_to_dot
    - load_json, load_graph, save_json, dumps
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from .errors import GraphError
from .graph_core import AnyGraph, ColoredGraph, Graph, build_graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def graph_to_json(G: AnyGraph) -> Dict[str, Any]:
    data: Dict[str, Any] = {"n": G.n, "edges": [list(e) for e in G.edge_list()]}
    if isinstance(G, ColoredGraph):
        data["colors"] = {name: sorted(members) for name, members in G.colors.items()}
    return data


def graph_from_json(data: Mapping[str, Any]) -> AnyGraph:
    """
    Inverse of graph_to_json.

    Raises:
        GraphError: missing fields or malformed edges and colors
    """
    if not isinstance(data, Mapping) or "n" not in data:
        raise GraphError("Graph JSON must be an object with an 'n' field")
    try:
        graph = build_graph(int(data["n"]), [tuple(e) for e in data.get("edges", [])])
    except TypeError as exc:
        raise GraphError(f"Malformed edge list: {exc}") from None
    if "colors" not in data:
        return graph
    colors = data["colors"]
    if not isinstance(colors, Mapping):
        raise GraphError("'colors' must map color names to vertex lists")
    return ColoredGraph(graph, {name: frozenset(members) for name, members in colors.items()})


def graph_to_dot(G: AnyGraph, name: str = "G") -> str:
    """Undirected DOT; colors become a node attribute."""
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        colors = sorted(G.color_set(v))
        if colors:
            lines.append(f'  {v} [colors="{",".join(colors)}"];')
        else:
            lines.append(f"  {v};")
    for u, v in G.edge_list():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_graph(path: PathLike) -> AnyGraph:
    logger.debug("loading graph from %s", path)
    return graph_from_json(load_json(path))


def save_json(obj: Any, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(dumps(obj))
    return path
