"""
TRANSDUCTIONS - Phase 09: Bounded Components and Cubic Hosts

Two encodings built around a fixed template:

    1. Bounded components. A graph whose components have at most 3
       vertices is the image of an edgeless graph: copy each vertex 3
       times and let marks name which connected 3-vertex graph each clone
       clique becomes. Checked on every such graph with <= max_vertices
       vertices, and with a perturbation applied on top for a sample.
    2. Cubic hosts. A graph of maximum degree <= D embeds in a cubic graph
       whose distances between gadget roots reproduce its edges. Checked
       for cubicity, the root distance condition and the transduction back.

Usage:
    python src/phases/09_components_cubic.py

Output:
    - outputs/phase09/components_results.csv
    - outputs/phase09/components_summary.json
"""

import itertools
import sys
from pathlib import Path

# ============================================================================
# PATH SETUP
# ============================================================================

_SCRIPT_DIR = Path(__file__).parent.resolve()
_SRC_DIR = _SCRIPT_DIR.parent
if str(_SRC_DIR) not in sys.path:
    sys.path.insert(0, str(_SRC_DIR))

# ============================================================================
# CONFIGURATION
# ============================================================================

try:
    from config import OUTPUT_FILES, ensure_phase_dir

    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase09"
    OUTPUT_FILES = {
        'components_results': _OUTPUT_DIR / "components_results.csv",
        'components_summary': _OUTPUT_DIR / "components_summary.json",
    }

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from tqdm import tqdm

from transductions import (
    Graph,
    Perturbation,
    TransductionError,
    complete_graph,
    cycle_graph,
    disjoint_union,
    encode_bounded_components,
    encode_cubic,
    path_graph,
    star_graph,
)
from utils import CheckLog, print_banner, print_step, print_verdict, save_phase_report

COMPONENT_ORDER = 3
MAX_VERTICES = 9
PERTURB_EVERY = 10

# connected graphs on <= 3 vertices
COMPONENT_TYPES = {
    "K1": complete_graph(1),
    "K2": complete_graph(2),
    "P3": path_graph(3),
    "K3": complete_graph(3),
}

CUBIC_INSTANCES = {
    "P2": path_graph(2),
    "P3": path_graph(3),
    "P5": path_graph(5),
    "C3": cycle_graph(3),
    "C5": cycle_graph(5),
    "2K2": disjoint_union(complete_graph(2), complete_graph(2))[0],
    "K4": complete_graph(4),
    "K1,3": star_graph(3),
}


def component_graphs(max_vertices: int):
    """(label, graph) for every multiset of component types with 1..max_vertices vertices."""
    names = list(COMPONENT_TYPES)
    sizes = {name: COMPONENT_TYPES[name].n for name in names}
    for count in range(1, max_vertices + 1):
        for combo in itertools.combinations_with_replacement(names, count):
            if sum(sizes[name] for name in combo) > max_vertices:
                continue
            G = Graph(0)
            for name in combo:
                G = disjoint_union(G, COMPONENT_TYPES[name])[0]
            yield "+".join(combo), G


def check_components(log: CheckLog) -> None:
    instances = list(component_graphs(MAX_VERTICES))
    for index, (label, G) in enumerate(tqdm(instances, desc="Component graphs", unit="graph")):
        try:
            artifact = encode_bounded_components(G, COMPONENT_ORDER)
            log.record("bounded_components", label, True, n=G.n, host_vertices=artifact.host.n)
        except TransductionError as e:
            log.record("bounded_components", label, False, str(e), n=G.n)
        if index % PERTURB_EVERY == 0 and G.n >= 2:
            P = Perturbation((frozenset({0, G.n - 1}), frozenset(range(0, G.n, 2))), G.n)
            try:
                encode_bounded_components(G, COMPONENT_ORDER, perturbation=P)
                log.record("bounded_components_perturbed", label, True, n=G.n)
            except TransductionError as e:
                log.record("bounded_components_perturbed", label, False, str(e), n=G.n)


def check_cubic(log: CheckLog) -> None:
    print(f"\n{'Graph':<6} {'D':>3} {'p':>3} {'Host':>6} {'Supergraph':>11}")
    print("-" * 33)
    for label, G in CUBIC_INSTANCES.items():
        try:
            encoding = encode_cubic(G)
            encoding.verify()
        except TransductionError as e:
            log.record("cubic_host", label, False, str(e))
            continue
        log.record("cubic_host", label, True, n=G.n, p=encoding.p, host_vertices=encoding.host.n)
        try:
            artifact = encoding.artifact
            log.record("cubic_transduction", label, artifact.image().n == G.n)
        except TransductionError as e:
            log.record("cubic_transduction", label, False, str(e))
        print(f"{label:<6} {max(G.degree(v) for v in range(G.n)):>3} {encoding.p:>3} "
              f"{encoding.host.n:>6} {encoding.regular_supergraph.n:>11}")


def run_components_cubic() -> bool:
    print_banner("Phase 09: Bounded Components and Cubic Hosts", _USING_CONFIG)
    log = CheckLog("09")

    print_step(1, f"Graphs with components of <= {COMPONENT_ORDER} vertices, <= {MAX_VERTICES} vertices")
    check_components(log)

    print_step(2, "Cubic hosts")
    check_cubic(log)

    print_step(3, "Save report")
    ensure_phase_dir('phase_09')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['components_results'], OUTPUT_FILES['components_summary'])
    return print_verdict(log)


if __name__ == "__main__":
    success = run_components_cubic()
    if not success:
        exit(1)
