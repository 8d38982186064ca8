"""
TRANSDUCTIONS - Phase 03: Bounded Pathwidth from Planar Hosts

A graph of pathwidth k sits inside an interval graph of clique number
k + 1. Drawing every interval as a V gives a planar host whose crossings
and layers let a formula rebuild the interval graph, and a star coloring
of that interval graph picks out the original edges. This phase samples
graphs of pathwidth <= 2, encodes each one and checks both the image and
the planarity of the host.

Usage:
    python src/phases/03_planar_pathwidth.py
    python src/phases/03_planar_pathwidth.py --count 5 --max-vertices 6

Output:
    - outputs/phase03/planar_results.csv
    - outputs/phase03/planar_summary.json
"""

import sys
import time
from pathlib import Path

import networkx as nx
import numpy as np

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
    from config import OUTPUT_FILES, PIPELINE_DEFAULTS, ensure_phase_dir

    DEFAULTS = PIPELINE_DEFAULTS['03']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase03"
    OUTPUT_FILES = {
        'planar_results': _OUTPUT_DIR / "planar_results.csv",
        'planar_summary': _OUTPUT_DIR / "planar_summary.json",
    }
    DEFAULTS = {'count': 20, 'max_vertices': 7}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import TransductionError, encode_pathwidth_planar, pathwidth, to_networkx
from utils import CheckLog, atlas_graphs, print_banner, print_step, print_verdict, save_phase_report

MAX_PATHWIDTH = 2


def select_instances(count: int, max_vertices: int) -> list:
    """Evenly spaced graphs (by atlas position) among those with 1 <= pw <= 2."""
    candidates = [
        G for G in atlas_graphs(max_vertices, min_vertices=3)
        if G.edges and pathwidth(G) <= MAX_PATHWIDTH
    ]
    if len(candidates) <= count:
        return candidates
    picks = np.linspace(0, len(candidates) - 1, count).round().astype(int)
    return [candidates[i] for i in picks]


def run_planar_pathwidth(count: int, max_vertices: int) -> bool:
    print_banner("Phase 03: Planar Pathwidth Encoding", _USING_CONFIG)
    log = CheckLog("03")

    print_step(1, f"Select {count} graphs with pathwidth <= {MAX_PATHWIDTH} on <= {max_vertices} vertices")
    instances = select_instances(count, max_vertices)
    print(f"  Selected {len(instances)} graphs")

    print_step(2, "Encode and verify")
    print(f"\n{'#':<4} {'n':>3} {'m':>3} {'pw':>3} {'Host':>6} {'Layers':>7} {'Seconds':>9}")
    print("-" * 42)
    for index, G in enumerate(instances):
        label = f"graph#{index}"
        edges = str(sorted(G.edges))
        start = time.time()
        try:
            artifact = encode_pathwidth_planar(G)
        except TransductionError as e:
            log.record("image", label, False, str(e), edges=edges)
            continue
        elapsed = time.time() - start
        layers = sum(1 for name in artifact.host.colors if name.startswith("L"))
        log.record("image", label, True, n=G.n, m=len(G.edges), edges=edges,
                   host_vertices=artifact.host.n, layers=layers, seconds=round(elapsed, 3))
        planar, _ = nx.check_planarity(to_networkx(artifact.host))
        log.record("host_planar", label, planar, "" if planar else "host is not planar")
        print(f"{index:<4} {G.n:>3} {len(G.edges):>3} {pathwidth(G):>3} {artifact.host.n:>6} "
              f"{layers:>7} {elapsed:>9.2f}")

    print_step(3, "Save report")
    ensure_phase_dir('phase_03')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['planar_results'], OUTPUT_FILES['planar_summary'],
                      {"count": count, "max_vertices": max_vertices})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Pathwidth <= 2 graphs from planar hosts")
    parser.add_argument('--count', type=int, default=DEFAULTS['count'], help='Number of graphs (default: 20)')
    parser.add_argument('--max-vertices', type=int, default=DEFAULTS['max_vertices'],
                        help='Largest order sampled (default: 7)')
    args = parser.parse_args()

    success = run_planar_pathwidth(args.count, args.max_vertices)
    if not success:
        exit(1)
