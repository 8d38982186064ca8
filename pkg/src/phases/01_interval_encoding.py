"""
TRANSDUCTIONS - Phase 01: Interval Encoding Round Trip

Every graph is the image of a marked interval graph: each vertex i gets a
long interval I_i with two short end intervals, and each edge ij an
interval bridging the right end of I_i and the left end of I_j. This
phase encodes every graph up to 5 vertices (one per isomorphism class)
and a batch of random 6-vertex graphs, and checks the image is the graph.

Usage:
    python src/phases/01_interval_encoding.py
    python src/phases/01_interval_encoding.py --random-count 50 --seed 3

Output:
    - outputs/phase01/interval_results.csv    # One row per encoded graph
    - outputs/phase01/interval_summary.json   # Counts, timings, verdict
"""

import sys
import time
from pathlib import Path

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

    DEFAULTS = PIPELINE_DEFAULTS['01']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase01"
    OUTPUT_FILES = {
        'interval_results': _OUTPUT_DIR / "interval_results.csv",
        'interval_summary': _OUTPUT_DIR / "interval_summary.json",
    }
    DEFAULTS = {'max_exhaustive': 5, 'random_count': 200, 'seed': 7}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import TransductionError, encode_interval
from utils import CheckLog, atlas_graphs, print_banner, print_step, print_verdict, random_graph, save_phase_report


# ============================================================================
# CHECKS
# ============================================================================

def check_graph(log: CheckLog, G, label: str) -> bool:
    start = time.time()
    try:
        artifact = encode_interval(G)
    except TransductionError as e:
        return log.record("round_trip", label, False, str(e), n=G.n, m=len(G.edges))
    model = artifact.model
    ok = model.intersection_graph() == artifact.host.base
    return log.record(
        "round_trip", label, ok, "" if ok else "model does not realise the host",
        n=G.n, m=len(G.edges), host_vertices=artifact.host.n,
        seconds=round(time.time() - start, 4),
    )


def run_interval_encoding(max_exhaustive: int, random_count: int, seed: int) -> bool:
    """Encode, verify and report."""
    print_banner("Phase 01: Interval Encoding", _USING_CONFIG)
    log = CheckLog("01")

    print_step(1, f"Exhaustive: all graphs on 1..{max_exhaustive} vertices")
    exhaustive = list(atlas_graphs(max_exhaustive, min_vertices=1))
    print(f"  {len(exhaustive):,} isomorphism classes")
    for index, G in enumerate(exhaustive):
        check_graph(log, G, f"atlas#{index}")
    print(f"  [OK] {sum(r['passed'] for r in log.rows):,} verified")

    print_step(2, f"Random: {random_count} graphs on {max_exhaustive + 1} vertices")
    rng = np.random.default_rng(seed)
    before = len(log.rows)
    for index in range(random_count):
        check_graph(log, random_graph(max_exhaustive + 1, rng), f"random#{index}")
    print(f"  [OK] {sum(r['passed'] for r in log.rows[before:]):,} verified")

    print_step(3, "Save report")
    ensure_phase_dir('phase_01')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['interval_results'], OUTPUT_FILES['interval_summary'],
                      {"seed": seed, "max_exhaustive": max_exhaustive, "random_count": random_count})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Interval encoding round trip")
    parser.add_argument('--max-exhaustive', type=int, default=DEFAULTS['max_exhaustive'],
                        help='Largest order checked exhaustively (default: 5)')
    parser.add_argument('--random-count', type=int, default=DEFAULTS['random_count'],
                        help='Random graphs on one more vertex (default: 200)')
    parser.add_argument('--seed', type=int, default=DEFAULTS['seed'], help='Random seed')
    args = parser.parse_args()

    success = run_interval_encoding(args.max_exhaustive, args.random_count, args.seed)
    if not success:
        exit(1)
