"""
TRANSDUCTIONS - Phase 04: Perturbation Duality

A sequence of subset complementations Z_1..Z_k flips a pair uv once for
every Z_i containing both ends, so its effect depends only on the parity
of <x, y>, where x and y are the membership bit-vectors of u and v. This
phase runs every sequence of length <= max_k over every graph up to
max_vertices vertices and checks, edge for edge:

    - the partition flip gives the same graph as the sequence
    - partition_to_sets inverts sets_to_partition
    - applying a sequence twice is the identity

Usage:
    python src/phases/04_perturbation_duality.py
    python src/phases/04_perturbation_duality.py --max-vertices 4 --max-k 3

Output:
    - outputs/phase04/perturbation_results.csv   # One row per (graph, k, check)
    - outputs/phase04/perturbation_summary.json
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
    from config import OUTPUT_FILES, PIPELINE_DEFAULTS, ensure_phase_dir

    DEFAULTS = PIPELINE_DEFAULTS['04']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase04"
    OUTPUT_FILES = {
        'perturbation_results': _OUTPUT_DIR / "perturbation_results.csv",
        'perturbation_summary': _OUTPUT_DIR / "perturbation_summary.json",
    }
    DEFAULTS = {'max_vertices': 5, 'max_k': 2}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from tqdm import tqdm

from transductions import Perturbation, apply_partition_flip, apply_sequence, partition_to_sets, sets_to_partition
from utils import CheckLog, atlas_graphs, print_banner, print_step, print_verdict, save_phase_report


def all_subsets(n: int) -> list:
    return [frozenset(v for v in range(n) if mask >> v & 1) for mask in range(2 ** n)]


def check_graph(G, k: int) -> dict:
    """Counts of sequences passing each check, and the first counterexample per check."""
    subsets = all_subsets(G.n)
    stats = {name: {"sequences": 0, "failed": 0, "example": ""} for name in ("duality", "inverse", "involution")}
    for sets in itertools.product(subsets, repeat=k):
        P = Perturbation(tuple(sets), G.n)
        sequence_image = apply_sequence(G, P)
        Q = sets_to_partition(P, G.n)
        outcomes = {
            "duality": apply_partition_flip(G, Q).edges == sequence_image.edges,
            "inverse": partition_to_sets(Q) == P,
            "involution": apply_sequence(sequence_image, P).edges == G.edges,
        }
        for name, ok in outcomes.items():
            stats[name]["sequences"] += 1
            if not ok:
                stats[name]["failed"] += 1
                if not stats[name]["example"]:
                    stats[name]["example"] = str([sorted(Z) for Z in sets])
    return stats


def run_perturbation_duality(max_vertices: int, max_k: int) -> bool:
    print_banner("Phase 04: Perturbation Duality", _USING_CONFIG)
    log = CheckLog("04")

    graphs = list(atlas_graphs(max_vertices))
    print_step(1, f"All sequences with k <= {max_k} over {len(graphs)} graphs on <= {max_vertices} vertices")
    total = 0
    for index, G in enumerate(tqdm(graphs, desc="Graphs", unit="graph")):
        for k in range(max_k + 1):
            for name, stats in check_graph(G, k).items():
                total += stats["sequences"]
                log.record(name, f"atlas#{index} k={k}", stats["failed"] == 0,
                           stats["example"], n=G.n, m=len(G.edges), k=k,
                           sequences=stats["sequences"], failed=stats["failed"])
    print(f"  Checked {total:,} (sequence, property) pairs")

    print_step(2, "Save report")
    ensure_phase_dir('phase_04')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['perturbation_results'], OUTPUT_FILES['perturbation_summary'],
                      {"max_vertices": max_vertices, "max_k": max_k, "sequence_checks": total})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Sequence flips against partition flips")
    parser.add_argument('--max-vertices', type=int, default=DEFAULTS['max_vertices'],
                        help='Largest order checked (default: 5)')
    parser.add_argument('--max-k', type=int, default=DEFAULTS['max_k'],
                        help='Longest perturbation sequence (default: 2)')
    args = parser.parse_args()

    success = run_perturbation_duality(args.max_vertices, args.max_k)
    if not success:
        exit(1)
