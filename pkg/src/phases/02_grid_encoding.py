"""
TRANSDUCTIONS - Phase 02: Grids from Unit Interval Graphs

Rows of the n x m grid become cliques of a unit interval graph, each row
joined to the next by a "staircase". Row marks taken modulo 3 let a
formula tell horizontal from vertical neighbours. This phase checks every
grid with 2 <= n, m <= max_side: the image is exactly the grid, and the
host is realised by a model whose intervals all have the same length.

Usage:
    python src/phases/02_grid_encoding.py
    python src/phases/02_grid_encoding.py --max-side 4

Output:
    - outputs/phase02/grid_results.csv
    - outputs/phase02/grid_summary.json
"""

import sys
import time
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

    DEFAULTS = PIPELINE_DEFAULTS['02']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase02"
    OUTPUT_FILES = {
        'grid_results': _OUTPUT_DIR / "grid_results.csv",
        'grid_summary': _OUTPUT_DIR / "grid_summary.json",
    }
    DEFAULTS = {'max_side': 5}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import TransductionError, encode_grid, grid_graph, is_isomorphic
from utils import CheckLog, print_banner, print_step, print_verdict, save_phase_report


def run_grid_encoding(max_side: int) -> bool:
    print_banner("Phase 02: Grid Encoding", _USING_CONFIG)
    log = CheckLog("02")

    print_step(1, f"Encode every grid up to {max_side} x {max_side}")
    print(f"\n{'Grid':<8} {'Host':>6} {'Edges':>7} {'Seconds':>9}")
    print("-" * 34)
    artifacts = {}
    for n in range(2, max_side + 1):
        for m in range(2, max_side + 1):
            label = f"{n}x{m}"
            start = time.time()
            try:
                artifact = encode_grid(n, m)
            except TransductionError as e:
                log.record("grid_image", label, False, str(e))
                continue
            elapsed = time.time() - start
            image = artifact.image()
            exact = image.edges == grid_graph(n, m).edges
            log.record("grid_image", label, exact or is_isomorphic(image, grid_graph(n, m))[0],
                       "" if exact else "isomorphic but relabelled",
                       host_vertices=artifact.host.n, host_edges=len(artifact.host.edges),
                       seconds=round(elapsed, 3))
            artifacts[label] = artifact
            print(f"{label:<8} {artifact.host.n:>6} {len(artifact.host.edges):>7} {elapsed:>9.2f}")

    print_step(2, "Unit interval models")
    for label, artifact in artifacts.items():
        model = artifact.model
        realises = model.intersection_graph() == artifact.host.base
        unit = len(set(model.lengths())) == 1
        detail = "" if realises and unit else f"realises={realises} unit={unit}"
        log.record("unit_interval_model", label, realises and unit, detail,
                   interval_length=model.lengths()[0] if model.lengths() else 0)
    print(f"  [OK] {sum(r['passed'] for r in log.rows if r['check'] == 'unit_interval_model')} models checked")

    print_step(3, "Save report")
    ensure_phase_dir('phase_02')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['grid_results'], OUTPUT_FILES['grid_summary'], {"max_side": max_side})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Grid encoding in unit interval graphs")
    parser.add_argument('--max-side', type=int, default=DEFAULTS['max_side'],
                        help='Largest grid side (default: 5)')
    args = parser.parse_args()

    success = run_grid_encoding(args.max_side)
    if not success:
        exit(1)
