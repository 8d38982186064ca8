"""
TRANSDUCTIONS - Phase 10: Caterpillars from Colored Paths

A caterpillar of bounded degree is the image of a colored path: each
spine vertex becomes a block "S, vertex, children..., T" and a formula
joins a block's vertex to its children and to the next block's vertex.
This phase draws random compressed caterpillars (spine <= 4, degree
<= 4, palette of 2 colors), encodes each in a path and checks the image
is the expanded caterpillar, colors included. It also checks that
expanding the compression of the image gives the image back.

Usage:
    python src/phases/10_caterpillar_path.py
    python src/phases/10_caterpillar_path.py --instances 10 --seed 1

Output:
    - outputs/phase10/caterpillar_results.csv
    - outputs/phase10/caterpillar_summary.json
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

    DEFAULTS = PIPELINE_DEFAULTS['10']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase10"
    OUTPUT_FILES = {
        'caterpillar_results': _OUTPUT_DIR / "caterpillar_results.csv",
        'caterpillar_summary': _OUTPUT_DIR / "caterpillar_summary.json",
    }
    DEFAULTS = {'instances': 30, 'seed': 5}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import (
    TransductionError,
    compress_caterpillar,
    encode_caterpillar_in_path,
    expand_caterpillar,
    is_isomorphic,
)
from utils import CheckLog, print_banner, print_step, print_verdict, random_caterpillar, save_phase_report

MAX_SPINE = 4
DELTA = 4
PALETTE = ("A", "B")


def run_caterpillar_path(instances: int, seed: int) -> bool:
    print_banner("Phase 10: Caterpillars from Colored Paths", _USING_CONFIG)
    log = CheckLog("10")
    rng = np.random.default_rng(seed)

    print_step(1, f"{instances} random compressed caterpillars")
    print(f"\n{'#':<4} {'Spine':>6} {'Vertices':>9} {'Path':>6} {'Seconds':>9}")
    print("-" * 38)
    for index in range(instances):
        CC = random_caterpillar(rng, MAX_SPINE, DELTA, PALETTE)
        label = f"caterpillar#{index}"
        target = expand_caterpillar(CC)
        start = time.time()
        try:
            artifact = encode_caterpillar_in_path(CC, DELTA)
        except TransductionError as e:
            log.record("path_encoding", label, False, str(e), spine=CC.path.n, vertices=target.n)
            continue
        elapsed = time.time() - start
        log.record("path_encoding", label, True, spine=CC.path.n, vertices=target.n,
                   path_vertices=artifact.host.n, seconds=round(elapsed, 3))
        print(f"{index:<4} {CC.path.n:>6} {target.n:>9} {artifact.host.n:>6} {elapsed:>9.2f}")

        same = is_isomorphic(expand_caterpillar(compress_caterpillar(target)), target)[0]
        log.record("compression", label, same, "" if same else "expansion of the compression differs")

    print_step(2, "Save report")
    ensure_phase_dir('phase_10')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['caterpillar_results'], OUTPUT_FILES['caterpillar_summary'],
                      {"seed": seed, "instances": instances, "max_spine": MAX_SPINE, "delta": DELTA})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Caterpillar-in-path encoding")
    parser.add_argument('--instances', type=int, default=DEFAULTS['instances'],
                        help='Random caterpillars (default: 30)')
    parser.add_argument('--seed', type=int, default=DEFAULTS['seed'], help='Random seed')
    args = parser.parse_args()

    success = run_caterpillar_path(args.instances, args.seed)
    if not success:
        exit(1)
