"""
TRANSDUCTIONS - Phase 05: Copying Identities

Checks the facts about the copy operation C_k used when composing
transductions:

    - C_1 is the identity (same ids, same edges) on random graphs
    - C_k(C_l(G)) and C_l(C_k(G)) are isomorphic for all small G
    - the path P_{nk} with alternating block marks transduces to C_k(P_n)
      without copying
    - G with k marked pendants per vertex transduces to C_k(G)

Usage:
    python src/phases/05_copy_identities.py

Output:
    - outputs/phase05/copy_results.csv
    - outputs/phase05/copy_summary.json
"""

import sys
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
    from config import OUTPUT_FILES, ensure_phase_dir

    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase05"
    OUTPUT_FILES = {
        'copy_results': _OUTPUT_DIR / "copy_results.csv",
        'copy_summary': _OUTPUT_DIR / "copy_summary.json",
    }

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import (
    TransductionError,
    apply_pipeline,
    copy,
    copy_commute_check,
    is_isomorphic,
    path_selfcopy,
    pendant_selfcopy,
)
from utils import CheckLog, atlas_graphs, print_banner, print_step, print_verdict, random_graph, save_phase_report

IDENTITY_SAMPLES = 50
IDENTITY_SEED = 13
MAX_COMMUTE_VERTICES = 4
MAX_COMMUTE_K = 2
MAX_PATH_N = 4
MAX_PATH_K = 3
MAX_PENDANT_VERTICES = 4
MAX_PENDANT_K = 2


def check_identity(log: CheckLog) -> None:
    rng = np.random.default_rng(IDENTITY_SEED)
    for index in range(IDENTITY_SAMPLES):
        n = int(rng.integers(1, 8))
        G = random_graph(n, rng, color="C")
        copied, tags = copy(G, 1)
        ok = copied == G and all(tag.clone == 1 and tag.origin == v for v, tag in enumerate(tags))
        log.record("copy_1_identity", f"random#{index}", ok, n=n)


def check_commutation(log: CheckLog) -> None:
    for index, G in enumerate(atlas_graphs(MAX_COMMUTE_VERTICES)):
        for k in range(1, MAX_COMMUTE_K + 1):
            for l in range(1, MAX_COMMUTE_K + 1):
                log.record("copy_commutes", f"atlas#{index} k={k} l={l}",
                           copy_commute_check(G, k, l), n=G.n, k=k, l=l)


def check_path_selfcopy(log: CheckLog) -> None:
    for n in range(1, MAX_PATH_N + 1):
        for k in range(1, MAX_PATH_K + 1):
            label = f"P{n} k={k}"
            try:
                artifact = path_selfcopy(n, k)
            except TransductionError as e:
                log.record("path_selfcopy", label, False, str(e))
                continue
            log.record("path_selfcopy", label, True, n=n, k=k, host_vertices=artifact.host.n)


def check_pendant_selfcopy(log: CheckLog) -> None:
    for index, G in enumerate(atlas_graphs(MAX_PENDANT_VERTICES, min_vertices=1)):
        for k in range(1, MAX_PENDANT_K + 1):
            host, pipeline = pendant_selfcopy(G, k)
            image = apply_pipeline(host, pipeline)
            expected = copy(G, k)[0]
            same = image.edges == expected.edges
            log.record("pendant_selfcopy", f"atlas#{index} k={k}",
                       same or is_isomorphic(image, expected)[0],
                       "" if same else "isomorphic but renumbered",
                       n=G.n, k=k, host_vertices=host.n)


def run_copy_identities() -> bool:
    print_banner("Phase 05: Copy Identities", _USING_CONFIG)
    log = CheckLog("05")

    print_step(1, f"C_1 is the identity ({IDENTITY_SAMPLES} random graphs)")
    check_identity(log)

    print_step(2, f"C_k C_l = C_l C_k (graphs on <= {MAX_COMMUTE_VERTICES} vertices)")
    check_commutation(log)

    print_step(3, f"Path self-copy (n <= {MAX_PATH_N}, k <= {MAX_PATH_K})")
    check_path_selfcopy(log)

    print_step(4, f"Pendant self-copy (graphs on <= {MAX_PENDANT_VERTICES} vertices, k <= {MAX_PENDANT_K})")
    check_pendant_selfcopy(log)

    print_step(5, "Save report")
    ensure_phase_dir('phase_05')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['copy_results'], OUTPUT_FILES['copy_summary'])
    return print_verdict(log)


if __name__ == "__main__":
    success = run_copy_identities()
    if not success:
        exit(1)
