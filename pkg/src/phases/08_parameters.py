"""
TRANSDUCTIONS - Phase 08: Graph Parameters

Exact values of the width parameters on families with known answers, the
inequalities tw <= pw <= bw and pw <= td - 1 over every small graph, the
validity of each computed star coloring, and the embedding of C_k(P_n)
into the (k+1)-th power of P_{nk}.

Usage:
    python src/phases/08_parameters.py

Output:
    - outputs/phase08/parameters_results.csv
    - outputs/phase08/parameters_summary.json
"""

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
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase08"
    OUTPUT_FILES = {
        'parameters_results': _OUTPUT_DIR / "parameters_results.csv",
        'parameters_summary': _OUTPUT_DIR / "parameters_summary.json",
    }

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import (
    TransductionError,
    bandwidth,
    complete_graph,
    cycle_graph,
    is_star_coloring,
    path_graph,
    pathpower_embedding,
    pathwidth,
    star_chromatic_number,
    treedepth,
    treewidth,
)
from utils import CheckLog, atlas_graphs, print_banner, print_step, print_verdict, save_phase_report

MAX_FAMILY_ORDER = 8
MAX_INEQUALITY_ORDER = 6
MAX_EMBED_N = 5
MAX_EMBED_K = 3

# (check name, family label, graph builder, parameter, expected value, orders)
KNOWN_VALUES = [
    ("pw_path", "P", path_graph, pathwidth, lambda n: 1, range(2, MAX_FAMILY_ORDER + 1)),
    ("pw_complete", "K", complete_graph, pathwidth, lambda n: n - 1, range(1, MAX_FAMILY_ORDER + 1)),
    ("tw_cycle", "C", cycle_graph, treewidth, lambda n: 2, range(3, MAX_FAMILY_ORDER + 1)),
    ("td_path", "P", path_graph, treedepth, lambda n: n.bit_length(), range(1, MAX_FAMILY_ORDER + 1)),
    ("bw_path", "P", path_graph, bandwidth, lambda n: 1, range(2, MAX_FAMILY_ORDER + 1)),
    ("starchrom_path", "P", path_graph, lambda G: star_chromatic_number(G)[0],
     lambda n: 1 if n == 1 else (2 if n <= 3 else 3), range(1, MAX_FAMILY_ORDER + 1)),
]


def check_known_values(log: CheckLog) -> None:
    print(f"\n{'Check':<16} {'Graph':<6} {'Expected':>9} {'Computed':>9}")
    print("-" * 44)
    for name, family, build, parameter, expected, orders in KNOWN_VALUES:
        for n in orders:
            label = f"{family}{n}"
            try:
                value = parameter(build(n))
            except TransductionError as e:
                log.record(name, label, False, str(e))
                continue
            want = expected(n)
            log.record(name, label, value == want, "" if value == want else f"expected {want}, got {value}",
                       expected=want, computed=value)
            if n in (4, MAX_FAMILY_ORDER):
                print(f"{name:<16} {label:<6} {want:>9} {value:>9}")


def check_inequalities(log: CheckLog) -> None:
    for index, G in enumerate(atlas_graphs(MAX_INEQUALITY_ORDER, min_vertices=1)):
        tw, pw, td, bw = treewidth(G), pathwidth(G), treedepth(G), bandwidth(G)
        label = f"atlas#{index}"
        log.record("tw_le_pw_le_bw", label, tw <= pw <= bw, f"tw={tw} pw={pw} bw={bw}",
                   n=G.n, tw=tw, pw=pw, td=td, bw=bw)
        log.record("pw_lt_td", label, pw <= td - 1, f"pw={pw} td={td}")
        k, coloring = star_chromatic_number(G)
        bad = is_star_coloring(G, coloring)
        log.record("star_coloring_valid", label, bad is None and len(set(coloring.values())) == k,
                   "" if bad is None else f"bicolored path {list(bad)}", star_colors=k)


def check_embeddings(log: CheckLog) -> None:
    for n in range(1, MAX_EMBED_N + 1):
        for k in range(1, MAX_EMBED_K + 1):
            label = f"C{k}(P{n})"
            try:
                mapping = pathpower_embedding(n, k)
            except TransductionError as e:
                log.record("pathpower_embedding", label, False, str(e))
                continue
            injective = len(set(mapping.values())) == len(mapping)
            log.record("pathpower_embedding", label, injective, "" if injective else "mapping not injective",
                       n=n, k=k)


def run_parameters() -> bool:
    print_banner("Phase 08: Graph Parameters", _USING_CONFIG)
    log = CheckLog("08")

    print_step(1, "Known values")
    check_known_values(log)

    print_step(2, f"Inequalities and star colorings on graphs with <= {MAX_INEQUALITY_ORDER} vertices")
    check_inequalities(log)

    print_step(3, f"Path-power embeddings (n <= {MAX_EMBED_N}, k <= {MAX_EMBED_K})")
    check_embeddings(log)

    print_step(4, "Save report")
    ensure_phase_dir('phase_08')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['parameters_results'], OUTPUT_FILES['parameters_summary'])
    return print_verdict(log)


if __name__ == "__main__":
    success = run_parameters()
    if not success:
        exit(1)
