"""
TRANSDUCTIONS - Phase 07: Ehrenfeucht-Fraisse Games

Two checks of the game solver:

    1. Oracle agreement. For every pair of graphs on <= max_vertices
       vertices and every q <= max_q, Duplicator wins exactly when the
       two graphs have the same rank-q type (computed independently by
       enumerating picked tuples), and the verdict is symmetric.
    2. Caterpillar clone sweep. For spines of length <= 2, palettes of
       <= 1 color, every spine coloring, multiplicities <= q + 1 and
       q <= sweep_q, two caterpillars whose child counts agree once cut
       off at q are q-equivalent.

Usage:
    python src/phases/07_ef_games.py
    python src/phases/07_ef_games.py --sweep-q 2

Output:
    - outputs/phase07/games_results.csv
    - outputs/phase07/games_summary.json
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

    DEFAULTS = PIPELINE_DEFAULTS['07']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase07"
    OUTPUT_FILES = {
        'games_results': _OUTPUT_DIR / "games_results.csv",
        'games_summary': _OUTPUT_DIR / "games_summary.json",
    }
    DEFAULTS = {'max_vertices': 4, 'max_q': 2, 'sweep_q': 3}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from tqdm import tqdm

from transductions import ColoredGraph, caterpillar_clone_check, duplicator_wins, path_graph
from utils import CheckLog, atlas_graphs, elementarily_equivalent, print_banner, print_step, print_verdict, save_phase_report

MAX_SPINE = 2
PALETTES = ((), ("A",))


def check_oracle(log: CheckLog, max_vertices: int, max_q: int) -> None:
    graphs = list(atlas_graphs(max_vertices))
    pairs = list(itertools.combinations_with_replacement(range(len(graphs)), 2))
    for i, j in tqdm(pairs, desc="Graph pairs", unit="pair"):
        G, H = graphs[i], graphs[j]
        for q in range(max_q + 1):
            label = f"atlas#{i} vs atlas#{j} q={q}"
            game = duplicator_wins(G, H, q)
            oracle = elementarily_equivalent(G, H, q)
            log.record("oracle_agreement", label, game == oracle,
                       "" if game == oracle else f"game={game} oracle={oracle}", q=q, duplicator=game)
            log.record("symmetric", label, duplicator_wins(H, G, q) == game, q=q)


def multiplicity_pairs(q: int) -> list:
    """(a, b) with a <= b <= q + 1 and min(a, q) = min(b, q)."""
    return [(a, b) for a in range(q + 2) for b in range(a, q + 2) if min(a, q) == min(b, q)]


def check_clone_sweep(log: CheckLog, sweep_q: int) -> int:
    games = 0
    for L in range(1, MAX_SPINE + 1):
        for palette in PALETTES:
            subsets = [frozenset()] + [frozenset({c}) for c in palette]
            keys = [(v, I) for v in range(L) for I in subsets]
            spine_colorings = [frozenset()] if not palette else [
                frozenset(v for v in range(L) if mask >> v & 1) for mask in range(2 ** L)
            ]
            for spine in spine_colorings:
                path = ColoredGraph(path_graph(L), {c: spine for c in palette})
                for q in range(sweep_q + 1):
                    checked, failed, example = 0, 0, ""
                    for choice in itertools.product(multiplicity_pairs(q), repeat=len(keys)):
                        f1 = {key: a for key, (a, _) in zip(keys, choice)}
                        f2 = {key: b for key, (_, b) in zip(keys, choice)}
                        checked += 1
                        if not caterpillar_clone_check(path, f1, f2, q):
                            failed += 1
                            example = example or str(choice)
                    games += checked
                    label = f"L={L} palette={list(palette)} spine={sorted(spine)} q={q}"
                    log.record("caterpillar_clone", label, failed == 0, example,
                               spine=L, colors=len(palette), q=q, pairs=checked, failed=failed)
    return games


def run_ef_games(max_vertices: int, max_q: int, sweep_q: int) -> bool:
    print_banner("Phase 07: EF Games", _USING_CONFIG)
    log = CheckLog("07")

    print_step(1, f"Oracle agreement: graphs on <= {max_vertices} vertices, q <= {max_q}")
    check_oracle(log, max_vertices, max_q)
    agreements = sum(r['passed'] for r in log.rows if r['check'] == 'oracle_agreement')
    print(f"  [OK] {agreements:,} verdicts agree with the rank-type oracle")

    print_step(2, f"Caterpillar clone sweep: spine <= {MAX_SPINE}, q <= {sweep_q}")
    games = check_clone_sweep(log, sweep_q)
    print(f"  Played {games:,} games")

    print_step(3, "Save report")
    ensure_phase_dir('phase_07')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['games_results'], OUTPUT_FILES['games_summary'],
                      {"max_vertices": max_vertices, "max_q": max_q, "sweep_q": sweep_q, "sweep_games": games})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="EF game solver checks")
    parser.add_argument('--max-vertices', type=int, default=DEFAULTS['max_vertices'],
                        help='Largest graph in the oracle comparison (default: 4)')
    parser.add_argument('--max-q', type=int, default=DEFAULTS['max_q'], help='Largest q against the oracle (default: 2)')
    parser.add_argument('--sweep-q', type=int, default=DEFAULTS['sweep_q'],
                        help='Largest q in the caterpillar sweep (default: 3)')
    args = parser.parse_args()

    success = run_ef_games(args.max_vertices, args.max_q, args.sweep_q)
    if not success:
        exit(1)
