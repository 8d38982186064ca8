"""
TRANSDUCTIONS - Phase 06: t-Localization

The t-localization of phi(x) guards every quantifier with dist(x, z) <= t.
Evaluating it in G at u must agree with evaluating phi itself in the
radius-t ball around u. This phase draws random triples (formula, colored
graph, t) and compares both sides at every vertex; it also records
whether localization kept the quantifier rank and the free variable.

Formulas use E, = and color atoms only: a distance atom measured in the
ball can exceed the same distance measured in G.

Usage:
    python src/phases/06_localization.py
    python src/phases/06_localization.py --triples 20 --seed 1

Output:
    - outputs/phase06/localization_results.csv
    - outputs/phase06/localization_summary.json
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
    from config import OUTPUT_FILES, PIPELINE_DEFAULTS, ensure_phase_dir

    DEFAULTS = PIPELINE_DEFAULTS['06']
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False
    _OUTPUT_DIR = _SRC_DIR.parent / "outputs" / "phase06"
    OUTPUT_FILES = {
        'localization_results': _OUTPUT_DIR / "localization_results.csv",
        'localization_summary': _OUTPUT_DIR / "localization_summary.json",
    }
    DEFAULTS = {'triples': 100, 'max_vertices': 6, 'max_t': 2, 'seed': 11}

    def ensure_phase_dir(phase):
        _OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

from transductions import ball, evaluate, formula_to_text, free_variables, quantifier_rank, t_localize
from utils import CheckLog, print_banner, print_step, print_verdict, random_formula, random_graph, save_phase_report


def check_triple(G, phi, t: int) -> tuple:
    """(agreeing vertices, first disagreeing vertex or None)."""
    localized = t_localize(phi, t)
    agree = 0
    for u in range(G.n):
        B, origin = ball(G, [u], t)
        centre = origin.index(u)
        if evaluate(G, localized, {"x": u}) != evaluate(B, phi, {"x": centre}):
            return agree, u
        agree += 1
    return agree, None


def run_localization(triples: int, max_vertices: int, max_t: int, seed: int) -> bool:
    print_banner("Phase 06: t-Localization", _USING_CONFIG)
    log = CheckLog("06")
    rng = np.random.default_rng(seed)

    print_step(1, f"{triples} random (formula, graph, t) triples")
    vertices_checked = 0
    for index in range(triples):
        n = int(rng.integers(1, max_vertices + 1))
        G = random_graph(n, rng, p=float(rng.uniform(0.2, 0.6)), color="C")
        t = int(rng.integers(0, max_t + 1))
        phi = random_formula(rng, depth=int(rng.integers(1, 5)))
        text = formula_to_text(phi)
        label = f"triple#{index}"

        localized = t_localize(phi, t)
        shape_ok = (quantifier_rank(localized) == quantifier_rank(phi)
                    and free_variables(localized) == free_variables(phi))
        log.record("rank_and_free_variables", label, shape_ok, "" if shape_ok else text)

        agree, bad = check_triple(G, phi, t)
        vertices_checked += agree
        detail = "" if bad is None else f"vertex {bad}: {text}"
        log.record("ball_agreement", label, bad is None, detail,
                   n=n, m=len(G.edges), t=t, rank=quantifier_rank(phi), formula=text)
    print(f"  Agreement at {vertices_checked:,} vertices")

    print_step(2, "Save report")
    ensure_phase_dir('phase_06')
    log.print_check_table()
    save_phase_report(log, OUTPUT_FILES['localization_results'], OUTPUT_FILES['localization_summary'],
                      {"seed": seed, "triples": triples, "max_vertices": max_vertices, "max_t": max_t})
    return print_verdict(log)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="t-localization against evaluation on balls")
    parser.add_argument('--triples', type=int, default=DEFAULTS['triples'], help='Random triples (default: 100)')
    parser.add_argument('--max-vertices', type=int, default=DEFAULTS['max_vertices'],
                        help='Largest random graph (default: 6)')
    parser.add_argument('--max-t', type=int, default=DEFAULTS['max_t'], help='Largest radius (default: 2)')
    parser.add_argument('--seed', type=int, default=DEFAULTS['seed'], help='Random seed')
    args = parser.parse_args()

    success = run_localization(args.triples, args.max_vertices, args.max_t, args.seed)
    if not success:
        exit(1)
