"""
TRANSDUCTIONS - Central Configuration
=====================================

This file consolidates ALL configuration constants of the verification
pipeline and the library's search limits. Importing from here ensures
consistency across the phases, the CLI and the library.

USAGE:
------
from config import (
    PROJECT_ROOT, OUTPUT_DIR, PHASE_DIRS, OUTPUT_FILES,
    PIPELINE_DEFAULTS, PHASE_METADATA, BUDGETS, EXIT_CODES,
    ensure_output_dirs, ensure_phase_dir, get_phase_dir, get_output_file,
    get_search_budget
)

The library (src/transductions) works without this file; it falls back to
the same budget values when `config` is not importable.

Version: 1.0.0
"""

import os
from pathlib import Path
from typing import Any, Dict

# ============================================================================
# PATH CONFIGURATION
# ============================================================================

# Detect project root (works whether run from src/ or project root)
_THIS_FILE = Path(__file__).resolve()
if _THIS_FILE.parent.name == 'src':
    PROJECT_ROOT = _THIS_FILE.parent.parent
else:
    PROJECT_ROOT = _THIS_FILE.parent

OUTPUT_DIR = PROJECT_ROOT / "outputs"
SRC_DIR = PROJECT_ROOT / "src"
LOGS_DIR = OUTPUT_DIR / "logs"

# ============================================================================
# OUTPUT DIRECTORY STRUCTURE (Phase-specific)
# ============================================================================
# Keys use underscore (phase_01) to match the phase files
# Paths use no underscore (phase01) for cleaner folder names

PHASE_DIRS = {
    'phase_01': OUTPUT_DIR / "phase01",
    'phase_02': OUTPUT_DIR / "phase02",
    'phase_03': OUTPUT_DIR / "phase03",
    'phase_04': OUTPUT_DIR / "phase04",
    'phase_05': OUTPUT_DIR / "phase05",
    'phase_06': OUTPUT_DIR / "phase06",
    'phase_07': OUTPUT_DIR / "phase07",
    'phase_08': OUTPUT_DIR / "phase08",
    'phase_09': OUTPUT_DIR / "phase09",
    'phase_10': OUTPUT_DIR / "phase10",
    'logs': LOGS_DIR,
}

# ============================================================================
# OUTPUT FILE PATHS
# ============================================================================

OUTPUT_FILES = {
    # Phase 01: Interval encoding
    'interval_results': PHASE_DIRS['phase_01'] / "interval_results.csv",
    'interval_summary': PHASE_DIRS['phase_01'] / "interval_summary.json",

    # Phase 02: Grid encoding
    'grid_results': PHASE_DIRS['phase_02'] / "grid_results.csv",
    'grid_summary': PHASE_DIRS['phase_02'] / "grid_summary.json",

    # Phase 03: Planar pathwidth encoding
    'planar_results': PHASE_DIRS['phase_03'] / "planar_results.csv",
    'planar_summary': PHASE_DIRS['phase_03'] / "planar_summary.json",

    # Phase 04: Perturbation duality
    'perturbation_results': PHASE_DIRS['phase_04'] / "perturbation_results.csv",
    'perturbation_summary': PHASE_DIRS['phase_04'] / "perturbation_summary.json",

    # Phase 05: Copy identities
    'copy_results': PHASE_DIRS['phase_05'] / "copy_results.csv",
    'copy_summary': PHASE_DIRS['phase_05'] / "copy_summary.json",

    # Phase 06: Localization
    'localization_results': PHASE_DIRS['phase_06'] / "localization_results.csv",
    'localization_summary': PHASE_DIRS['phase_06'] / "localization_summary.json",

    # Phase 07: Games
    'games_results': PHASE_DIRS['phase_07'] / "games_results.csv",
    'games_summary': PHASE_DIRS['phase_07'] / "games_summary.json",

    # Phase 08: Parameters
    'parameters_results': PHASE_DIRS['phase_08'] / "parameters_results.csv",
    'parameters_summary': PHASE_DIRS['phase_08'] / "parameters_summary.json",

    # Phase 09: Bounded components and cubic hosts
    'components_results': PHASE_DIRS['phase_09'] / "components_results.csv",
    'components_summary': PHASE_DIRS['phase_09'] / "components_summary.json",

    # Phase 10: Caterpillars in paths
    'caterpillar_results': PHASE_DIRS['phase_10'] / "caterpillar_results.csv",
    'caterpillar_summary': PHASE_DIRS['phase_10'] / "caterpillar_summary.json",
}

# ============================================================================
# SEARCH BUDGETS AND SIZE CAPS
# ============================================================================

class BUDGETS:
    """Limits for every exhaustive search in the library."""

    # colorings x states explored by enumerate/member/game searches
    DEFAULT_SEARCH_BUDGET = 2 ** 20

    MAX_PATHWIDTH_VERTICES = 10
    MAX_TREEWIDTH_VERTICES = 10
    MAX_TREEDEPTH_VERTICES = 10
    MAX_BANDWIDTH_VERTICES = 9
    MAX_STAR_COLORING_VERTICES = 12

    # F_1..F_N enumerates every connected graph on this many vertices
    MAX_COMPONENT_ORDER = 5


BUDGET_ENV_VAR = "TRANSDUCER_BUDGET"


def get_search_budget() -> int:
    """TRANSDUCER_BUDGET when set (a positive integer), else the default."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or raw == "":
        return BUDGETS.DEFAULT_SEARCH_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    return value

# ============================================================================
# EXIT CODES (cli.py, phase scripts)
# ============================================================================

class EXIT_CODES:
    OK = 0
    VERIFY_FAILED = 1
    BUDGET_EXCEEDED = 2
    USAGE = 64

# ============================================================================
# PIPELINE DEFAULTS (for run_pipeline.py)
# ============================================================================
# Default arguments for phases that support CLI options

PIPELINE_DEFAULTS = {
    # Phase 01: exhaustive up to 5 vertices, then random 6-vertex graphs
    '01': {
        'max_exhaustive': 5,
        'random_count': 200,
        'seed': 7,
    },

    # Phase 02: all grids up to 5 x 5
    '02': {
        'max_side': 5,
    },

    # Phase 03: graphs of pathwidth <= 2
    '03': {
        'count': 20,
        'max_vertices': 7,
    },

    # Phase 04: all perturbation sequences of length <= 2
    '04': {
        'max_vertices': 5,
        'max_k': 2,
    },

    # Phase 06: random (formula, graph, t) triples
    '06': {
        'triples': 100,
        'max_vertices': 6,
        'max_t': 2,
        'seed': 11,
    },

    # Phase 07: oracle pairs and clone sweep
    '07': {
        'max_vertices': 4,
        'max_q': 2,
        'sweep_q': 3,
    },

    # Phase 10: random compressed caterpillars
    '10': {
        'instances': 30,
        'seed': 5,
    },
}

# ============================================================================
# PIPELINE CONFIGURATION (for run_pipeline.py)
# ============================================================================

PHASE_METADATA = {
    '01': {
        'name': 'Interval Encoding',
        'script': '01_interval_encoding.py',
        'description': 'Every small graph round-trips through a marked interval graph',
        'requires': [],
        'outputs': ['interval_results', 'interval_summary'],
    },
    '02': {
        'name': 'Grid Encoding',
        'script': '02_grid_encoding.py',
        'description': 'Grids from unit interval graphs, with unit interval models',
        'requires': [],
        'outputs': ['grid_results', 'grid_summary'],
    },
    '03': {
        'name': 'Planar Pathwidth',
        'script': '03_planar_pathwidth.py',
        'description': 'Pathwidth <= 2 graphs from planar hosts',
        'requires': [],
        'outputs': ['planar_results', 'planar_summary'],
    },
    '04': {
        'name': 'Perturbation Duality',
        'script': '04_perturbation_duality.py',
        'description': 'Sequence flips agree with partition flips; involution',
        'requires': [],
        'outputs': ['perturbation_results', 'perturbation_summary'],
    },
    '05': {
        'name': 'Copy Identities',
        'script': '05_copy_identities.py',
        'description': 'C_1 identity, commutation, path and pendant self-copy',
        'requires': [],
        'outputs': ['copy_results', 'copy_summary'],
    },
    '06': {
        'name': 'Localization',
        'script': '06_localization.py',
        'description': 't-localized formulas agree with evaluation on balls',
        'requires': [],
        'outputs': ['localization_results', 'localization_summary'],
    },
    '07': {
        'name': 'EF Games',
        'script': '07_ef_games.py',
        'description': 'Game solver against the sentence oracle; caterpillar clone sweep',
        'requires': [],
        'outputs': ['games_results', 'games_summary'],
    },
    '08': {
        'name': 'Parameters',
        'script': '08_parameters.py',
        'description': 'Exact parameter values and path-power embeddings',
        'requires': [],
        'outputs': ['parameters_results', 'parameters_summary'],
    },
    '09': {
        'name': 'Components and Cubic',
        'script': '09_components_cubic.py',
        'description': 'Bounded-component and cubic encodings',
        'requires': [],
        'outputs': ['components_results', 'components_summary'],
    },
    '10': {
        'name': 'Caterpillar Paths',
        'script': '10_caterpillar_path.py',
        'description': 'Random compressed caterpillars from colored paths',
        'requires': [],
        'outputs': ['caterpillar_results', 'caterpillar_summary'],
    },
}

# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

def ensure_output_dirs():
    """Create all output directories including phase-specific subdirectories."""
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    for phase_dir in PHASE_DIRS.values():
        phase_dir.mkdir(parents=True, exist_ok=True)

def ensure_phase_dir(phase: str):
    """Create a specific phase directory."""
    if phase in PHASE_DIRS:
        PHASE_DIRS[phase].mkdir(parents=True, exist_ok=True)
        return PHASE_DIRS[phase]
    raise KeyError(f"Unknown phase: {phase}")

def get_phase_dir(phase: str) -> Path:
    """Get the directory path for a specific phase."""
    if phase in PHASE_DIRS:
        return PHASE_DIRS[phase]
    raise KeyError(f"Unknown phase: {phase}")

def get_output_file(file_key: str) -> Path:
    """Get the path for a specific output file."""
    if file_key in OUTPUT_FILES:
        return OUTPUT_FILES[file_key]
    raise KeyError(f"Unknown output file key: {file_key}")

def get_phase_script_path(phase_num: str) -> Path:
    """Get the full path to a phase script."""
    if phase_num in PHASE_METADATA:
        script_name = PHASE_METADATA[phase_num]['script']
        return SRC_DIR / 'phases' / script_name
    raise KeyError(f"Unknown phase: {phase_num}")

def get_phase_defaults(phase_num: str) -> Dict[str, Any]:
    """Get default arguments for a phase."""
    return PIPELINE_DEFAULTS.get(phase_num, {})

# ============================================================================
# VALIDATION
# ============================================================================

def validate_config():
    """Validate configuration consistency."""
    errors = []

    for name in ('DEFAULT_SEARCH_BUDGET', 'MAX_PATHWIDTH_VERTICES', 'MAX_TREEWIDTH_VERTICES',
                 'MAX_TREEDEPTH_VERTICES', 'MAX_BANDWIDTH_VERTICES', 'MAX_STAR_COLORING_VERTICES',
                 'MAX_COMPONENT_ORDER'):
        value = getattr(BUDGETS, name)
        if not isinstance(value, int) or value < 1:
            errors.append(f"BUDGETS.{name} must be a positive integer, got {value!r}")

    for phase_num, metadata in PHASE_METADATA.items():
        script_path = get_phase_script_path(phase_num)
        if not script_path.exists():
            errors.append(f"Phase {phase_num} script not found: {script_path}")
        for key in metadata['outputs']:
            if key not in OUTPUT_FILES:
                errors.append(f"Phase {phase_num} lists unknown output {key!r}")
        for required in metadata['requires']:
            if required not in PHASE_METADATA:
                errors.append(f"Phase {phase_num} requires unknown phase {required!r}")

    for phase_num in PIPELINE_DEFAULTS:
        if phase_num not in PHASE_METADATA:
            errors.append(f"Defaults given for unknown phase {phase_num!r}")

    if errors:
        raise ValueError("Configuration validation failed:\n" + "\n".join(errors))
    return True

# ============================================================================
# MODULE INITIALIZATION
# ============================================================================

if __name__ == "__main__":
    print("=" * 70)
    print("TRANSDUCTIONS - CONFIGURATION SUMMARY")
    print("=" * 70)
    print(f"\nPROJECT_ROOT: {PROJECT_ROOT}")
    print(f"OUTPUT_DIR: {OUTPUT_DIR}")
    print(f"LOGS_DIR: {LOGS_DIR}")

    print(f"\nPhase Directories:")
    for phase, path in PHASE_DIRS.items():
        print(f"  - {phase}: {path}")

    print(f"\nBudgets:")
    print(f"  - Search budget: {get_search_budget():,} (env {BUDGET_ENV_VAR})")
    print(f"  - Pathwidth / treewidth / treedepth: <= {BUDGETS.MAX_PATHWIDTH_VERTICES} vertices")
    print(f"  - Bandwidth: <= {BUDGETS.MAX_BANDWIDTH_VERTICES} vertices")
    print(f"  - Star coloring: <= {BUDGETS.MAX_STAR_COLORING_VERTICES} vertices")
    print(f"  - Component order: <= {BUDGETS.MAX_COMPONENT_ORDER}")

    print(f"\nPipeline Phases: {len(PHASE_METADATA)}")
    for phase_num, metadata in PHASE_METADATA.items():
        print(f"  - Phase {phase_num}: {metadata['name']} - {metadata['description']}")

    print("\nValidating configuration...")
    try:
        validate_config()
        print("Configuration is valid!")
    except ValueError as e:
        print(f"Configuration error: {e}")
