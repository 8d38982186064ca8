"""
TRANSDUCTIONS - Shared Phase Utilities
======================================

Reusable pieces of the verification phases, extracted so every phase
reports and samples instances the same way.

Modules:
    - reporting: banners, STEP headers, per-instance rows, CSV/JSON reports
    - sampling: atlas graphs, random graphs, formulas and caterpillars
    - oracles: rank-q types as an independent check of the game solver

Usage:
------
from utils import print_banner, print_step, CheckLog, save_phase_report
from utils import atlas_graphs, random_graph, random_formula
from utils import elementarily_equivalent
"""

# Reporting Utilities
from .reporting import (
    print_banner,
    print_step,
    print_verdict,
    CheckLog,
    save_phase_report,
)

# Instance Generators
from .sampling import (
    atlas_graphs,
    random_graph,
    random_formula,
    random_caterpillar,
)

# Oracles
from .oracles import (
    atomic_type,
    rank_type,
    elementarily_equivalent,
)

__all__ = [
    # Reporting
    'print_banner',
    'print_step',
    'print_verdict',
    'CheckLog',
    'save_phase_report',
    # Sampling
    'atlas_graphs',
    'random_graph',
    'random_formula',
    'random_caterpillar',
    # Oracles
    'atomic_type',
    'rank_type',
    'elementarily_equivalent',
]
