"""
TRANSDUCTIONS - Pytest Configuration and Shared Fixtures
========================================================

This file is automatically loaded by pytest and provides shared fixtures
and configuration for all test modules.
"""

import sys
from pathlib import Path

import pytest

# ============================================================================
# PATH SETUP
# ============================================================================

PROJECT_ROOT = Path(__file__).parent.parent
SRC_DIR = PROJECT_ROOT / "src"
sys.path.insert(0, str(SRC_DIR))

from transductions import (  # noqa: E402
    ColoredGraph,
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)


# ============================================================================
# PYTEST HOOKS
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "pipeline: mark test as requiring verification outputs")
    config.addinivalue_line("markers", "unit: mark test as unit test")


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically."""
    for item in items:
        # Phase reports only exist after run_pipeline.py
        if "PhaseOutputs" in item.nodeid:
            item.add_marker(pytest.mark.pipeline)

        # Exhaustive sweeps take seconds to minutes
        if "Exhaustive" in item.nodeid:
            item.add_marker(pytest.mark.slow)

        if "test_pipeline.py" not in item.nodeid and "Exhaustive" not in item.nodeid:
            item.add_marker(pytest.mark.unit)


# ============================================================================
# SHARED FIXTURES
# ============================================================================

@pytest.fixture(scope="session")
def project_paths():
    """Return commonly used project paths."""
    return {
        "root": PROJECT_ROOT,
        "src": SRC_DIR,
        "outputs": PROJECT_ROOT / "outputs",
        "logs": PROJECT_ROOT / "outputs" / "logs",
        "tests": PROJECT_ROOT / "tests",
    }


@pytest.fixture(scope="session")
def small_graphs():
    """Named graphs used across test modules."""
    return {
        "K1": complete_graph(1),
        "2K1": empty_graph(2),
        "K2": complete_graph(2),
        "P3": path_graph(3),
        "P4": path_graph(4),
        "K3": complete_graph(3),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
        "K4": complete_graph(4),
        "K1,3": star_graph(3),
        "P2+K1": Graph(3, frozenset({(0, 1)})),
    }


@pytest.fixture
def colored_p4():
    """P4 with its two ends colored A and vertex 1 colored B."""
    return ColoredGraph(path_graph(4), {"A": frozenset({0, 3}), "B": frozenset({1})})
