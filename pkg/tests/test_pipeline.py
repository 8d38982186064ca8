"""
TRANSDUCTIONS - Verification Pipeline Tests
===========================================

Tests: configuration, the phase runner, shared phase utilities and (when
present) the reports written by run_pipeline.py.

Run:
  pytest tests/test_pipeline.py -v                    # All tests
  pytest tests/test_pipeline.py -v -m "not pipeline"  # Skip report checks
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

# ============================================================================
# PATH SETUP
# ============================================================================

PROJECT_ROOT = Path(__file__).parent.parent
SRC_DIR = PROJECT_ROOT / "src"
OUTPUT_DIR = PROJECT_ROOT / "outputs"

sys.path.insert(0, str(SRC_DIR))

import config  # noqa: E402
import run_pipeline  # noqa: E402
from transductions import expand_caterpillar  # noqa: E402
from utils import (  # noqa: E402
    CheckLog,
    atlas_graphs,
    random_caterpillar,
    random_formula,
    random_graph,
    save_phase_report,
)
from transductions.logic import free_variables  # noqa: E402

PHASES = [f"{i:02d}" for i in range(1, 11)]


# ============================================================================
# TEST 1: CONFIGURATION
# ============================================================================

class TestConfiguration:
    """config.py is internally consistent."""

    def test_validate_config(self):
        assert config.validate_config() is True

    def test_every_phase_has_metadata(self):
        assert sorted(config.PHASE_METADATA) == PHASES

    @pytest.mark.parametrize("phase_num", PHASES)
    def test_phase_script_exists(self, phase_num):
        path = config.get_phase_script_path(phase_num)
        assert path.exists(), f"Missing phase script: {path}"

    @pytest.mark.parametrize("phase_num", PHASES)
    def test_outputs_live_in_phase_dir(self, phase_num):
        phase_dir = config.get_phase_dir(f"phase_{phase_num}")
        for key in config.PHASE_METADATA[phase_num]['outputs']:
            assert config.get_output_file(key).parent == phase_dir, key

    def test_unknown_keys(self):
        with pytest.raises(KeyError):
            config.get_phase_script_path("99")
        with pytest.raises(KeyError):
            config.get_output_file("nope")

    def test_phase_defaults(self):
        assert config.get_phase_defaults("01")["max_exhaustive"] == 5
        assert config.get_phase_defaults("05") == {}

    def test_budget_environment(self, monkeypatch):
        monkeypatch.delenv(config.BUDGET_ENV_VAR, raising=False)
        assert config.get_search_budget() == config.BUDGETS.DEFAULT_SEARCH_BUDGET
        monkeypatch.setenv(config.BUDGET_ENV_VAR, "1000")
        assert config.get_search_budget() == 1000
        monkeypatch.setenv(config.BUDGET_ENV_VAR, "-3")
        with pytest.raises(ValueError, match="positive"):
            config.get_search_budget()

    def test_exit_codes(self):
        codes = config.EXIT_CODES
        assert (codes.OK, codes.VERIFY_FAILED, codes.BUDGET_EXCEEDED, codes.USAGE) == (0, 1, 2, 64)


# ============================================================================
# TEST 2: PHASE RUNNER
# ============================================================================

class TestPhaseRunner:
    """Commands assembled by run_pipeline.py."""

    def test_command_carries_defaults(self):
        cmd = run_pipeline.build_phase_command("06")
        assert cmd[0] == sys.executable
        assert cmd[1].endswith("06_localization.py")
        assert cmd[cmd.index("--max-t") + 1] == "2"
        assert cmd[cmd.index("--seed") + 1] == "11"

    def test_command_without_defaults(self):
        assert len(run_pipeline.build_phase_command("08")) == 2


# ============================================================================
# TEST 3: SHARED PHASE UTILITIES
# ============================================================================

class TestPhaseUtilities:
    """Reporting and instance generators used by every phase."""

    def test_check_log_summary(self):
        log = CheckLog("demo")
        log.record("a", "P3", True)
        log.record("a", "C4", False, "mismatch")
        log.record("b", "K1", True, vertices=1)
        summary = log.summary()
        assert summary["instances"] == 3
        assert summary["failures"] == 1
        assert summary["passed"] is False
        assert summary["checks"] == {"a": {"instances": 2, "passed": 1}, "b": {"instances": 1, "passed": 1}}

    def test_save_phase_report(self, tmp_path):
        log = CheckLog("demo")
        log.record("a", "P3", True)
        summary = save_phase_report(log, tmp_path / "r.csv", tmp_path / "s.json", extra={"seed": 3})
        assert summary["seed"] == 3
        assert pd.read_csv(tmp_path / "r.csv")["instance"].tolist() == ["P3"]
        assert json.loads((tmp_path / "s.json").read_text())["passed"] is True

    def test_atlas_counts(self):
        assert len(list(atlas_graphs(3, min_vertices=1))) == 7
        assert len(list(atlas_graphs(4, min_vertices=4))) == 11

    def test_random_graph_is_seeded(self):
        a = random_graph(6, np.random.default_rng(1), color="C")
        b = random_graph(6, np.random.default_rng(1), color="C")
        assert a == b
        assert set(a.colors) == {"C"}

    def test_random_formula_has_one_free_variable(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            assert free_variables(random_formula(rng)) == {"x"}

    def test_random_caterpillar_respects_degree(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            C = expand_caterpillar(random_caterpillar(rng, delta=3))
            assert max((C.degree(v) for v in range(C.n)), default=0) <= 3


# ============================================================================
# TEST 4: PHASE OUTPUTS (after run_pipeline.py --all)
# ============================================================================

def _require(path: Path) -> Path:
    if not path.exists():
        pytest.skip(f"{path.name} not generated; run src/run_pipeline.py --all")
    return path


class TestPhaseOutputs:
    """Reports written by the verification phases."""

    @pytest.mark.parametrize("phase_num", PHASES)
    def test_summary_passed(self, phase_num):
        keys = config.PHASE_METADATA[phase_num]['outputs']
        summary_key = next(key for key in keys if key.endswith("_summary"))
        summary = json.loads(_require(config.get_output_file(summary_key)).read_text())
        assert summary["passed"], f"Phase {phase_num}: {summary['failures']} failures"
        assert summary["instances"] > 0

    @pytest.mark.parametrize("phase_num", PHASES)
    def test_results_columns(self, phase_num):
        keys = config.PHASE_METADATA[phase_num]['outputs']
        results_key = next(key for key in keys if key.endswith("_results"))
        df = pd.read_csv(_require(config.get_output_file(results_key)))
        assert {"check", "instance", "passed"} <= set(df.columns)
        assert df["passed"].all()
