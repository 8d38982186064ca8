"""
TRANSDUCTIONS - Command-Line Tests
==================================

Subcommands, reports and exit codes of src/cli.py.

Run:
  pytest tests/test_cli.py -v
"""

import json

import pytest

import cli
from transductions import (
    ColorSearch,
    HostArtifact,
    Interpret,
    Pipeline,
    complete_graph,
    empty_graph,
    graph_to_json,
    path_graph,
)
from transductions.transduction import hereditary, pipeline_to_json


@pytest.fixture
def write_json(tmp_path):
    """Write an object to tmp_path/<name> and return the path as a string."""
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return _write


@pytest.fixture
def hereditary_pipeline(write_json):
    return write_json("pipeline.json", pipeline_to_json(Pipeline((ColorSearch(("M",)), Interpret(hereditary())))))


# ============================================================================
# TEST 1: PIPELINES
# ============================================================================

class TestPipelineCommands:
    """apply, enumerate and member."""

    def test_apply_with_witness(self, write_json, hereditary_pipeline, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        witness = write_json("w.json", {"M": [0, 1]})
        assert cli.run(["apply", graph, hereditary_pipeline, "--witness", witness]) == 0
        image = json.loads(capsys.readouterr().out)
        assert image["n"] == 2
        assert image["edges"] == [[0, 1]]

    def test_apply_dot_output(self, write_json, hereditary_pipeline, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        witness = write_json("w.json", {"M": [0, 2]})
        assert cli.run(["apply", graph, hereditary_pipeline, "--witness", witness, "--format", "dot"]) == 0
        assert capsys.readouterr().out.startswith("graph G {")

    def test_missing_witness(self, write_json, hereditary_pipeline, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["apply", graph, hereditary_pipeline]) == 1
        assert "[ERROR]" in capsys.readouterr().err

    def test_enumerate(self, write_json, hereditary_pipeline, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["enumerate", graph, hereditary_pipeline]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["count"] == 5

    def test_enumerate_over_budget(self, write_json, hereditary_pipeline, capsys):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        assert cli.run(["enumerate", graph, hereditary_pipeline, "--budget", "8"]) == 2
        assert "[ERROR]" in capsys.readouterr().err

    def test_budget_from_environment(self, write_json, hereditary_pipeline, monkeypatch):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        monkeypatch.setenv("TRANSDUCER_BUDGET", "8")
        assert cli.run(["enumerate", graph, hereditary_pipeline]) == 2

    def test_member(self, write_json, hereditary_pipeline, capsys):
        target = write_json("k2.json", graph_to_json(complete_graph(2)))
        host = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["member", target, hereditary_pipeline, host]) == 0
        witnesses = json.loads(capsys.readouterr().out)["witnesses"]
        assert len(witnesses) == 1 and len(witnesses[0]["M"]) == 2

    def test_member_not_found(self, write_json, hereditary_pipeline, capsys):
        target = write_json("k3.json", graph_to_json(complete_graph(3)))
        host = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["member", target, hereditary_pipeline, host]) == 0
        assert capsys.readouterr().out.strip() == "no"

    def test_malformed_pipeline(self, write_json):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        pipeline = write_json("bad.json", [{"op": "shrink"}])
        assert cli.run(["apply", graph, pipeline]) == 64


# ============================================================================
# TEST 2: ENCODERS
# ============================================================================

class TestEncode:
    """encode exits 0 only when the artifact verified."""

    def test_grid(self, capsys):
        assert cli.run(["encode", "grid", "2", "3"]) == 0
        assert "VERIFIED: image ≅ 2x3 grid" in capsys.readouterr().out

    def test_grid_too_small(self):
        assert cli.run(["encode", "grid", "1", "3"]) == 1

    def test_selfcopy_path(self, capsys):
        assert cli.run(["encode", "selfcopy-path", "2", "3"]) == 0
        assert "C_3(P_2)" in capsys.readouterr().out

    def test_interval_bundle(self, write_json, tmp_path, capsys):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        bundle = tmp_path / "out" / "bundle.json"
        assert cli.run(["encode", "interval", graph, "--output", str(bundle)]) == 0
        assert "VERIFIED" in capsys.readouterr().out
        artifact = HostArtifact.from_json(json.loads(bundle.read_text()))
        assert artifact.target == path_graph(4)

    def test_components_needs_n(self, write_json):
        graph = write_json("k2.json", graph_to_json(complete_graph(2)))
        assert cli.run(["encode", "components", graph]) == 64

    def test_components(self, write_json, capsys):
        graph = write_json("k2.json", graph_to_json(complete_graph(2)))
        assert cli.run(["encode", "components", graph, "--n", "2"]) == 0
        assert "VERIFIED" in capsys.readouterr().out

    def test_caterpillar_needs_delta(self, write_json):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["encode", "caterpillar", graph]) == 64

    def test_non_integer_argument(self):
        assert cli.run(["encode", "grid", "2", "x"]) == 64

    def test_wrong_argument_count(self):
        assert cli.run(["encode", "grid", "2"]) == 64


# ============================================================================
# TEST 3: GAMES, PARAMETERS, PERTURBATIONS
# ============================================================================

class TestQueries:

    def test_ef_duplicator(self, write_json, capsys):
        G = write_json("k2.json", graph_to_json(complete_graph(2)))
        H = write_json("e2.json", graph_to_json(empty_graph(2)))
        assert cli.run(["ef", G, H, "--q", "1"]) == 0
        out = capsys.readouterr().out
        assert "Duplicator wins at q=1" in out
        assert "distinguishing rank: >= 2" in out

    def test_ef_spoiler(self, write_json, capsys):
        G = write_json("k2.json", graph_to_json(complete_graph(2)))
        H = write_json("e2.json", graph_to_json(empty_graph(2)))
        assert cli.run(["ef", G, H, "--q", "2"]) == 0
        out = capsys.readouterr().out
        assert "Spoiler wins at q=2" in out
        assert "distinguishing rank: 2" in out

    def test_param_pathwidth(self, write_json, capsys):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        assert cli.run(["param", graph, "--which", "pw"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_param_star_chromatic(self, write_json, capsys):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        assert cli.run(["param", graph, "--which", "starchrom"]) == 0
        assert json.loads(capsys.readouterr().out)["star_chromatic_number"] == 3

    def test_param_over_cap(self, write_json):
        graph = write_json("p40.json", graph_to_json(path_graph(40)))
        assert cli.run(["param", graph, "--which", "pw"]) == 2

    def test_perturb_sets(self, write_json, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        sets = write_json("sets.json", {"sets": [[0, 1, 2]]})
        assert cli.run(["perturb", graph, "--sets", sets]) == 0
        assert json.loads(capsys.readouterr().out)["edges"] == [[0, 2]]

    def test_perturb_partition(self, write_json, capsys):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        partition = write_json("parts.json", {"parts": {"1": [0, 1, 2]}})
        assert cli.run(["perturb", graph, "--partition", partition]) == 0
        assert json.loads(capsys.readouterr().out)["edges"] == [[0, 2]]

    def test_verify_lemma_perturb(self, write_json, capsys):
        graph = write_json("p4.json", graph_to_json(path_graph(4)))
        sets = write_json("sets.json", {"sets": [[0, 1], [1, 2, 3], []]})
        assert cli.run(["verify-lemma-perturb", graph, sets]) == 0
        assert capsys.readouterr().out.startswith("EQUIVALENT")


# ============================================================================
# TEST 4: USAGE ERRORS
# ============================================================================

class TestUsageErrors:
    """Exit 64 with an [ERROR] line on stderr."""

    def test_missing_file(self, tmp_path, capsys):
        assert cli.run(["param", str(tmp_path / "absent.json"), "--which", "pw"]) == 64
        assert "[ERROR]" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[")
        assert cli.run(["param", str(path), "--which", "pw"]) == 64

    def test_graph_without_order(self, write_json):
        assert cli.run(["param", write_json("g.json", {"edges": []}), "--which", "pw"]) == 64

    def test_zero_budget(self, write_json):
        graph = write_json("p3.json", graph_to_json(path_graph(3)))
        assert cli.run(["param", graph, "--which", "pw", "--budget", "0"]) == 64

    def test_unknown_subcommand(self):
        assert cli.run(["shrink"]) == 64

    def test_no_arguments(self):
        assert cli.run([]) == 64
