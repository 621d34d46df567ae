"""Command-line entry point: documents, exit codes, determinism."""
import json
import subprocess
import sys

import pytest

from bergeforest.bounds import BoundResult
from bergeforest.cli import main, parse_params
from bergeforest.constructions import ConstructionReport
from bergeforest.hypergraph import Hypergraph
from bergeforest.search import SearchOutcome


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def htilde_file(tmp_path, capsys):
    path = tmp_path / "h.json"
    code, _, _ = run(capsys, "construct", "--family", "htilde", "--params", "n=8,lengths=3:3,r=3",
                     "--out", str(path))
    assert code == 0
    return path


class TestConstruct:
    def test_report(self, capsys):
        code, out, _ = run(capsys, "construct", "--family", "clique-blocks", "--params", "n=8,l=4,r=3")
        assert code == 0
        rep = ConstructionReport.from_dict(json.loads(out))
        assert rep.hypergraph.e == 8

    def test_out_file(self, htilde_file):
        assert Hypergraph.from_json(htilde_file.read_text()).e == 16

    def test_bad_params(self, capsys):
        code, _, err = run(capsys, "construct", "--family", "htilde", "--params", "n=8,lengths=3:2,r=3")
        assert code == 2
        assert "odd" in err

    def test_colliding_shifts_is_runtime(self, capsys):
        code, _, _ = run(capsys, "construct", "--family", "partition-regular", "--params", "n=4,r=2,d=3")
        assert code == 3


class TestCheck:
    def test_free(self, capsys, htilde_file):
        code, out, _ = run(capsys, "check", "--in", str(htilde_file), "--forest", "P3+P3")
        assert code == 0
        assert json.loads(out) == {"contains": False}

    def test_witness(self, capsys, htilde_file):
        code, out, _ = run(capsys, "check", "--in", str(htilde_file), "--forest", "P3", "--witness")
        doc = json.loads(out)
        assert code == 0 and doc["contains"] and "witness" in doc

    def test_syntax_error(self, capsys, htilde_file):
        code, out, err = run(capsys, "check", "--in", str(htilde_file), "--forest", "P3+")
        assert code == 2
        assert out == ""
        assert "position 3" in err and "^" in err

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 4,\n "r": 2 "edges": []}')
        code, _, err = run(capsys, "check", "--in", str(bad), "--forest", "P1")
        assert code == 3
        assert "bad.json:2:" in err

    def test_invalid_hypergraph(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 4, "r": 2, "edges": [[0, 1], [0, 9]]}')
        code, _, err = run(capsys, "check", "--in", str(bad), "--forest", "P1")
        assert code == 3
        assert "vertex 9" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "check", "--in", str(tmp_path / "nope.json"), "--forest", "P1")
        assert code == 3


class TestBound:
    def test_value(self, capsys):
        code, out, _ = run(capsys, "bound", "--theorem", "gkl-path-i", "--params", "n=8,l=4,r=3")
        assert code == 0
        assert BoundResult.from_dict(json.loads(out)).value == 8

    def test_regime_switch(self, capsys):
        _, out, _ = run(capsys, "bound", "--theorem", "connected-path", "--params", "n=100,l=9,r=3")
        assert json.loads(out)["applicable"] is False
        _, out, _ = run(capsys, "bound", "--theorem", "connected-path", "--params", "n=100,l=9,r=3",
                        "--no-regime-check")
        assert json.loads(out)["value"] == 580

    def test_unknown(self, capsys):
        assert run(capsys, "bound", "--theorem", "nope")[0] == 2

    def test_missing_param(self, capsys):
        assert run(capsys, "bound", "--theorem", "gkl-path-i", "--params", "n=8")[0] == 2

    def test_params(self):
        assert parse_params("n=8, l=4,lengths=3:3") == {"n": 8, "l": 4, "lengths": "3:3"}


class TestTuran:
    def test_exact(self, capsys):
        code, out, err = run(capsys, "turan", "--n", "6", "--r", "3", "--forest", "S2", "--stats")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == 2 and doc["status"] == "exact"
        assert SearchOutcome.from_dict(doc).witness.e == 2
        assert "nodes" in json.loads(err)

    def test_connected_and_seed(self, capsys, htilde_file):
        code, out, _ = run(capsys, "turan", "--n", "8", "--r", "3", "--forest", "P3+P3", "--connected",
                           "--seed-construction", str(htilde_file), "--time-limit", "1")
        doc = json.loads(out)
        assert code == 0 and doc["value"] >= 16 and doc["connected"]

    def test_heuristic(self, capsys):
        code, out, _ = run(capsys, "turan", "--n", "7", "--r", "3", "--forest", "P3", "--heuristic",
                           "--iterations", "5")
        assert code == 0 and json.loads(out)["status"] == "lower_bound_only"

    def test_bad(self, capsys):
        assert run(capsys, "turan", "--n", "2", "--r", "3", "--forest", "S2")[0] == 2
        assert run(capsys, "turan", "--n", "6", "--r", "3", "--forest", "S2", "--workers", "0")[0] == 2


class TestVerify:
    def test_pass(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "star-threshold", "--grid", "count=4")
        assert code == 0
        assert len(out.splitlines()) == 4
        assert "star-threshold" in err

    def test_report_file(self, capsys, tmp_path):
        path = tmp_path / "r.jsonl"
        code, out, _ = run(capsys, "verify", "--suite", "constructions", "--grid",
                           "family=clique-blocks;n=8;l=4;r=3", "--report", str(path))
        assert code == 0
        assert "constructions" in out
        assert json.loads(path.read_text())["verdict"] == "pass"

    def test_unknown_suite(self, capsys):
        assert run(capsys, "verify", "--suite", "nosuchsuite")[0] == 2

    def test_bad_grid(self, capsys):
        assert run(capsys, "verify", "--suite", "star-threshold", "--grid", "count")[0] == 2


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 2 and "usage" in err

    def test_unknown_flag(self, capsys):
        assert run(capsys, "bound", "--theorem", "gkl-path-i", "--bogus")[0] == 2

    def test_module_entry_is_deterministic(self):
        cmd = [sys.executable, "-m", "bergeforest", "turan", "--n", "6", "--r", "3", "--forest", "S2",
               "--workers", "2"]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first == second and first
