import json
import subprocess
import sys

import pytest

from convexbounds.cli import main


def run(*argv):
    return main(list(argv))


class TestExitCodes:
    def test_verify_holds(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert run("verify", "--theorems", "T3,T6", "--cases", "200", "--seed", "1", "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["summary"]["total"]["violations"] == 0
        assert "T3/as-derived" in capsys.readouterr().out

    def test_falsify_printed_t5(self, tmp_path, capsys):
        out = tmp_path / "cx.json"
        assert run("falsify", "--theorem", "T5", "--variant", "as-printed", "--budget", "500", "--out", str(out)) == 1
        assert "counterexample" in capsys.readouterr().out
        assert json.loads(out.read_text())["counterexample"]["violation"] > 0

    def test_falsify_nothing_found(self, tmp_path):
        assert run("falsify", "--theorem", "thm3", "--budget", "20", "--out", str(tmp_path / "cx.json")) == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "--theorems", "BOGUS"],
            ["verify", "--cases", "0"],
            ["falsify", "--budget", "10"],
            ["falsify", "--theorem", "T3,T4"],
            ["nonsense"],
            [],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert run(*argv) == 2
        assert "error" in capsys.readouterr().err

    def test_verify_violation_exit(self, tmp_path):
        assert run("verify", "--theorems", "C5", "--variant", "as-printed", "--cases", "20", "--out", str(tmp_path / "r.json")) == 1

    def test_missing_report_is_runtime_error(self, tmp_path):
        assert run("report", str(tmp_path / "nope.json")) == 2


class TestOptions:
    def test_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CONVEXBOUNDS_OUTPUT_DIR", str(tmp_path))
        assert run("verify", "--theorems", "T8", "--cases", "3") == 0
        assert (tmp_path / "verify.json").exists()

    def test_config_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"theorems": "T4", "cases": 4, "seed": 9, "format": "csv"}))
        out = tmp_path / "r.csv"
        assert run("verify", "--config", str(cfg), "--cases", "2", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 3 and lines[0].startswith("case_id,theorem_id")

    def test_bad_config_key(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"casez": 4}))
        assert run("verify", "--config", str(cfg)) == 2

    def test_compare_printed(self, tmp_path):
        out = tmp_path / "r.json"
        # printed results are reported alongside but do not change the exit code
        assert run("verify", "--theorems", "T3,C5", "--cases", "10", "--compare-printed", "--out", str(out)) == 0
        groups = json.loads(out.read_text())["summary"]["by_theorem"]
        assert set(groups) == {"T3/as-derived", "C5/as-derived", "C5/as-printed"}
        assert groups["C5/as-printed"]["violations"] > 0

    def test_tightness_and_report(self, tmp_path, capsys):
        t = tmp_path / "t.json"
        assert run("tightness", "--theorem", "HH_RIGHT", "--budget", "40", "--out", str(t)) == 0
        assert "min_slack" in json.loads(t.read_text())
        r = tmp_path / "r.json"
        run("verify", "--theorems", "T7", "--cases", "5", "--out", str(r))
        csv_out = tmp_path / "r.csv"
        assert run("report", str(r), "--format", "csv", "--out", str(csv_out)) == 0
        assert len(csv_out.read_text().splitlines()) == 6


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "convexbounds", "verify", "--theorems", "T8", "--cases", "2", "--out", str(tmp_path / "r.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
