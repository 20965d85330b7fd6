import json
import subprocess
import sys

import pytest

from expsubord.cli import build_parser, main

FAST = ["--samples", "300", "--tau-grid", "0", "--refine", "2"]


def test_parser_defaults_and_complex_lambda():
    a = build_parser().parse_args(["--lambda", "1,-0.5", "--functional", "T21", "--functional", "zalcman"])
    assert a.lam == 1 - 0.5j and a.functional == ["t21", "zalcman"] and a.samples == 10_000
    assert build_parser().parse_args(["--lambda", "2"]).lam == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--lambda", "1,2,3"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--functional", "hankel"])


def test_json_to_stdout(capsys):
    assert main(FAST + ["--functional", "gamma1", "--functional", "t21"]) == 0
    out, err = capsys.readouterr()
    d = json.loads(out)
    assert [r["theorem"] for r in d["reports"]] == ["star_e.gamma1", "star_e.t21"]
    assert "SHARPNESS_ATTAINED" in err


def test_flagged_exit_code(tmp_path, capsys):
    out = tmp_path / "r.json"
    argv = FAST + ["--class", "convex_e", "--functional", "gamma4", "--out", str(out)]
    assert main(argv) == 1
    assert json.loads(out.read_text())["reports"][0]["verdict"] == "DISCREPANCY_FLAGGED"
    assert main(argv + ["--allow-flags"]) == 0


def test_config_errors_exit_2(capsys):
    assert main(FAST + ["--degree", "7"]) == 2
    assert main(FAST + ["--mu", "-1"]) == 2
    assert main(FAST + ["--conjecture", "6", "--truncation", "6"]) == 2
    assert "error" in capsys.readouterr().err


def test_unwritable_output_exit_3(tmp_path, capsys):
    assert main(FAST + ["--functional", "gamma1", "--out", str(tmp_path / "no" / "r.json")]) == 3


def test_csv_and_markdown(capsys):
    assert main(FAST + ["--functional", "zalcman", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("theorem,branch,claimed")
    assert main(FAST + ["--functional", "zalcman", "--format", "md"]) == 0
    assert "| star_e.zalcman |" in capsys.readouterr().out


def test_conjecture_adds_to_selection(capsys):
    assert main(FAST + ["--functional", "gamma1", "--conjecture", "5", "--truncation", "8"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert [r["theorem"] for r in d["reports"]] == ["star_e.gamma1", "star_e.gamma5.conjecture"]


def test_export_catalog(capsys):
    assert main(["--export-catalog"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["id"] for r in rows} >= {"f1", "f7", "zalcman_star"}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "expsubord", "--export-catalog"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)
