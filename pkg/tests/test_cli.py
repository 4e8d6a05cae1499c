"""Tests for the command-line front end."""

import argparse
import json

import pytest
from unittest.mock import patch

from cli import parse_positions, resolve_ambient, run
from models import CheckReport, SuiteState


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for key in ("DUPLEX_MODE", "DUPLEX_SEED", "DUPLEX_OUTPUT", "DUPLEX_BASIS_CAP"):
        monkeypatch.delenv(key, raising=False)


def test_parse_positions():
    assert parse_positions("3,1,3") == [1, 3]
    assert parse_positions("") == []
    with pytest.raises(argparse.ArgumentTypeError):
        parse_positions("1,x")


def test_resolve_ambient():
    assert resolve_ambient("2r+2", 1) == 4
    assert resolve_ambient("2r + 4", 2) == 8
    assert resolve_ambient("6", 1) == 6
    for bad in ("5", "8", "0", "wide"):
        with pytest.raises(ValueError):
            resolve_ambient(bad, 1)


def test_relations_writes_report(tmp_path, capsys):
    path = tmp_path / "report.json"

    code = run(["relations", "--family", "heckeB", "--output", str(path)])

    assert code == 0
    document = json.loads(path.read_text())
    assert document["schema"] == 1
    assert [rep["check"] for rep in document["reports"]] == ["hecke_relations"]
    assert "wall_time" not in document["reports"][0]
    assert "[OK] Wrote 1 reports" in capsys.readouterr().out


def test_timings_flag_records_wall_time(tmp_path):
    path = tmp_path / "report.json"

    assert run(["relations", "--family", "matsumoto", "--m", "1", "--timings", "--output", str(path)]) == 0

    report = json.loads(path.read_text())["reports"][0]
    assert isinstance(report["wall_time"], float)


def test_output_is_byte_identical_across_runs(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"

    run(["omega", "--all", "--output", str(first)])
    run(["omega", "--all", "--output", str(second)])

    assert first.read_bytes() == second.read_bytes()


def test_oversized_basis_skips_with_success(tmp_path):
    path = tmp_path / "report.json"

    code = run(["duality", "--r", "9", "--m", "9", "--output", str(path)])

    assert code == 0
    reports = json.loads(path.read_text())["reports"]
    assert [rep["status"] for rep in reports] == ["skipped"]


@pytest.mark.parametrize(
    "argv",
    [
        ["omega", "--I", "1", "--J", "1"],
        ["schur", "--ambient", "5"],
        ["relations", "--r", "0"],
        ["relations", "--family", "typeD"],
    ],
)
def test_usage_errors_exit_2(argv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(argv + ["--output", str(tmp_path / "report.json")])
    assert exc.value.code == 2


def test_failed_check_exits_1(tmp_path):
    bad = CheckReport.create("hecke_relations", "relations", {"r": 1, "m": 2}, "fail", witnesses=["quadratic[i=0]@(1,1)"])
    state = SuiteState(command="relations", reports=[bad])

    with patch("cli.run_suite", return_value=state):
        code = run(["relations", "--output", str(tmp_path / "report.json")])

    assert code == 1


def test_suite_error_exits_1(tmp_path, capsys):
    state = SuiteState(command="relations", errors=["Relations error in matsumoto: boom"])

    with patch("cli.run_suite", return_value=state):
        code = run(["relations", "--output", str(tmp_path / "report.json")])

    assert code == 1
    assert "boom" in capsys.readouterr().err


def test_config_file_feeds_report_all(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("R=1\nM=1\nSEED=5\n")
    captured = {}

    def fake_run_suite(command, config, options):
        captured.update(command=command, config=config, options=options)
        return SuiteState(command=command, config=config)

    with patch("cli.run_suite", side_effect=fake_run_suite):
        code = run(["report-all", "--config", str(config), "--output", str(tmp_path / "report.json")])

    assert code == 0
    assert captured["command"] == "report-all"
    assert (captured["config"].r, captured["config"].m, captured["config"].seed) == (1, 1, 5)


@pytest.mark.integration
def test_report_all_is_byte_identical_for_a_fixed_seed(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"

    run(["report-all", "--m", "1", "--seed", "3", "--output", str(first)])
    run(["report-all", "--m", "1", "--seed", "3", "--output", str(second)])

    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["reports"]


def test_omega_pair_prints_word_and_rank(tmp_path, capsys):
    code = run(["omega", "--I", "1", "--J", "2", "--output", str(tmp_path / "report.json")])

    out = capsys.readouterr().out
    assert code == 0
    assert "[Omega] word: " in out
    assert "[Omega] rank 4/4 (projected 4, domain 4)" in out
