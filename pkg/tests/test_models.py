"""Unit tests for reports, certificates and run configuration."""

import json

import pytest
from pydantic import ValidationError

from models import CheckReport, DimCertificate, RunConfig, SuiteState, write_reports


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for key in ("DUPLEX_MODE", "DUPLEX_SEED", "DUPLEX_OUTPUT", "DUPLEX_BASIS_CAP"):
        monkeypatch.delenv(key, raising=False)


def test_report_ids_are_deterministic():
    a = CheckReport.create("hecke_relations", "relations", {"r": 1, "m": 2}, "pass")
    b = CheckReport.create("hecke_relations", "relations", {"m": 2, "r": 1}, "pass")
    c = CheckReport.create("hecke_relations", "relations", {"r": 1, "m": 3}, "pass")
    assert a.id == b.id
    assert a.id != c.id
    assert len(a.id) == 16


def test_fail_needs_witness_or_gap():
    with pytest.raises(ValidationError):
        CheckReport.create("omega_transport", "omega", {}, "fail")
    with pytest.raises(ValidationError):
        CheckReport.create("omega_transport", "omega", {}, "fail", dimensions={"rank_gap": 0})
    assert CheckReport.create("omega_transport", "omega", {}, "fail", dimensions={"rank_gap": 2})
    assert CheckReport.create("omega_transport", "omega", {}, "fail", witnesses=["(1/2)"])


def test_skipped_report_and_summary_line():
    report = CheckReport.skipped("duality", "duality", {"r": 9, "m": 9}, "too big")
    assert report.status == "skipped"
    assert report.summary_line() == "[!] duality r=9 m=9: too big"

    passed = CheckReport.create("matsumoto", "relations", {"r": 1, "m": 2}, "pass")
    assert passed.passed
    assert passed.summary_line() == "[OK] matsumoto r=1 m=2"
    timed = passed.model_copy(update={"wall_time": 0.5})
    assert timed.summary_line() == "[OK] matsumoto r=1 m=2 (0.50s)"


def test_write_reports_is_stable(tmp_path):
    report = CheckReport.create("matsumoto", "relations", {"r": 1, "m": 2}, "pass").model_copy(
        update={"wall_time": 1.25}
    )
    path = tmp_path / "out" / "report.json"
    first = write_reports([report], str(path))
    second = write_reports([report], str(path))
    assert first == second == path.read_text()

    document = json.loads(first)
    assert document["schema"] == 1
    assert document["reports"][0]["schema"] == 1
    assert "wall_time" not in document["reports"][0]

    timed = json.loads(write_reports([report], str(path), record_timings=True))
    assert timed["reports"][0]["wall_time"] == 1.25


def test_evaluated_certificate_needs_two_points():
    with pytest.raises(ValidationError):
        DimCertificate(dimension=3, method="evaluated", points=["1/2"])
    assert DimCertificate(dimension=3, method="exact").dimension == 3


def test_run_config_defaults_and_cap():
    config = RunConfig()
    assert (config.r, config.m, config.mode, config.seed) == (1, 2, "eval", 0)
    assert config.within_cap
    assert not RunConfig(r=9, m=9).within_cap
    with pytest.raises(ValidationError):
        RunConfig(r=0)


def test_run_config_reads_environment(monkeypatch):
    monkeypatch.setenv("DUPLEX_MODE", "exact")
    monkeypatch.setenv("DUPLEX_SEED", "42")
    config = RunConfig()
    assert config.mode == "exact"
    assert config.seed == 42


def test_empty_config_file_uses_defaults(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("")
    config = RunConfig.from_env_file(str(path))
    assert (config.r, config.m, config.mode, config.seed) == (1, 2, "eval", 0)


def test_config_file_values_and_overrides(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("R=2\nM=3\nMODE=EXACT\nSEED=9\nRECORD_TIMINGS=yes\n")
    config = RunConfig.from_env_file(str(path), seed=11, m=None)
    assert (config.r, config.m, config.mode, config.seed) == (2, 3, "exact", 11)
    assert config.record_timings


def test_suite_state_failed_flag():
    state = SuiteState(command="relations")
    assert not state.failed
    bad = CheckReport.create("matsumoto", "relations", {}, "fail", witnesses=["x"])
    assert state.model_copy(update={"reports": [bad]}).failed
    assert state.model_copy(update={"errors": ["boom"]}).failed
