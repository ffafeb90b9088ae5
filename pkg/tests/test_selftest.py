import json

import pytest

from core.selftest import SUITES, SuiteResult, run_selftest, run_suite, suites_for
from utils.logger import StructuredLogger


def test_examples_scale_runs_only_the_worked_example():
    assert suites_for('examples') == ['worked_example']
    assert suites_for('paper-examples') == ['worked_example']
    assert suites_for('small') == list(SUITES)
    with pytest.raises(ValueError):
        suites_for('huge')


def test_worked_example_suite():
    result = run_suite('worked_example', 'examples', seed=0)
    assert result.passed and result.cases == 5
    assert result.elapsed_ms >= 0


def test_summary_is_deterministic():
    first = run_selftest('examples', seed=3).to_dict()
    second = run_selftest('examples', seed=3).to_dict()
    assert first == second
    assert "elapsed_ms" not in json.dumps(first)
    assert len(first["digest"]) == 64


def test_check_keeps_only_the_first_messages():
    result = SuiteResult("demo")
    for i in range(8):
        result.check(i % 2 == 0, lambda: f"case {i}")
    assert (result.cases, result.failures) == (8, 4)
    assert result.messages == ["case 1", "case 3", "case 5", "case 7"]
    for i in range(4):
        result.check(False, lambda: f"late {i}")
    assert len(result.messages) == 5 and not result.passed


def test_suite_results_reach_the_structured_log(tmp_path):
    log_file = tmp_path / "suites.jsonl"
    run_selftest('examples', seed=0, structured_logger=StructuredLogger(str(log_file)))
    entries = [json.loads(line) for line in log_file.read_text(encoding="utf-8").splitlines()]
    assert [e["event_type"] for e in entries] == ["suite_result"]
    assert entries[0]["data"]["suite"] == "worked_example"


@pytest.mark.parametrize("name", ["recurrences", "identities", "spectral_fixtures", "clique_bounds"])
def test_small_suites_pass(name):
    result = run_suite(name, 'small', seed=0)
    assert result.passed, result.messages
    assert result.cases > 0


@pytest.mark.slow
def test_small_scale_passes_end_to_end(tmp_path):
    summary = run_selftest('small', seed=0, out_dir=str(tmp_path))
    assert summary.passed, [s.messages for s in summary.suites if not s.passed]
    assert "PASSED" in summary.to_text()


@pytest.mark.slow
def test_parallel_run_matches_sequential():
    sequential = run_selftest('small', seed=1, workers=1).to_dict()
    parallel = run_selftest('small', seed=1, workers=2).to_dict()
    assert parallel == sequential


@pytest.mark.slow
def test_full_scale_passes():
    assert run_selftest('full', seed=0).passed
