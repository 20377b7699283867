"""Acceptance gate: every criterion runs at its stated tolerance, printing
one pass/fail line, and the whole suite must be byte-deterministic from a
clean cache.

The stepping-up criterion is a known red: the stated closed-form bound is
false (it omits a 1/(u+1)^2 factor its own derivation requires; the all-ones
8x8 host at width 3 is a concrete counterexample), so the check reports the
violations and verifies the repaired form instead. The test is strict-xfail:
it will start failing loudly if the check ever turns green.
"""

import io

import pytest

from patex.acceptance import CHECKS, run_suite

NAMES = [name for name, _, _ in CHECKS]


@pytest.fixture(scope="module")
def suite_runs():
    buf1, buf2 = io.StringIO(), io.StringIO()
    results1 = run_suite(stream=buf1)
    results2 = run_suite(stream=buf2)
    return {
        "first": {r.name: r for r in results1},
        "second": {r.name: r for r in results2},
        "report1": buf1.getvalue(),
        "report2": buf2.getvalue(),
    }


def _assert_criterion(suite_runs, name):
    result = suite_runs["first"][name]
    print(f"{'PASS' if result.passed else 'FAIL'} {name}: {result.detail}")
    assert result.passed, result.detail
    if result.limit is not None:
        assert result.elapsed < result.limit, f"{name} took {result.elapsed:.1f}s"


def test_criterion_01_containment_oracle(suite_runs):
    _assert_criterion(suite_runs, "containment-oracle-equivalence")


def test_criterion_02_canonical_fixtures(suite_runs):
    _assert_criterion(suite_runs, "canonical-fixtures")


def test_criterion_03_extremal_regression(suite_runs):
    _assert_criterion(suite_runs, "extremal-regression")


def test_criterion_04_supersaturation(suite_runs):
    _assert_criterion(suite_runs, "supersaturation-inequality")


@pytest.mark.xfail(
    strict=True,
    reason="the stated stepping bound omits a 1/(u+1)^2 factor its own "
    "derivation requires and is false as stated (all-ones 8x8 at width 3); "
    "the check records the violations and verifies the repaired form",
)
def test_criterion_05_stepping_up(suite_runs):
    _assert_criterion(suite_runs, "stepping-up-inequality")


def test_criterion_05_repaired_form_verified(suite_runs):
    result = suite_runs["first"]["stepping-up-inequality"]
    assert "violated" in result.detail
    assert "repaired form" in result.detail
    # every corrected-threshold instance satisfied the repaired bound
    import re

    m = re.search(r"held on (\d+)/(\d+) instances", result.detail)
    assert m and m.group(1) == m.group(2) and int(m.group(2)) > 0


def test_criterion_06_tcut_statistics(suite_runs):
    _assert_criterion(suite_runs, "t-cut-statistics")


def test_criterion_07_increment_soundness(suite_runs):
    _assert_criterion(suite_runs, "density-increment-soundness")


def test_criterion_08_lambda_schedule(suite_runs):
    _assert_criterion(suite_runs, "lambda-schedule-identity")


def test_criterion_09_balanced_embedding(suite_runs):
    _assert_criterion(suite_runs, "balanced-embedding-guarantee")


def test_criterion_10_dichotomy(suite_runs):
    _assert_criterion(suite_runs, "dichotomy-soundness")


def test_criterion_11_constants(suite_runs):
    _assert_criterion(suite_runs, "constants-arithmetic")


def test_criterion_12_determinism(suite_runs):
    _assert_criterion(suite_runs, "end-to-end-determinism")
    assert suite_runs["report1"] == suite_runs["report2"], "suite reports differ between runs"


def test_every_check_ran(suite_runs):
    assert set(suite_runs["first"]) == set(NAMES)
    assert set(suite_runs["second"]) == set(NAMES)
