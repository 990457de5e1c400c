"""Acceptance suite: one printed pass/fail line per criterion."""

import pytest

from hermitia.acceptance import criteria, run_criterion

SEED = 0
CRITERIA = criteria(SEED)


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    res = run_criterion(CRITERIA[number - 1], number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.line()


def test_selftest_reports_every_criterion():
    assert len(CRITERIA) == 9
