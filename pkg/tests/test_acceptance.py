"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The criteria live in ``cdhlab.acceptance`` so ``cdhlab selftest`` runs the
same checks. Run with ``pytest tests/test_acceptance.py -v -s`` to see the
lines inline; they are printed with capture disabled either way.
"""

import pytest

from cdhlab import acceptance


@pytest.mark.parametrize("number", range(1, len(acceptance.CRITERIA) + 1))
def test_criterion(number, capsys):
    result = acceptance.CRITERIA[number - 1](acceptance.DEFAULT_SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_fault_injection_flips_criteria(monkeypatch):
    monkeypatch.setenv("CDHLAB_INJECT_FAULT", "all")
    for number in (5, 6, 7, 8, 10):
        assert not acceptance.CRITERIA[number - 1](acceptance.DEFAULT_SEED).passed
