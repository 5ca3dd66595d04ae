"""Acceptance gate: every criterion at full size, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v` (or `dendroscope verify full`,
which prints the same lines).
"""

import pytest

from dendroscope import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.CRITERIA, ids=lambda c: c.__name__.removeprefix("criterion_")
)
def test_criterion(criterion):
    result = criterion("full")
    status = "PASS" if result.ok else "FAIL"
    print(f"[{status}] {result.name}: {result.detail} ({result.seconds:.2f}s)")
    assert result.ok, result.detail
    assert result.within_budget, (
        f"{result.name} took {result.seconds:.2f}s, budget {result.budget_seconds}s"
    )
