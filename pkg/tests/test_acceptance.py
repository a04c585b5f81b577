"""Acceptance gate: every verification criterion, one pass/fail line each.

The whole suite runs once (cached at module scope); each test then asserts
its own criterion and prints the PASS/FAIL line with the measured margins,
so `pytest -v -s tests/test_acceptance.py` reads as a checklist.
"""

import pytest

from skewflow.verify import SUITES, run_suite

ALL_CHECKS = [
    (suite, name) for suite, checks in SUITES.items() for name, _ in checks
]

_cache = {}


def _results():
    if "r" not in _cache:
        _cache["r"] = {(r.suite, r.name): r for r in run_suite()}
    return _cache["r"]


def test_every_criterion_is_covered():
    assert len(ALL_CHECKS) == 12
    assert set(_results()) == set(ALL_CHECKS)


@pytest.mark.parametrize(
    "suite,name", ALL_CHECKS, ids=[f"{s}/{n}" for s, n in ALL_CHECKS]
)
def test_criterion(suite, name):
    result = _results()[(suite, name)]
    print(result.line)
    assert result.passed, result.line
