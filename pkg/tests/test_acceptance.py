"""All twelve acceptance criteria at their stated tolerances.

One ``[PASS]``/``[FAIL]`` line per criterion is printed to the terminal even
without ``-s``.
"""

import pytest

from flipspec import acceptance

TOL, ORDER = 1e-9, 3


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in acceptance.run_all(TOL, ORDER)}


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(results, number, capsys):
    r = results[number]
    with capsys.disabled():
        print("\n" + r.line(), end="")
    assert r.passed, r.detail


def test_criteria_are_numbered_consecutively(results):
    assert sorted(results) == list(range(1, 13))
