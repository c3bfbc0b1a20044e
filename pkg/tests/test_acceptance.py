"""Acceptance criteria, one test each.

Run under pytest for the usual report (a pass/fail line per criterion is also
printed in the terminal summary), or directly with ``python3
tests/test_acceptance.py`` for just the lines.
"""

import sys

import pytest

from waringsing.poly import Poly
from waringsing.resultants import sylvester_det_poly
from waringsing.verify import CRITERIA, PASS, Context, reference_R2, run_criterion

OUTCOMES = []


def _param(c):
    marks = [pytest.mark.xfail(strict=True, reason=c.expected_failure)] if c.expected_failure else []
    return pytest.param(c, id=f"criterion-{c.number:02d}", marks=marks)


@pytest.mark.parametrize("criterion", [_param(c) for c in CRITERIA])
def test_criterion(criterion):
    outcome = run_criterion(criterion, Context())
    OUTCOMES.append(outcome)
    print(outcome.line())
    assert outcome.status == PASS, outcome.detail


def test_criterion_1_holds_up_to_the_unit_b_squared():
    # the literal identity fails; this is the corrected form that does hold
    b = Poly.var(2, 1)
    assert sylvester_det_poly(3) == reference_R2(3) * b ** 2


if __name__ == "__main__":
    results = [run_criterion(c, Context()) for c in CRITERIA]
    for o in results:
        print(o.line())
    sys.exit(0 if all(o.ok for o in results) else 1)
