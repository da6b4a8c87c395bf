"""Acceptance criteria 1-9 at full size, each against its runtime budget.

Every criterion prints one PASS/FAIL line.  Run alone with::

    pytest tests/test_acceptance.py -s
"""

import pytest

from locsym.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA],
                         ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    r = run_criterion(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.ok, r.detail
    assert r.in_time, f"{r.seconds:.2f}s exceeds the {r.limit:g}s budget"
