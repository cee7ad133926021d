"""Acceptance criteria: one test per headline claim, with its budget.

Each test delegates to the shared suite so the CLI ``suite`` subcommand and
this module can never disagree, prints the pass/fail line, and enforces the
stated time budget.
"""

from __future__ import annotations

import time

import pytest

from wangtiles.suite import CRITERIA

BUDGETS = {
    "C01": 60, "C02": 30, "C03": 10, "C04": 60, "C05": 30, "C06": 10,
    "C07": 1, "C08": 5, "C09": 120, "C10": 1, "C11": 1, "C12": 1,
    "C13": 120, "C14": 300,
}


@pytest.mark.parametrize("code,name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(code, name, fn):
    t0 = time.time()
    ok, detail = fn()
    elapsed = time.time() - t0
    status = "PASS" if ok else "FAIL"
    print(f"{status} {code} {name} ({elapsed:.1f}s) :: {detail}")
    assert ok, f"{code} {name}: {detail}"
    assert elapsed <= BUDGETS[code], f"{code} exceeded its {BUDGETS[code]}s budget"
