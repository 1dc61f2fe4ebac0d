"""Acceptance criteria 1-11, one test each, at their stated tolerances (all exact)."""

import json

import pytest

from wonderlat import acceptance

# stated runtime budgets in seconds
BUDGET = {1: 300, 2: 120, 3: 300, 4: 120, 5: 300, 6: 60, 7: 600, 8: 60, 9: 120, 10: 300,
          11: 600}


@pytest.mark.parametrize("cid", sorted(acceptance.CRITERIA))
def test_criterion(cid, acceptance_lines):
    res = acceptance.run_criterion(cid)
    line = (f"criterion {cid}: {'PASS' if res.passed else res.status.upper()} "
            f"({res.title}, {res.runtime:.1f}s)")
    print(line)
    acceptance_lines.append(line)
    assert res.status == "pass", json.dumps(res.detail, sort_keys=True, default=str)[:2000]
    assert res.runtime < BUDGET[cid]
