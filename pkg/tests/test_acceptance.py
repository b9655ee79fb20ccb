"""Acceptance suite: each criterion prints one pass/fail line."""

import pytest

from sphq.corpus import CRITERIA

IDS = ["%02d-%s" % (num, name) for num, name, _ in CRITERIA]


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=IDS)
def test_criterion(num, name, check):
    ok, detail = check()
    print("criterion %02d %-24s %s | %s" % (
        num, name, "PASS" if ok else "FAIL", detail))
    assert ok, detail
