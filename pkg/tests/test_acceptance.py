"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from divforge.acceptance import CHECKS, run_row


@pytest.mark.parametrize("number", [n for n, *_ in CHECKS], ids=[f"criterion-{n}" for n, *_ in CHECKS])
def test_criterion(number, capsys):
    row = run_row(number)
    with capsys.disabled():
        print("\n" + row.line())
    assert row.passed, row.line()
