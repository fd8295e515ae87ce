"""One test per acceptance criterion; each prints a PASS/FAIL line with its measurements."""
import pytest

from eulerlab.acceptance import CRITERIA, c07_corrected, run_criterion


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA], ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number, bank, capsys):
    res = run_criterion(number, bank)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


def test_diagnostic_corrected_drh(bank, capsys):
    res = c07_corrected(bank)
    with capsys.disabled():
        print("\n" + res.line())
    assert not res.gating
