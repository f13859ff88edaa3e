"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from spinnet.acceptance import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    line = result.line() + f" ({result.seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, result.detail
