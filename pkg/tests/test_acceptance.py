"""Acceptance criteria 1-11, one line each. All arithmetic is exact: tolerance zero."""

import pytest

from ruledsymp import verify

CRITERIA = sorted(verify.SUITES.items(), key=lambda item: item[1][0])


@pytest.mark.parametrize("suite", [name for name, _ in CRITERIA],
                         ids=[f"criterion{c:02d}-{name}" for name, (c, _) in CRITERIA])
def test_criterion(suite, capsys):
    result = verify.run_suite(suite, bound=30, seed=0)
    passed = sum(c.ok for c in result.checks)
    line = (f"ACCEPTANCE criterion {result.criterion:2d} [{suite}]: "
            f"{'PASS' if result.ok else 'FAIL'} ({passed}/{len(result.checks)} checks, {result.seconds:.2f} s)")
    with capsys.disabled():
        print("\n" + line)
    assert result.error is None, result.error
    failed = [(c.name, c.expected, c.actual) for c in result.checks if not c.ok]
    assert not failed, failed
