import pytest

from seqcomplexity.batteries import ALIASES, SUITES, BatteryResult, run_suite

FAST = [name for name in SUITES if name != "oracle-moc"]


@pytest.mark.parametrize("name", FAST)
def test_suite_has_no_failures(name):
    result = run_suite(name)
    assert result.checked > 0
    assert result.passed, result.failures


@pytest.mark.parametrize("alias", sorted(ALIASES))
def test_aliases_resolve(alias):
    assert ALIASES[alias] in SUITES


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_failures_are_capped():
    r = BatteryResult("x", max_failures=2)
    for i in range(5):
        r.record(False, i)
    assert r.failure_count == 5 and r.failures == [0, 1]
    assert r.summary() == "FAIL x: 5 checks, 5 failures"


def test_small_oracle_run():
    from seqcomplexity.batteries import oracle_moc

    assert oracle_moc(n_random=20, length=120).passed
