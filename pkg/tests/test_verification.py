import pytest

from ssmana.verification import CHECKS, run_checks, violation

FAST_CHECKS = [
    "atoms",
    "derived",
    "sampling",
    "functional_equation",
    "factorization",
    "pisot",
    "phase_constants",
    "bad_steps",
    "forced_chain",
    "exponent",
    "normality",
]


def test_registry():
    assert set(FAST_CHECKS) <= set(CHECKS)
    assert {"oscillatory", "cover"} <= set(CHECKS)


@pytest.mark.parametrize("name", FAST_CHECKS)
def test_check_passes(name):
    assert run_checks([name]) == []


@pytest.mark.slow
def test_full_battery():
    assert run_checks(progress=True) == []


def test_unknown_check():
    with pytest.raises(KeyError):
        run_checks(["no_such_check"])


def test_failures_become_violations(mocker):
    def broken(seed):
        raise RuntimeError("kernel diverged")

    def reporting(seed):
        return [violation("reporting", "bad value", seed=seed)]

    mocker.patch.dict(CHECKS, {"broken": broken, "reporting": reporting})
    found = run_checks(["broken", "reporting"], seed=5)
    assert found == [
        {"check": "broken", "message": "RuntimeError: kernel diverged"},
        {"check": "reporting", "message": "bad value", "seed": 5},
    ]
