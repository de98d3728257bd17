import numpy as np
import pytest

from bench.verify import (
    CheckResult,
    VerifyContext,
    check_atc_vs_bb,
    check_gamma_trend,
    check_nonrand_band,
    check_quasi_newton,
    check_recurrence,
    check_root_monotone,
    check_superlinear,
    check_xi_growth,
    format_report,
    qualifying_start,
    random_pair,
    run_checks,
)
from spectral.analysis import meets_growth_hypothesis
from spectral.rng import make_stream
from spectral.stepsize import StepInterval, psi_eval


def flipped_psi(tau, alpha, pair):
    return -psi_eval(tau, alpha, pair)


def scrambled_psi(tau, alpha, pair):
    interval = StepInterval.from_pair(pair)
    return (1.0 - tau) * pair.yy * (alpha**3 - alpha**2 * interval.bb2) - tau * pair.sy * (alpha - interval.bb1)


class TestRandomPair:
    def test_curvature_and_width(self):
        rng = make_stream(0)
        for n in (2, 10):
            interval = StepInterval.from_pair(random_pair(rng, n))
            assert 1 / 100 <= interval.bb2 < interval.bb1 <= 1.0


class TestFastChecks:
    @pytest.mark.parametrize(
        "check", [check_quasi_newton, check_root_monotone, check_recurrence, check_superlinear, check_xi_growth]
    )
    def test_passes(self, check):
        passed, detail = check(VerifyContext(tier="fast"))
        assert passed, detail

    def test_flipped_psi_fails(self):
        passed, _ = check_root_monotone(VerifyContext(tier="fast", psi=flipped_psi))
        assert not passed

    def test_scrambled_psi_fails(self):
        passed, _ = check_quasi_newton(VerifyContext(tier="fast", psi=scrambled_psi))
        assert not passed

    def test_recurrence_checks_record_runs(self):
        context = VerifyContext(tier="fast")
        check_recurrence(context)
        assert context.runs
        check_superlinear(context)
        assert len(context.runs) == 4 + 20


class TestQualifyingStart:
    def test_meets_hypothesis(self):
        for seed in range(5):
            x1 = qualifying_start(seed, 1e3)
            assert np.all(np.abs(x1) <= 10.0)
            assert meets_growth_hypothesis(1e3, np.array([1.0, 1e3]) * x1)

    def test_reproducible(self):
        np.testing.assert_array_equal(qualifying_start(7, 1e3), qualifying_start(7, 1e3))


class TestReport:
    def test_format(self):
        results = [CheckResult(1, "quasi-Newton", True, "ok", 0.5), CheckResult(2, "root", False, "bad", 1.25)]
        text = format_report(results)
        assert "FAIL" in text
        assert text.endswith("1/2 checks passed.")

    def test_unknown_tier(self):
        with pytest.raises(ValueError):
            run_checks("medium")


@pytest.mark.slow
def test_fast_tier():
    results = run_checks("fast")
    assert [result.criterion for result in results] == [1, 2, 3, 4, 5, 6, 7, 11]
    assert all(result.passed for result in results), format_report(results)


@pytest.mark.slow
@pytest.mark.parametrize("check", [check_atc_vs_bb, check_nonrand_band, check_gamma_trend])
def test_full_tier_experiments(check):
    passed, detail = check(VerifyContext(tier="full"))
    assert passed, detail
