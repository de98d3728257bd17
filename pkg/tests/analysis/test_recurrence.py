import math

import numpy as np
import pytest

from spectral.analysis import (
    THETA,
    TwoDimState,
    h_derivative,
    h_eval,
    h_log_eval,
    log_gradient_norms,
    log_gradient_trajectory,
    log_recurrence_sequence,
    meets_growth_hypothesis,
    recurrence_q_step,
    recurrence_sequence,
    xi_sequence,
)
from spectral.exceptions import TooShort, ZeroGradient
from spectral.problems import make_diagonal_problem
from spectral.solver import FamilySequence, MethodId, RunConfig, run_gradient_method


class TestH:
    @pytest.mark.parametrize("w", [0.0, 0.5, 10.0, 1e6])
    def test_endpoints(self, w):
        assert h_eval(100.0, w, 1.0) == pytest.approx(1.0)
        assert h_eval(100.0, w, 0.0) == pytest.approx(100.0)

    def test_increasing_and_bounded(self):
        w = np.geomspace(1e-6, 1e6, 50)
        values = np.array([h_eval(50.0, x, 0.3) for x in w])
        assert np.all(np.diff(values) > 0)
        assert np.all((values >= 1.0) & (values <= 50.0))

    def test_derivative_matches_difference(self):
        w, step = 3.0, 1e-6
        difference = (h_eval(20.0, w + step, 0.4) - h_eval(20.0, w - step, 0.4)) / (2 * step)
        assert h_derivative(20.0, w, 0.4) == pytest.approx(difference, rel=1e-6)

    @pytest.mark.parametrize("m", [-30.0, -1.0, 0.0, 2.0, 400.0])
    def test_log_form(self, m):
        if m < 300:
            assert h_log_eval(10.0, m, 0.6) == pytest.approx(math.log(h_eval(10.0, math.exp(m), 0.6)))
        else:
            assert math.isfinite(h_log_eval(10.0, m, 0.6))

    def test_lambda_must_exceed_one(self):
        with pytest.raises(ValueError):
            h_eval(1.0, 1.0, 0.5)


class TestRecurrence:
    def test_gamma_one_step(self):
        state = TwoDimState(lam=10.0, q_prev=2.0, q_curr=3.0)
        assert recurrence_q_step(state, 1.0) == pytest.approx(3.0 / 4.0)
        assert state.advance(1.0) == TwoDimState(lam=10.0, q_prev=3.0, q_curr=0.75)

    def test_invalid_state(self):
        with pytest.raises(ValueError):
            TwoDimState(lam=10.0, q_prev=0.0, q_curr=1.0)

    def test_log_recurrence_matches(self):
        gammas = np.random.default_rng(0).uniform(size=12)
        q = recurrence_sequence(100.0, 2.0, 0.5, gammas)
        M = log_recurrence_sequence(100.0, math.log(2.0), math.log(0.5), gammas)
        n = len(q)
        np.testing.assert_allclose(np.log(q), M[:n], rtol=1e-9, atol=1e-9)

    def test_sequence_length(self):
        q = recurrence_sequence(10.0, 1.0, 1.0, [0.5, 0.5, 0.5])
        assert len(q) == 5

    def test_out_of_range_step(self):
        tiny = TwoDimState(lam=100.0, q_prev=1.657e-174, q_curr=7274.28)
        assert recurrence_q_step(tiny, 1.0) == math.inf
        assert recurrence_q_step(tiny, 0.0) == math.inf
        huge = TwoDimState(lam=100.0, q_prev=1e200, q_curr=1e-100)
        assert recurrence_q_step(huge, 1.0) == 0.0

    def test_sequence_ends_out_of_range(self):
        q = recurrence_sequence(100.0, 1.657e-174, 7274.28, [1.0] * 5)
        np.testing.assert_array_equal(q, [1.657e-174, 7274.28])


class TestLogTrajectory:
    def test_matches_solver(self):
        problem = make_diagonal_problem(np.array([1.0, 4.0]))
        gammas = [0.3, 0.8, 0.5]
        config = RunConfig(method=MethodId.FAMILY_FIXED, epsilon=1e-15, max_iter=4, record_gradients=True)
        trace = run_gradient_method(problem, np.ones(2), config, method=FamilySequence(config, problem, gammas))
        trajectory = log_gradient_trajectory(4.0, np.array([1.0, 4.0]), gammas)
        np.testing.assert_allclose(trajectory, np.log(np.abs(trace.eigen_gradients)), rtol=1e-10, atol=1e-12)

    def test_q_follows_recurrence(self):
        gammas = np.random.default_rng(2).uniform(size=15)
        trajectory = log_gradient_trajectory(100.0, np.array([3.0, -0.5]), gammas)
        M = 2.0 * (trajectory[:, 0] - trajectory[:, 1])
        np.testing.assert_allclose(M, log_recurrence_sequence(100.0, M[0], M[1], gammas), rtol=1e-9, atol=1e-9)

    def test_far_below_underflow(self):
        gammas = np.random.default_rng(5).uniform(size=59)
        log_norms = log_gradient_norms(log_gradient_trajectory(1e3, np.array([1e-12, 1.0]), gammas))
        assert len(log_norms) == 61
        assert np.all(np.isfinite(log_norms))
        assert log_norms[-1] < -1000.0

    def test_zero_component(self):
        with pytest.raises(ZeroGradient):
            log_gradient_trajectory(10.0, np.array([0.0, 1.0]), [0.5])


class TestGrowthHypothesis:
    def test_balanced_start_fails(self):
        assert not meets_growth_hypothesis(1e3, np.array([1.0, 1.0]))

    def test_lopsided_start_meets(self):
        assert meets_growth_hypothesis(1e3, np.array([1e-12, 1.0]))


class TestXi:
    def test_definition(self):
        report = xi_sequence([1.0, 2.0, 3.0], 10.0)
        xi = 3.0 + (THETA - 1.0) * 2.0
        assert [record.k for record in report.records] == [2, 3]
        assert report.records[1].xi_re == pytest.approx(xi.real)
        assert report.records[1].xi_im == pytest.approx(xi.imag)
        assert report.records[0].c1 == pytest.approx(2 * math.log(10.0))

    def test_growth_from_large_start(self):
        gammas = np.random.default_rng(1).uniform(size=30)
        M = log_recurrence_sequence(100.0, 0.0, 60.0, gammas)
        report = xi_sequence(M, 100.0)
        assert report.hypothesis_met
        assert report.bound_holds

    def test_too_short(self):
        with pytest.raises(TooShort):
            xi_sequence([1.0], 10.0)
