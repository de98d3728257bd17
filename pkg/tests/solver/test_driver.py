import math

import numpy as np
import pytest

from spectral.problems import SpectrumSpec, make_diagonal_problem, make_random_problem
from spectral.rng import PROBLEM_STREAM, make_stream
from spectral.solver import MethodId, RunConfig, Termination, run_gradient_method


@pytest.fixture(scope="module")
def set1_problem():
    return make_random_problem(50, 100.0, SpectrumSpec.parse("set1"), make_stream(3, PROBLEM_STREAM), seed=3)


def config_for(method: MethodId, **kwargs) -> RunConfig:
    if method is MethodId.FAMILY_FIXED:
        kwargs.setdefault("gamma", 0.5)
    return RunConfig(method=method, **kwargs)


class TestTermination:
    def test_single_exact_step(self):
        problem = make_diagonal_problem(np.array([1.0, 4.0]))
        trace = run_gradient_method(problem, np.array([0.0, 1.0]), RunConfig(method=MethodId.SD))
        assert trace.termination is Termination.CONVERGED
        assert trace.iterations == 1
        assert trace.records[0].alpha == pytest.approx(0.25)
        assert math.isnan(trace.records[-1].alpha)
        assert [record.k for record in trace.records] == [1, 2]

    def test_start_at_solution(self, two_dim_problem):
        trace = run_gradient_method(two_dim_problem, np.zeros(2), RunConfig(method=MethodId.BB1))
        assert trace.termination is Termination.CONVERGED
        assert trace.iterations == 0
        assert len(trace.records) == 1

    def test_max_iter(self, two_dim_problem):
        config = RunConfig(method=MethodId.BB1, epsilon=1e-12, max_iter=3)
        trace = run_gradient_method(two_dim_problem, np.ones(2), config)
        assert trace.termination is Termination.MAX_ITER
        assert trace.iterations == 3
        assert not trace.solved

    def test_gradient_norms_and_objective(self, two_dim_problem):
        trace = run_gradient_method(two_dim_problem, np.ones(2), RunConfig(method=MethodId.BB1))
        assert trace.records[0].grad_norm == pytest.approx(math.sqrt(1.0 + 100.0**2))
        assert trace.records[0].f_value == pytest.approx(0.5 * (1.0 + 100.0))
        assert trace.final_grad_norm <= 1e-6 * trace.records[0].grad_norm


class TestMethods:
    @pytest.mark.parametrize("method", list(MethodId))
    def test_every_method_converges(self, method, set1_problem):
        trace = run_gradient_method(set1_problem, np.ones(50), config_for(method))
        assert trace.termination is Termination.CONVERGED
        assert np.all(trace.alphas > 0)

    def test_fixed_gamma_one_is_bb1(self, set1_problem):
        bb1 = run_gradient_method(set1_problem, np.ones(50), RunConfig(method=MethodId.BB1))
        family = run_gradient_method(set1_problem, np.ones(50), RunConfig(method=MethodId.FAMILY_FIXED, gamma=1.0))
        np.testing.assert_array_equal(bb1.alphas, family.alphas)

    @pytest.mark.parametrize(
        "method", [MethodId.BB1, MethodId.BB2, MethodId.P, MethodId.FAMILY_FIXED, MethodId.FAMILY_RANDOM]
    )
    def test_steps_stay_in_spectral_range_near_solution(self, method, set1_problem):
        config = config_for(method, epsilon=1e-15, max_iter=500)
        trace = run_gradient_method(set1_problem, np.ones(50), config)
        assert trace.final_grad_norm < 1e-10 * trace.records[0].grad_norm
        assert np.all(trace.alphas >= (1.0 - 1e-12) / set1_problem.v.max())
        assert np.all(trace.alphas <= (1.0 + 1e-12) / set1_problem.v.min())

    def test_deterministic(self, set1_problem):
        config = RunConfig(method=MethodId.FAMILY_RANDOM, seed=7)
        first = run_gradient_method(set1_problem, np.ones(50), config)
        second = run_gradient_method(set1_problem, np.ones(50), config)
        np.testing.assert_array_equal(first.alphas, second.alphas)

    def test_record_gradients(self, two_dim_problem):
        config = RunConfig(method=MethodId.BB1, record_gradients=True)
        trace = run_gradient_method(two_dim_problem, np.ones(2), config)
        assert len(trace.eigen_gradients) == len(trace.records)
        np.testing.assert_allclose(trace.eigen_gradients[0], [1.0, 100.0])

    def test_label(self, set1_problem):
        trace = run_gradient_method(set1_problem, np.ones(50), RunConfig(method=MethodId.ATC1, m=30))
        assert trace.label == "ATC1(m=30)"
