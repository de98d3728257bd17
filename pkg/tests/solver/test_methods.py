import numpy as np
import pytest

from spectral.exceptions import MissingParameter
from spectral.problems import SpectrumKind, make_diagonal_problem, make_nonrand_problem
from spectral.solver import (
    FamilySequence,
    MethodId,
    RunConfig,
    StepContext,
    first_stepsize,
    make_method,
    resolve_parameters,
)
from spectral.stepsize import StepInterval


class TestResolveParameters:
    def test_cyclic_defaults(self):
        assert resolve_parameters(RunConfig(method=MethodId.CBB1))["m"] == 3
        assert resolve_parameters(RunConfig(method=MethodId.CP))["m"] == 4

    def test_adaptive_defaults(self):
        parameters = resolve_parameters(RunConfig(method=MethodId.ABBMIN2))
        assert (parameters["tau"], parameters["m"]) == (0.9, 9)

    @pytest.mark.parametrize(
        "kind, expected",
        [(SpectrumKind.SET1, 30), (SpectrumKind.SET5, 30), (SpectrumKind.EVEN, 30), (SpectrumKind.SET3, 8), (None, 8)],
    )
    def test_atc_cycle_depends_on_kind(self, kind, expected):
        assert resolve_parameters(RunConfig(method=MethodId.ATC2), kind)["m"] == expected

    def test_sdc_on_nonrand(self):
        parameters = resolve_parameters(RunConfig(method=MethodId.SDC), SpectrumKind.NONRAND)
        assert (parameters["h"], parameters["m"]) == (30, 2)
        parameters = resolve_parameters(RunConfig(method=MethodId.SDC), SpectrumKind.SET1)
        assert (parameters["h"], parameters["m"]) == (8, 6)

    def test_explicit_values_win(self):
        parameters = resolve_parameters(RunConfig(method=MethodId.ATC1, m=5), SpectrumKind.SET1)
        assert parameters["m"] == 5


class TestMakeMethod:
    def test_family_fixed_needs_gamma(self, two_dim_problem):
        with pytest.raises(MissingParameter):
            make_method(RunConfig(method=MethodId.FAMILY_FIXED), two_dim_problem)

    def test_first_step_is_exact_line_search(self, two_dim_problem):
        g = np.array([1.0, 1.0])
        method = make_method(RunConfig(method=MethodId.BB2), two_dim_problem)
        alpha = method.initial(StepContext(k=1, g=g, grad_norm=float(np.linalg.norm(g))))
        assert alpha == pytest.approx(first_stepsize(two_dim_problem, g))
        assert alpha == pytest.approx(2.0 / 101.0)

    def test_methods_own_their_state(self, two_dim_problem):
        config = RunConfig(method=MethodId.ATC1, m=3)
        first, second = make_method(config, two_dim_problem), make_method(config, two_dim_problem)
        first.advance(0.5)
        assert second.state.prev_alpha is None
        assert second.state.k == 1

    def test_nonrand_problem_carries_kind(self):
        method = make_method(RunConfig(method=MethodId.SDC), make_nonrand_problem(10, 100.0))
        assert (method.state.h, method.state.m) == (30, 2)


class TestFamilySequence:
    def test_reads_gammas_and_repeats_last(self):
        problem = make_diagonal_problem(np.array([1.0, 4.0]))
        method = FamilySequence(RunConfig(method=MethodId.FAMILY_FIXED, gamma=0.5), problem, [1.0, 0.0])
        interval = StepInterval(bb1=1.0, bb2=0.25)
        g = np.ones(2)
        alphas = [method.step(StepContext(k=k, g=g, grad_norm=1.0, interval=interval)) for k in (2, 3, 4)]
        assert alphas == [1.0, 0.25, 0.25]
        assert method.label == "FAMILY_SEQUENCE"

    def test_empty_sequence(self, two_dim_problem):
        with pytest.raises(MissingParameter):
            FamilySequence(RunConfig(method=MethodId.FAMILY_FIXED, gamma=0.5), two_dim_problem, [])
