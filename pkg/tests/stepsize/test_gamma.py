import math

import numpy as np
import pytest

from spectral.exceptions import GammaOutOfRange, MissingParameter
from spectral.rng import METHOD_STREAM, make_stream
from spectral.stepsize import (
    GradientPair,
    StepInterval,
    StrategyState,
    atc_step,
    atc_variant_step,
    family_step,
    gamma_cyclic,
    gamma_fixed,
    gamma_random,
)


class TestStrategyState:
    def test_advance(self):
        state = StrategyState()
        state.advance(0.3)
        assert (state.prev_alpha, state.k) == (0.3, 2)

    def test_refresh_every_m(self):
        state = StrategyState(m=3)
        refreshes = []
        for _ in range(7):
            refreshes.append(state.refresh)
            state.advance(1.0)
        assert refreshes == [False, False, True, False, False, True, False]

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            StrategyState(m=0)
        with pytest.raises(GammaOutOfRange):
            StrategyState(fixed_gamma=2.0)


class TestGamma:
    def test_fixed(self):
        assert gamma_fixed(StrategyState(fixed_gamma=0.4)) == 0.4

    def test_fixed_missing(self):
        with pytest.raises(MissingParameter):
            gamma_fixed(StrategyState())

    def test_random_reproducible(self):
        first = StrategyState(rng=make_stream(5, METHOD_STREAM))
        second = StrategyState(rng=make_stream(5, METHOD_STREAM))
        draws = [gamma_random(first) for _ in range(20)]
        assert draws == [gamma_random(second) for _ in range(20)]
        assert all(0.0 < draw < 1.0 for draw in draws)

    def test_random_missing_stream(self):
        with pytest.raises(MissingParameter):
            gamma_random(StrategyState())

    def test_random_mean(self):
        state = StrategyState(rng=make_stream(9, METHOD_STREAM))
        draws = np.array([gamma_random(state) for _ in range(100_000)])
        assert abs(draws.mean() - 0.5) <= 0.01

    @pytest.mark.parametrize("prev_alpha, expected", [(0.75, 0.5), (2.0, 1.0), (0.1, 0.0), (1.0, 1.0)])
    def test_cyclic(self, unit_interval, prev_alpha, expected):
        assert gamma_cyclic(StrategyState(prev_alpha=prev_alpha), unit_interval) == pytest.approx(expected)

    def test_cyclic_needs_previous_stepsize(self, unit_interval):
        with pytest.raises(MissingParameter):
            gamma_cyclic(StrategyState(), unit_interval)


class TestTruncatedCyclic:
    @pytest.mark.parametrize("prev_alpha, expected", [(0.75, 0.75), (3.0, 1.0), (0.2, 0.5)])
    def test_truncation(self, unit_interval, prev_alpha, expected):
        assert atc_step(StrategyState(prev_alpha=prev_alpha), unit_interval) == expected

    def test_cyclic_family_step_is_atc(self):
        interval = StepInterval.from_pair(GradientPair.from_vectors(np.array([1.0, 1.0]), np.array([1.0, 2.0])))
        for prev_alpha in np.linspace(0.5, 0.75, 51):
            state = StrategyState(prev_alpha=float(prev_alpha))
            alpha = family_step(gamma_cyclic(state, interval), interval)
            assert alpha == pytest.approx(atc_step(state, interval), abs=1e-14)

    @pytest.mark.parametrize("variant, expected", [(1, 1.0), (2, 0.5), (3, math.sqrt(0.5))])
    def test_refresh_iteration(self, unit_pair, unit_interval, variant, expected):
        state = StrategyState(prev_alpha=0.6, k=3, m=3)
        assert atc_variant_step(variant, state, unit_interval, unit_pair) == pytest.approx(expected)

    def test_between_refreshes(self, unit_pair, unit_interval):
        state = StrategyState(prev_alpha=0.6, k=4, m=3)
        assert atc_variant_step(1, state, unit_interval, unit_pair) == 0.6

    def test_unknown_variant(self, unit_pair, unit_interval):
        with pytest.raises(ValueError):
            atc_variant_step(4, StrategyState(prev_alpha=0.6), unit_interval, unit_pair)
