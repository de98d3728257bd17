"""Module with the selection rules for the family weight gamma_k.

Classes:
    StrategyState: A dataclass holding the mutable state of one run's
        stepsize strategy.

Functions:
    gamma_fixed: Return a constant gamma.
    gamma_random: Draw gamma uniformly from (0, 1).
    gamma_cyclic: Gamma that keeps the stepsize closest to the previous
        one.
    atc_step: Adaptive truncated cyclic stepsize.
    atc_variant_step: ATC stepsize refreshed every m iterations.
"""

from dataclasses import dataclass, field

import numpy as np

from spectral.exceptions import MissingParameter
from spectral.stepsize.core import check_gamma, compute_geomean
from spectral.stepsize.pairs import GradientPair, StepInterval


RANDOM_FLOOR = 2.0**-53
"""Smallest random gamma, keeping draws inside the open interval."""


@dataclass
class StrategyState:
    """Dataclass containing the state of a stepsize strategy.

    One instance belongs to exactly one run. The solver calls
    ``advance`` once per iteration after a stepsize has been taken.

    Attributes:
        prev_alpha: The previous stepsize alpha_{k-1}, None before the
            first step.
        k: The 1-based iteration counter.
        m: Cycle length.
        fixed_gamma: Constant gamma for fixed schemes. Defaults to
            None.
        rng: Random stream for random schemes. Defaults to None.
    """

    prev_alpha: float | None = None
    k: int = 1
    m: int = 1
    fixed_gamma: float | None = None
    rng: np.random.Generator | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"Cycle length must be at least 1, got {self.m}.")
        if self.prev_alpha is not None and not self.prev_alpha > 0:
            raise ValueError(f"Previous stepsize must be positive, got {self.prev_alpha}.")
        if self.fixed_gamma is not None:
            check_gamma(self.fixed_gamma)

    def advance(self, alpha: float) -> None:
        """Record the stepsize just taken and move to the next iteration.

        Args:
            alpha: The stepsize used at iteration k.
        """
        self.prev_alpha = alpha
        self.k += 1

    @property
    def refresh(self) -> bool:
        """True on iterations where mod(k, m) = 0."""
        return self.k % self.m == 0

    def _require_prev_alpha(self) -> float:
        if self.prev_alpha is None:
            raise MissingParameter("The previous stepsize has not been set.")
        return self.prev_alpha


def gamma_fixed(state: StrategyState) -> float:
    """Return the fixed gamma of the state.

    Args:
        state: StrategyState with fixed_gamma set.

    Raises:
        MissingParameter: fixed_gamma is not set.

    Returns:
        The fixed gamma, independent of k.
    """
    if state.fixed_gamma is None:
        raise MissingParameter("A fixed gamma has not been set.")
    return state.fixed_gamma


def gamma_random(state: StrategyState) -> float:
    """Draw gamma uniformly from the open interval (0, 1).

    Exactly one value of the stream is consumed per call.

    Args:
        state: StrategyState with a random stream.

    Raises:
        MissingParameter: The state has no random stream.

    Returns:
        A draw in [2^-53, 1 - 2^-53].
    """
    if state.rng is None:
        raise MissingParameter("A random stream has not been set.")
    draw = float(state.rng.random())
    return min(max(draw, RANDOM_FLOOR), 1.0 - RANDOM_FLOOR)


def gamma_cyclic(state: StrategyState, interval: StepInterval) -> float:
    """Return the gamma whose family stepsize is closest to alpha_{k-1}.

    Args:
        state: StrategyState with prev_alpha set.
        interval: StepInterval of the current pair.

    Raises:
        MissingParameter: prev_alpha is not set.

    Returns:
        min(1, max(0, (alpha_{k-1} - bb2) / (bb1 - bb2))), or 1 when the
        interval is a single point.
    """
    prev_alpha = state._require_prev_alpha()
    if interval.degenerate:
        return 1.0
    return min(1.0, max(0.0, (prev_alpha - interval.bb2) / interval.width))


def atc_step(state: StrategyState, interval: StepInterval) -> float:
    """Return the adaptive truncated cyclic (ATC) stepsize.

    The previous stepsize is reused when it lies in [bb2, bb1] and is
    truncated to the nearest end otherwise.

    Args:
        state: StrategyState with prev_alpha set.
        interval: StepInterval of the current pair.

    Raises:
        MissingParameter: prev_alpha is not set.

    Returns:
        bb2, bb1 or alpha_{k-1}.
    """
    prev_alpha = state._require_prev_alpha()
    if prev_alpha <= interval.bb2:
        return interval.bb2
    if prev_alpha >= interval.bb1:
        return interval.bb1
    return prev_alpha


def atc_variant_step(
    variant: int, state: StrategyState, interval: StepInterval, pair: GradientPair
) -> float:
    """Return the ATC stepsize refreshed every m iterations.

    Args:
        variant: 1 refreshes with bb1, 2 with bb2, 3 with the geometric
            mean.
        state: StrategyState with prev_alpha set.
        interval: StepInterval of the current pair.
        pair: GradientPair, used by variant 3.

    Raises:
        MissingParameter: prev_alpha is not set.
        ValueError: variant is not 1, 2 or 3.

    Returns:
        The refresh stepsize when mod(k, m) = 0, the ATC stepsize
        otherwise.
    """
    if variant not in (1, 2, 3):
        raise ValueError(f"ATC variant must be 1, 2 or 3, got {variant}.")
    state._require_prev_alpha()
    if not state.refresh:
        return atc_step(state, interval)
    match variant:
        case 1:
            return interval.bb1
        case 2:
            return interval.bb2
        case _:
            return min(max(compute_geomean(pair), interval.bb2), interval.bb1)
