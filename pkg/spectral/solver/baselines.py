"""Module with the stepsize rules of the comparison methods.

Classes:
    BaselineState: StrategyState extended with thresholds and the
        histories the comparison methods keep.

Functions:
    yuan_stepsize: Yuan stepsize from two consecutive SD steps.
    baseline_alternate_or_cyclic: ALBB, CBB1, CBB2 and CP stepsizes.
    baseline_adaptive: ABB, ABBMIN1 and ABBMIN2 stepsizes.
    baseline_yuan: DY and SDC stepsizes.
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from spectral.exceptions import InsufficientHistory
from spectral.problems import QuadraticProblem, sd_stepsize
from spectral.solver.enums import MethodId
from spectral.stepsize import GradientPair, StepInterval, StrategyState, compute_geomean


ABBMIN2_SHRINK = 0.9
"""Factor applied to the ABBMIN2 threshold after a short step."""

ABBMIN2_GROW = 1.1
"""Factor applied to the ABBMIN2 threshold after a long step."""


@dataclass
class BaselineState(StrategyState):
    """Dataclass containing the state of a comparison method.

    Attributes:
        tau: Ratio threshold; the current, adapted one for ABBMIN2.
            Defaults to 0.1.
        h: Exact line search steps per SDC cycle. Defaults to 8.
        dy_pattern: DY cycle pattern. Defaults to 'alternate'.
        held: Yuan stepsize held by DY and SDC. Defaults to None.
        bb2_history: Recent short BB stepsizes, at most m of them.
        sd_history: (SD stepsize, gradient norm) of the last two
            consecutive iterates at which an SD stepsize was evaluated.
    """

    tau: float = 0.1
    h: int = 8
    dy_pattern: str = "alternate"
    held: float | None = None
    bb2_history: deque = field(default_factory=deque, repr=False)
    sd_history: deque = field(default_factory=lambda: deque(maxlen=2), repr=False)

    def __post_init__(self) -> None:
        super().__post_init__()
        self.bb2_history = deque(self.bb2_history, maxlen=self.m)

    def record_sd(self, alpha_sd: float, grad_norm: float) -> None:
        """Remember the SD stepsize and gradient norm of the current iterate.

        Args:
            alpha_sd: SD stepsize at x_k.
            grad_norm: ||g_k||.
        """
        self.sd_history.append((alpha_sd, grad_norm))


def yuan_stepsize(
    alpha_sd_prev: float, alpha_sd: float, grad_norm_prev: float, grad_norm: float
) -> float:
    """Return the Yuan stepsize of two consecutive exact line searches.

    alpha_Y = 2 / (sqrt((1/a1 - 1/a2)² + 4 ||g_k||² / (a1 ||g_{k-1}||)²)
    + 1/a1 + 1/a2) with a1 = alpha^SD_{k-1} and a2 = alpha^SD_k.

    Args:
        alpha_sd_prev: SD stepsize at x_{k-1}.
        alpha_sd: SD stepsize at x_k.
        grad_norm_prev: ||g_{k-1}||, nonzero.
        grad_norm: ||g_k||.

    Returns:
        Stepsize no larger than either SD stepsize.
    """
    inv_prev = 1.0 / alpha_sd_prev
    inv = 1.0 / alpha_sd
    ratio = grad_norm / (alpha_sd_prev * grad_norm_prev)
    root = math.sqrt((inv_prev - inv) ** 2 + 4.0 * ratio**2)
    return 2.0 / (root + inv_prev + inv)


def baseline_alternate_or_cyclic(
    method: MethodId, state: BaselineState, pair: GradientPair
) -> float:
    """Return the ALBB, CBB1, CBB2 or CP stepsize.

    ALBB takes bb1 on odd and bb2 on even iterations. The cyclic methods
    compute their stepsize when k = 1 (mod m) and hold the previous one
    otherwise.

    Args:
        method: ALBB, CBB1, CBB2 or CP.
        state: BaselineState of the run.
        pair: GradientPair of the current iteration.

    Raises:
        CurvatureNonPositive: s·y is not positive.
        ValueError: method is not one of the four.

    Returns:
        Positive stepsize.
    """
    interval = StepInterval.from_pair(pair)
    if method is MethodId.ALBB:
        return interval.bb1 if state.k % 2 == 1 else interval.bb2

    if method not in (MethodId.CBB1, MethodId.CBB2, MethodId.CP):
        raise ValueError(f"{method.value} is not an alternate or cyclic method.")
    if state.prev_alpha is not None and (state.k - 1) % state.m != 0:
        return state.prev_alpha
    match method:
        case MethodId.CBB1:
            return interval.bb1
        case MethodId.CBB2:
            return interval.bb2
        case _:
            return compute_geomean(pair)


def baseline_adaptive(method: MethodId, state: BaselineState, interval: StepInterval) -> float:
    """Return the ABB, ABBMIN1 or ABBMIN2 stepsize.

    All three compare bb2 / bb1 with a threshold tau. ABB then takes bb2
    or bb1. ABBMIN1 takes the smallest of the last m short stepsizes
    instead of bb2. ABBMIN2 does the same, but multiplies tau by 0.9
    after a short and by 1.1 after a long step.

    Args:
        method: ABB, ABBMIN1 or ABBMIN2.
        state: BaselineState of the run; its bb2 history and threshold
            are updated.
        interval: StepInterval of the current iteration.

    Raises:
        ValueError: method is not one of the three.

    Returns:
        Positive stepsize, never larger than bb1.
    """
    if method not in (MethodId.ABB, MethodId.ABBMIN1, MethodId.ABBMIN2):
        raise ValueError(f"{method.value} is not an adaptive BB method.")
    short = interval.bb2 / interval.bb1 < state.tau

    if method is MethodId.ABB:
        return interval.bb2 if short else interval.bb1

    state.bb2_history.append(interval.bb2)
    if method is MethodId.ABBMIN2:
        state.tau *= ABBMIN2_SHRINK if short else ABBMIN2_GROW
    return min(state.bb2_history) if short else interval.bb1


def _yuan_from_history(state: BaselineState) -> float:
    if len(state.sd_history) < 2:
        raise InsufficientHistory("A Yuan stepsize needs two consecutive SD stepsizes.")
    (alpha_sd_prev, grad_norm_prev), (alpha_sd, grad_norm) = state.sd_history
    return yuan_stepsize(alpha_sd_prev, alpha_sd, grad_norm_prev, grad_norm)


def baseline_yuan(
    method: MethodId, state: BaselineState, problem: QuadraticProblem, g: np.ndarray
) -> float:
    """Return the DY or SDC stepsize.

    DY with the 'alternate' pattern takes the SD step on odd iterations
    and the Yuan stepsize of the last two iterates on even ones; with
    'sd-y-y' it takes one SD step and then the same Yuan stepsize twice.
    SDC takes h SD steps and then holds the Yuan stepsize of the last
    two of them for m iterations.

    Args:
        method: DY or SDC.
        state: BaselineState of the run; its SD history and held
            stepsize are updated.
        problem: QuadraticProblem, for the SD stepsize at x_k.
        g: Gradient at x_k.

    Raises:
        InsufficientHistory: Fewer than two SD stepsizes are known when
            a Yuan stepsize is needed.
        ValueError: method is not DY or SDC.

    Returns:
        Positive stepsize.
    """
    grad_norm = float(np.linalg.norm(g))
    if method is MethodId.DY:
        if state.dy_pattern == "alternate":
            alpha_sd = sd_stepsize(problem, g)
            state.record_sd(alpha_sd, grad_norm)
            return alpha_sd if state.k % 2 == 1 else _yuan_from_history(state)
        match (state.k - 1) % 3:
            case 0:
                alpha_sd = sd_stepsize(problem, g)
                state.record_sd(alpha_sd, grad_norm)
                return alpha_sd
            case 1:
                state.record_sd(sd_stepsize(problem, g), grad_norm)
                state.held = _yuan_from_history(state)
                return state.held
            case _:
                return state.held if state.held is not None else _yuan_from_history(state)

    if method is not MethodId.SDC:
        raise ValueError(f"{method.value} is not a Yuan-type method.")
    phase = (state.k - 1) % (state.h + state.m)
    if phase < state.h:
        alpha_sd = sd_stepsize(problem, g)
        state.record_sd(alpha_sd, grad_norm)
        return alpha_sd
    if phase == state.h or state.held is None:
        state.held = _yuan_from_history(state)
    return state.held
