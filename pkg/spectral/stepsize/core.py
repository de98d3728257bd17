"""Module with the stepsize formulas of the spectral family.

Every function here is pure: it reads a GradientPair or StepInterval
and returns a number.

Functions:
    compute_bb1: Long BB stepsize s·s / s·y.
    compute_bb2: Short BB stepsize s·y / y·y.
    compute_geomean: Geometric mean ||s|| / ||y|| of the BB stepsizes.
    family_step: Convex combination of bb1 and bb2.
    phi_eval: Combined least-squares objective phi_tau(alpha).
    phi_derivative: Derivative of phi_tau with respect to alpha.
    psi_eval: Scaled derivative psi(tau, alpha).
    root_for_tau: Root of psi(tau, .) in [bb2, bb1].
    root_sensitivity: Derivative of that root with respect to tau.
    tau_for_gamma: The tau for which a family stepsize solves the
        least-squares problem.
"""

import math

from scipy import optimize

from spectral.exceptions import (
    CurvatureNonPositive,
    DegeneratePair,
    GammaOutOfRange,
    NoSignChange,
)
from spectral.stepsize.pairs import GradientPair, StepInterval


ROOT_XTOL = 1e-13
"""Bisection tolerance relative to bb1."""

NEWTON_POLISH_STEPS = 2


def compute_bb1(pair: GradientPair) -> float:
    """Return the long BB stepsize s·s / s·y.

    Args:
        pair: GradientPair.

    Raises:
        DegeneratePair: s is zero.
        CurvatureNonPositive: s·y is not positive.

    Returns:
        The long BB stepsize.
    """
    return StepInterval.from_pair(pair).bb1


def compute_bb2(pair: GradientPair) -> float:
    """Return the short BB stepsize s·y / y·y.

    Args:
        pair: GradientPair.

    Raises:
        CurvatureNonPositive: s·y is not positive.

    Returns:
        The short BB stepsize, never larger than the long one.
    """
    return StepInterval.from_pair(pair).bb2


def compute_geomean(pair: GradientPair) -> float:
    """Return ||s|| / ||y||, the geometric mean of the BB stepsizes.

    Args:
        pair: GradientPair.

    Raises:
        DegeneratePair: s or y is zero.

    Returns:
        sqrt(bb1 * bb2).
    """
    if pair.ss == 0.0 or pair.yy == 0.0:
        raise DegeneratePair("Geometric mean needs nonzero s and y.")
    return math.sqrt(pair.ss / pair.yy)


def check_gamma(gamma: float) -> None:
    """Raise unless gamma lies in [0, 1].

    Args:
        gamma: Combination weight.

    Raises:
        GammaOutOfRange: gamma is outside [0, 1] or not a number.
    """
    if not 0.0 <= gamma <= 1.0:
        raise GammaOutOfRange(f"gamma must lie in [0, 1], got {gamma!r}.")


def family_step(gamma: float, interval: StepInterval) -> float:
    """Return gamma * bb1 + (1 - gamma) * bb2.

    Args:
        gamma: Weight of the long stepsize, in [0, 1].
        interval: StepInterval.

    Raises:
        GammaOutOfRange: gamma is outside [0, 1].

    Returns:
        A stepsize in [bb2, bb1].
    """
    check_gamma(gamma)
    if interval.degenerate:
        return interval.bb1
    alpha = gamma * interval.bb1 + (1.0 - gamma) * interval.bb2
    return min(max(alpha, interval.bb2), interval.bb1)


def phi_eval(tau: float, alpha: float, pair: GradientPair) -> float:
    """Return phi_tau(alpha) = ||tau (s/alpha - y) + (1 - tau)(s - alpha y)||².

    The vector inside the norm is a·s - c·y with a = tau/alpha + 1 - tau
    and c = tau + (1 - tau) alpha, so only the cached products are used.

    Args:
        tau: Weight of the secant residual.
        alpha: Positive stepsize.
        pair: GradientPair.

    Returns:
        Value of the combined least-squares objective.
    """
    a = tau / alpha + (1.0 - tau)
    c = tau + (1.0 - tau) * alpha
    return a * a * pair.ss - 2.0 * a * c * pair.sy + c * c * pair.yy


def phi_derivative(tau: float, alpha: float, pair: GradientPair) -> float:
    """Return the derivative of phi_tau at alpha.

    Evaluated from the expanded expression, independently of psi_eval.

    Args:
        tau: Weight of the secant residual.
        alpha: Positive stepsize.
        pair: GradientPair.

    Returns:
        phi'_tau(alpha).
    """
    bracket = (
        -tau / alpha**3 * pair.ss
        - ((1.0 - tau) / alpha - tau / alpha**2) * pair.sy
        + (1.0 - tau) * pair.yy
    )
    return 2.0 * (tau + (1.0 - tau) * alpha) * bracket


def psi_eval(tau: float, alpha: float, pair: GradientPair) -> float:
    """Return psi(tau, alpha), the scaled derivative of phi_tau.

    psi = (1 - tau) yy (alpha³ - alpha² bb2) + tau sy (alpha - bb1), which
    has the sign of phi'_tau for alpha > 0.

    Args:
        tau: Weight of the secant residual.
        alpha: Positive stepsize.
        pair: GradientPair with positive curvature.

    Raises:
        CurvatureNonPositive: s·y is not positive.

    Returns:
        psi(tau, alpha).
    """
    interval = StepInterval.from_pair(pair)
    return (1.0 - tau) * pair.yy * (alpha**3 - alpha**2 * interval.bb2) + tau * pair.sy * (
        alpha - interval.bb1
    )


def _psi_slope(tau: float, alpha: float, pair: GradientPair, interval: StepInterval) -> float:
    return (1.0 - tau) * pair.yy * (3.0 * alpha**2 - 2.0 * alpha * interval.bb2) + tau * pair.sy


def root_for_tau(tau: float, pair: GradientPair) -> float:
    """Return the unique root of psi(tau, .) in [bb2, bb1].

    The root is bracketed by bisection to 1e-13 * bb1 and then polished
    with Newton steps that are kept only when they stay in the bracket
    and reduce |psi|.

    Args:
        tau: Weight of the secant residual, in [0, 1].
        pair: GradientPair with positive curvature.

    Raises:
        CurvatureNonPositive: s·y is not positive.
        NoSignChange: psi has the same sign at both ends of the bracket.

    Returns:
        The stepsize alpha solving the least-squares problem for tau.
    """
    interval = StepInterval.from_pair(pair)
    if interval.degenerate or tau == 1.0:
        return interval.bb1
    if tau == 0.0:
        return interval.bb2

    def psi(alpha: float) -> float:
        return psi_eval(tau, alpha, pair)

    low, high = psi(interval.bb2), psi(interval.bb1)
    if low == 0.0:
        return interval.bb2
    if high == 0.0:
        return interval.bb1
    if low > 0.0 or high < 0.0:
        raise NoSignChange(f"psi({tau!r}, .) does not change sign on [{interval.bb2!r}, {interval.bb1!r}].")

    alpha = optimize.bisect(psi, interval.bb2, interval.bb1, xtol=ROOT_XTOL * interval.bb1)
    residual = abs(psi(alpha))
    for _ in range(NEWTON_POLISH_STEPS):
        slope = _psi_slope(tau, alpha, pair, interval)
        if slope <= 0.0 or residual == 0.0:
            break
        candidate = alpha - psi(alpha) / slope
        if not interval.bb2 <= candidate <= interval.bb1:
            break
        candidate_residual = abs(psi(candidate))
        if candidate_residual >= residual:
            break
        alpha, residual = candidate, candidate_residual
    return alpha


def root_sensitivity(tau: float, pair: GradientPair) -> float:
    """Return d(alpha)/d(tau) along the root of psi(tau, alpha) = 0.

    Args:
        tau: Weight of the secant residual, in [0, 1].
        pair: GradientPair with positive curvature.

    Returns:
        Nonnegative derivative of root_for_tau at tau.
    """
    interval = StepInterval.from_pair(pair)
    if interval.degenerate:
        return 0.0
    alpha = root_for_tau(tau, pair)
    numerator = pair.yy * (alpha**3 - alpha**2 * interval.bb2) - pair.sy * (alpha - interval.bb1)
    return numerator / _psi_slope(tau, alpha, pair, interval)


def tau_for_gamma(gamma: float, interval: StepInterval) -> float:
    """Return the tau whose least-squares minimizer is family_step(gamma).

    tau = gamma alpha² / (gamma alpha² + (1 - gamma) bb2) with
    alpha = family_step(gamma, interval).

    Args:
        gamma: Weight of the long stepsize, in [0, 1].
        interval: StepInterval with bb2 > 0.

    Raises:
        GammaOutOfRange: gamma is outside [0, 1].

    Returns:
        tau in [0, 1].
    """
    alpha = family_step(gamma, interval)
    weighted = gamma * alpha**2
    denominator = weighted + (1.0 - gamma) * interval.bb2
    if denominator == 0.0:
        return 0.0
    return weighted / denominator
