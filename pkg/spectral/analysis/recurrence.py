"""Module with the two-dimensional recurrence of the family stepsize.

On A = diag(1, lambda) with b = 0 the squared ratio q_k of the two
gradient components obeys

    q_{k+1} = h_k(q_{k-1})² q_k / q_{k-1}²

where h_k depends on lambda and gamma_k only. M_k = log q_k then obeys a
linear recurrence with a bounded forcing term, and the complex sequence
xi_k = M_k + (theta - 1) M_{k-1}, theta = (1 + sqrt(7) i) / 2, grows
like 2^{k/2}.

Classes:
    TwoDimState: A dataclass holding (lambda, q_{k-1}, q_k).
    XiRecord: A dataclass to represent one xi_k.
    XiReport: A dataclass with the xi sequence and its growth checks.

Functions:
    h_eval: Evaluate h(w) for given lambda and gamma.
    h_log_eval: Evaluate log h at w = exp(M) without overflow.
    h_derivative: Derivative of h with respect to w.
    recurrence_q_step: One step of the q recurrence.
    recurrence_sequence: Iterate the q recurrence.
    log_recurrence_sequence: Iterate the recurrence for M = log q.
    log_gradient_trajectory: Log gradient components of a 2-D run
        without cancellation.
    log_gradient_norms: Log gradient norms of a trajectory.
    xi_sequence: Compute xi_k and check the growth bound.
    meets_growth_hypothesis: Check |xi_2| > 8 log lambda for a start.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from spectral.exceptions import TooShort, ZeroGradient


THETA = complex(0.5, math.sqrt(7.0) / 2.0)
"""Root of theta² - theta + 2 = 0 with positive imaginary part."""

GROWTH_FACTOR = math.sqrt(2.0) - 1.0

HYPOTHESIS_FACTOR = 8.0
"""|xi_2| must exceed HYPOTHESIS_FACTOR * log(lambda) for the growth bound."""

LOG_FLOAT_MAX = math.log(np.finfo(float).max)


def _check_lambda(lam: float) -> None:
    if not lam > 1:
        raise ValueError(f"lambda must be greater than 1, got {lam}.")


def h_eval(lam: float, w: float, gamma: float) -> float:
    """Return h(w) = [g(l² + w) + (1 - g) l (l + w)] / [g(l² + w) + (1 - g)(l + w)].

    Here g is gamma and l is lambda.

    Args:
        lam: Condition number lambda > 1.
        w: Nonnegative argument, q_{k-1} in the recurrence.
        gamma: Family weight in [0, 1].

    Returns:
        h(w), which is 1 for gamma = 1 and lambda for gamma = 0.
    """
    _check_lambda(lam)
    long_part = gamma * (lam**2 + w)
    numerator = long_part + (1.0 - gamma) * lam * (lam + w)
    denominator = long_part + (1.0 - gamma) * (lam + w)
    return numerator / denominator


def h_log_eval(lam: float, m: float, gamma: float) -> float:
    """Return log h(exp(m)), safe for any finite m.

    Args:
        lam: Condition number lambda > 1.
        m: log of the argument w.
        gamma: Family weight in [0, 1].

    Returns:
        log h(w) at w = exp(m).
    """
    _check_lambda(lam)
    if m <= 0.0:
        return math.log(h_eval(lam, math.exp(m), gamma))
    # Divide numerator and denominator by w.
    inv = math.exp(-m)
    numerator = gamma * (lam**2 * inv + 1.0) + (1.0 - gamma) * lam * (lam * inv + 1.0)
    denominator = gamma * (lam**2 * inv + 1.0) + (1.0 - gamma) * (lam * inv + 1.0)
    return math.log(numerator / denominator)


def h_derivative(lam: float, w: float, gamma: float) -> float:
    """Return dh/dw = g(1 - g) l (l - 1)² / (g(l² + w) + (1 - g)(l + w))².

    Args:
        lam: Condition number lambda > 1.
        w: Nonnegative argument.
        gamma: Family weight in [0, 1].

    Returns:
        Derivative of h, positive for gamma in (0, 1).
    """
    _check_lambda(lam)
    denominator = gamma * (lam**2 + w) + (1.0 - gamma) * (lam + w)
    return gamma * (1.0 - gamma) * lam * (lam - 1.0) ** 2 / denominator**2


@dataclass(frozen=True)
class TwoDimState:
    """Dataclass to represent the state of the q recurrence.

    Attributes:
        lam: Condition number lambda > 1.
        q_prev: q_{k-1} > 0.
        q_curr: q_k > 0.
    """

    lam: float
    q_prev: float
    q_curr: float

    def __post_init__(self) -> None:
        _check_lambda(self.lam)
        for q in (self.q_prev, self.q_curr):
            if not (q > 0 and math.isfinite(q)):
                raise ValueError(f"q values must be positive and finite, got {q}.")

    def advance(self, gamma: float) -> "TwoDimState":
        """Return the state one step later."""
        return TwoDimState(self.lam, self.q_curr, recurrence_q_step(self, gamma))


def recurrence_q_step(state: TwoDimState, gamma: float) -> float:
    """Return q_{k+1} = h(q_{k-1})² q_k / q_{k-1}².

    The product is formed from logarithms, so a result outside the
    floating point range comes back as 0 or inf instead of raising.

    Args:
        state: TwoDimState holding q_{k-1} and q_k.
        gamma: gamma_k.

    Returns:
        q_{k+1}.
    """
    m_prev = math.log(state.q_prev)
    log_q = 2.0 * h_log_eval(state.lam, m_prev, gamma) + math.log(state.q_curr) - 2.0 * m_prev
    if log_q > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_q)


def recurrence_sequence(
    lam: float, q1: float, q2: float, gammas: Sequence[float]
) -> np.ndarray:
    """Iterate the q recurrence.

    gammas[j] is gamma_{j+2}, the weight used to form q_{j+3}. The
    sequence ends early when q leaves the positive finite floats.

    Args:
        lam: Condition number lambda > 1.
        q1: q_1 > 0.
        q2: q_2 > 0.
        gammas: gamma_2, gamma_3, ...

    Returns:
        Array q_1, q_2, q_3, ...
    """
    state = TwoDimState(lam, q1, q2)
    q = [q1, q2]
    for gamma in gammas:
        q_next = recurrence_q_step(state, gamma)
        if not (q_next > 0 and math.isfinite(q_next)):
            break
        q.append(q_next)
        state = TwoDimState(lam, state.q_curr, q_next)
    return np.array(q)


def log_recurrence_sequence(
    lam: float, m1: float, m2: float, gammas: Sequence[float]
) -> np.ndarray:
    """Iterate M_{k+1} = M_k - 2 M_{k-1} + 2 log h_k(exp(M_{k-1})).

    Args:
        lam: Condition number lambda > 1.
        m1: M_1 = log q_1.
        m2: M_2 = log q_2.
        gammas: gamma_2, gamma_3, ...

    Returns:
        Array M_1, M_2, M_3, ...
    """
    m = [m1, m2]
    for gamma in gammas:
        m.append(m[-1] - 2.0 * m[-2] + 2.0 * h_log_eval(lam, m[-2], gamma))
    return np.array(m)


def _log_contractions(lam: float, m: float, gamma: float) -> tuple[float, float]:
    """Return log|1 - alpha| and log|1 - lambda alpha| for the family
    stepsize built from a gradient with log q = m."""
    log_lam = math.log(lam)
    common = math.log(lam - 1.0) - np.logaddexp(log_lam, m) - np.logaddexp(2.0 * log_lam, m)
    first = np.logaddexp(2.0 * log_lam, m + math.log(gamma + (1.0 - gamma) * lam))
    second = np.logaddexp(math.log(gamma * lam**2 + (1.0 - gamma) * lam), m)
    return float(common + first), float(common + m + second)


def log_gradient_trajectory(lam: float, g1: np.ndarray, gammas: Sequence[float]) -> np.ndarray:
    """Return log|g_k^(1)| and log|g_k^(2)| of a run on diag(1, lambda).

    The first step is the exact line search, which is the family
    stepsize with gamma = 1 built from g_1 itself; gammas[j] is
    gamma_{j+2}. Every factor 1 - lambda_i alpha_k is expanded into sums
    of positive terms, so the trajectory carries no cancellation and
    never underflows, however small the gradient gets.

    Args:
        lam: Condition number lambda > 1.
        g1: First gradient, both components nonzero.
        gammas: gamma_2, gamma_3, ...

    Raises:
        ZeroGradient: A component of g1 is zero.

    Returns:
        Array of shape (len(gammas) + 2, 2), row k - 1 holding g_k.
    """
    _check_lambda(lam)
    g1 = np.asarray(g1, dtype=float)
    if g1.shape != (2,) or not np.all(g1):
        raise ZeroGradient("Both components of g_1 must be nonzero.")
    logs = [np.log(np.abs(g1))]
    for gamma in [1.0, *gammas]:
        # alpha_k is built from g_{k-1}, and from g_1 at k = 1.
        source = logs[-2] if len(logs) > 1 else logs[-1]
        first, second = _log_contractions(lam, 2.0 * (source[0] - source[1]), float(gamma))
        logs.append(logs[-1] + np.array([first, second]))
    return np.array(logs)


def log_gradient_norms(trajectory: np.ndarray) -> np.ndarray:
    """Return log ||g_k|| for each row of log_gradient_trajectory."""
    return 0.5 * np.logaddexp(2.0 * trajectory[:, 0], 2.0 * trajectory[:, 1])


@dataclass(frozen=True)
class XiRecord:
    """Dataclass to represent xi_k = M_k + (theta - 1) M_{k-1}.

    Attributes:
        k: Index, at least 2.
        M: M_k.
        xi_re: Real part of xi_k.
        xi_im: Imaginary part of xi_k.
        c1: 2 log lambda.
    """

    k: int
    M: float
    xi_re: float
    xi_im: float
    c1: float

    @property
    def modulus(self) -> float:
        """|xi_k|."""
        return math.hypot(self.xi_re, self.xi_im)

    @property
    def bound(self) -> float:
        """Lower bound (sqrt(2) - 1) 2^{k/2} c1 on |xi_k|."""
        return GROWTH_FACTOR * 2.0 ** (self.k / 2.0) * self.c1


@dataclass(frozen=True)
class XiReport:
    """Dataclass holding the xi sequence of an M sequence.

    Attributes:
        records: XiRecord for k = 2, 3, ...
        hypothesis_met: True if |xi_2| > 8 log lambda.
        bound_holds: True if |xi_k| >= (sqrt(2) - 1) 2^{k/2} c1 for
            every k.
    """

    records: list[XiRecord]
    hypothesis_met: bool
    bound_holds: bool


def xi_sequence(M: Sequence[float], lam: float) -> XiReport:
    """Compute xi_k for an M sequence and check its growth bound.

    Args:
        M: M_1, M_2, ... with at least two entries.
        lam: Condition number lambda > 1.

    Raises:
        TooShort: M has fewer than two entries.

    Returns:
        XiReport with one record per k >= 2.
    """
    if len(M) < 2:
        raise TooShort("xi needs at least two M values.")
    _check_lambda(lam)
    c1 = 2.0 * math.log(lam)
    records = []
    for k in range(2, len(M) + 1):
        xi = float(M[k - 1]) + (THETA - 1.0) * float(M[k - 2])
        records.append(XiRecord(k=k, M=float(M[k - 1]), xi_re=xi.real, xi_im=xi.imag, c1=c1))
    return XiReport(
        records=records,
        hypothesis_met=records[0].modulus > HYPOTHESIS_FACTOR * math.log(lam),
        bound_holds=all(record.modulus >= record.bound for record in records),
    )


def meets_growth_hypothesis(lam: float, g1: np.ndarray) -> bool:
    """Check whether a start on diag(1, lambda) satisfies |xi_2| > 8 log lambda.

    M_2 is taken from the exact line search step, so the answer does not
    depend on how the first step rounds.

    Args:
        lam: Condition number lambda > 1.
        g1: First gradient, both components nonzero.

    Returns:
        True if the growth bound of xi_k is guaranteed from this start.
    """
    trajectory = log_gradient_trajectory(lam, g1, [])
    M = 2.0 * (trajectory[:, 0] - trajectory[:, 1])
    return xi_sequence(M, lam).hypothesis_met
