"""Module with convergence diagnostics for solver traces.

Classes:
    EnvelopeEntry: A dataclass for one 5-step gradient ratio.
    EnvelopeReport: A dataclass with all 5-step ratios of a 2-D run.
    PropertyAReport: A dataclass with the stepsize localisation check.

Functions:
    log_envelope_check: Compare 5-step ratios given as log norms with the
        superlinear bound.
    superlinear_envelope_check: Compare 5-step gradient ratios with the
        superlinear bound of a 2-D run.
    rlinear_fit: Fit a geometric rate to the gradient envelope.
    property_a_check: Check lambda_min <= 1/alpha_k <= lambda_max.
    solver_vs_recurrence: Compare a 2-D solver run with the q recurrence.
    write_report_csv: Write a report as 'k,value,bound,satisfied'.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import polars as pl
from scipy import stats

from spectral.exceptions import DimensionNotTwo, MissingEigenbasis, TooShort, ZeroGradient
from spectral.problems import QuadraticProblem, gradient
from spectral.solver import FamilySequence, MethodId, RunConfig, RunTrace, run_gradient_method
from spectral.analysis.recurrence import GROWTH_FACTOR, recurrence_sequence


logger = logging.getLogger(__name__)

WINDOW = 5
"""Number of steps spanned by one envelope ratio."""

MIN_FIT_RECORDS = 10

ROUNDOFF_CUTOFF = 1e-12
"""Relative gradient norm below which q_k is dominated by round-off."""

ROUNDING_UNIT = float(np.finfo(float).eps) / 2.0

PRECISION_BUDGET = 1e-9
"""Largest estimated relative error of the solver's q_k that is still compared."""

LOG_CLIP = 700.0

PROPERTY_A_RTOL = 1e-10


@dataclass(frozen=True)
class EnvelopeEntry:
    """Dataclass to represent ||g_{k+5}|| / ||g_k|| and its bound.

    Both are kept as logarithms, so entries from runs whose gradients
    fall far below the smallest float stay comparable.

    Attributes:
        k: Start index of the window, at least 2.
        log_ratio: log(||g_{k+5}|| / ||g_k||), -inf once g reaches zero.
        log_bound: log(lambda (lambda - 1)^5) - (sqrt(2) - 1)² 2^{k/2} c1 + 2 c1.
    """

    k: int
    log_ratio: float
    log_bound: float

    @property
    def ratio(self) -> float:
        return math.exp(min(self.log_ratio, LOG_CLIP))

    @property
    def bound(self) -> float:
        return math.exp(min(self.log_bound, LOG_CLIP))

    @property
    def satisfied(self) -> bool:
        return self.log_ratio <= self.log_bound

    @property
    def active(self) -> bool:
        """False while the bound is 1 or more and says nothing."""
        return self.log_bound < 0.0


@dataclass(frozen=True)
class EnvelopeReport:
    """Dataclass holding the envelope entries of a 2-D run.

    Attributes:
        lam: Condition number lambda of the problem.
        entries: EnvelopeEntry for k = 2, ..., K - 5.
    """

    lam: float
    entries: list[EnvelopeEntry]

    @property
    def ratios(self) -> np.ndarray:
        return np.array([entry.ratio for entry in self.entries])

    @property
    def log_ratios(self) -> np.ndarray:
        return np.array([entry.log_ratio for entry in self.entries])

    @property
    def all_satisfied(self) -> bool:
        return all(entry.satisfied for entry in self.entries)

    def block_maxima_decreasing(self, blocks: int = 3, size: int = WINDOW) -> bool:
        """Check whether the largest ratio of consecutive blocks strictly decreases.

        The trailing blocks * size ratios are split into blocks of size
        consecutive windows. Single ratios oscillate with the phase of
        xi_k; the block maxima do not.

        Args:
            blocks: Number of trailing blocks. Defaults to 3.
            size: Ratios per block. Defaults to 5.

        Returns:
            False if there are fewer than blocks * size ratios.
        """
        if len(self.entries) < blocks * size:
            return False
        maxima = self.log_ratios[-blocks * size :].reshape(blocks, size).max(axis=1)
        return bool(np.all(np.diff(maxima) < 0))

    def rows(self) -> list[tuple[int, float, float, bool]]:
        return [(entry.k, entry.ratio, entry.bound, entry.satisfied) for entry in self.entries]


def log_envelope_check(log_norms: Sequence[float], lam: float) -> EnvelopeReport:
    """Compare 5-step gradient ratios given as log norms with their bound.

    For k >= 2 the bound is
    ||g_{k+5}|| <= lambda (lambda - 1)^5 exp(-(sqrt(2) - 1)² 2^{k/2} c1 + 2 c1) ||g_k||
    with c1 = 2 log lambda. It is only guaranteed when |xi_2| > 8 log
    lambda; entries whose bound is not below 1 are inactive.

    Args:
        log_norms: log ||g_k|| for k = 1, ..., K; -inf for a zero gradient.
        lam: Condition number lambda > 1 of the problem.

    Returns:
        EnvelopeReport, empty when there are fewer than 7 norms.
    """
    c1 = 2.0 * math.log(lam)
    constant = math.log(lam) + WINDOW * math.log(lam - 1.0)
    entries = []
    for k in range(2, len(log_norms) - WINDOW + 1):
        start, end = float(log_norms[k - 1]), float(log_norms[k + WINDOW - 1])
        log_ratio = end - start if math.isfinite(start) else -math.inf
        log_bound = constant - GROWTH_FACTOR**2 * 2.0 ** (k / 2.0) * c1 + 2.0 * c1
        entries.append(EnvelopeEntry(k=k, log_ratio=log_ratio, log_bound=log_bound))
    return EnvelopeReport(lam=lam, entries=entries)


def superlinear_envelope_check(trace: RunTrace, lam: float) -> EnvelopeReport:
    """Compare the 5-step gradient ratios of a 2-D run with their bound.

    See log_envelope_check for the bound.

    Args:
        trace: RunTrace of a run on a 2-D problem.
        lam: Condition number lambda > 1 of the problem.

    Raises:
        DimensionNotTwo: The trace is not from a 2-D problem.

    Returns:
        EnvelopeReport, empty when the trace has fewer than 7 records.
    """
    if trace.n != 2:
        raise DimensionNotTwo(f"The envelope check needs a 2-D run, got n={trace.n}.")
    log_norms = [math.log(norm) if norm > 0 else -math.inf for norm in trace.grad_norms]
    return log_envelope_check(log_norms, lam)


def rlinear_fit(trace: RunTrace) -> tuple[float, float]:
    """Fit log(min_{j<=k} ||g_j||) against k by least squares.

    Zero gradient norms are left out of the fit.

    Args:
        trace: RunTrace with at least 10 records.

    Raises:
        TooShort: The trace has fewer than 10 records.

    Returns:
        (rate, quality): rate = exp(slope), below 1 for a convergent
        run; quality = root mean square residual of the fit.
    """
    if len(trace.records) < MIN_FIT_RECORDS:
        raise TooShort(f"An R-linear fit needs {MIN_FIT_RECORDS} records, got {len(trace.records)}.")
    envelope = np.minimum.accumulate(trace.grad_norms)
    k = np.arange(1, len(envelope) + 1, dtype=float)
    keep = envelope > 0
    log_envelope = np.log(envelope[keep])
    fit = stats.linregress(k[keep], log_envelope)
    residual = log_envelope - (fit.intercept + fit.slope * k[keep])
    return math.exp(fit.slope), float(np.sqrt(np.mean(residual**2)))


@dataclass(frozen=True)
class PropertyAReport:
    """Dataclass holding the stepsize localisation check of a run.

    Eigenvalues and gradient components are sorted by increasing
    eigenvalue, so component 1 belongs to the smallest one.

    Attributes:
        inverse_alphas: 1 / alpha_k for k = 2, ..., K - 1.
        lambda_min: Smallest eigenvalue.
        lambda_max: Largest eigenvalue.
        violations: Indices k with 1 / alpha_k outside the interval.
        eigenvalues: Sorted eigenvalues.
        energies: Squared eigenbasis gradient components, one row per
            record.
    """

    inverse_alphas: np.ndarray
    lambda_min: float
    lambda_max: float
    violations: list[int]
    eigenvalues: np.ndarray
    energies: np.ndarray

    @property
    def holds(self) -> bool:
        """True if condition (i) holds at every k >= 2."""
        return not self.violations

    def partial_energy(self, k: int, l: int) -> float:
        """Return G(k, l), the gradient energy on the l smallest eigenvalues.

        Args:
            k: 1-based record index.
            l: Number of eigenvalues, 1 to n.

        Returns:
            Sum of (g_k^(i))² over i <= l.
        """
        return float(self.energies[k - 1, :l].sum())

    def condition_ii(self, eps: float, l: int, m: int, m2: float = 2.0) -> list[int]:
        """Test the 2/3 lambda_{l+1} implication for one (eps, l, m).

        Energies are taken relative to ||g||². Wherever
        G(k-j, l) <= eps ||g_{k-j}||² and (g_{k-j}^(l+1))² >= m2 eps ||g_{k-j}||²
        for all j < min(k, m), 1 / alpha_k must reach 2/3 lambda_{l+1}.

        Args:
            eps: Energy threshold.
            l: Index in [1, n - 1].
            m: Look-back length.
            m2: Ratio constant. Defaults to 2.

        Returns:
            Indices k where the premise holds and the conclusion fails.
        """
        totals = self.energies.sum(axis=1)
        threshold = 2.0 / 3.0 * self.eigenvalues[l]
        failures = []
        for k in range(2, len(self.inverse_alphas) + 2):
            premise = all(
                self.energies[k - j - 1, :l].sum() <= eps * totals[k - j - 1]
                and self.energies[k - j - 1, l] >= m2 * eps * totals[k - j - 1]
                for j in range(min(k, m))
            )
            if premise and self.inverse_alphas[k - 2] < threshold:
                failures.append(k)
        return failures

    def rows(self) -> list[tuple[int, float, float, bool]]:
        violations = set(self.violations)
        return [
            (k, float(value), self.lambda_max, k not in violations)
            for k, value in enumerate(self.inverse_alphas, start=2)
        ]


def property_a_check(
    trace: RunTrace, v: np.ndarray, rtol: float = PROPERTY_A_RTOL
) -> PropertyAReport:
    """Check min(v) <= 1 / alpha_k <= max(v) for every k >= 2.

    Args:
        trace: RunTrace recorded with record_gradients.
        v: Eigenvalues of the problem, in generation order.
        rtol: Relative slack for rounding. Defaults to 1e-10.

    Raises:
        MissingEigenbasis: The trace holds no eigenbasis gradients.

    Returns:
        PropertyAReport of the run.
    """
    if trace.eigen_gradients is None:
        raise MissingEigenbasis("Run with record_gradients=True to check Property (A).")
    v = np.asarray(v, dtype=float)
    order = np.argsort(v, kind="stable")
    energies = np.array(trace.eigen_gradients)[:, order] ** 2
    inverse_alphas = 1.0 / trace.alphas[1:]
    low, high = float(v.min()), float(v.max())
    violations = [
        k
        for k, value in enumerate(inverse_alphas, start=2)
        if not low * (1 - rtol) <= value <= high * (1 + rtol)
    ]
    return PropertyAReport(
        inverse_alphas=inverse_alphas,
        lambda_min=low,
        lambda_max=high,
        violations=violations,
        eigenvalues=v[order],
        energies=energies,
    )


def _squared_ratio(g: np.ndarray) -> float:
    return float((g[0] / g[1]) ** 2)


def _update_error(v: np.ndarray, alpha: float) -> float:
    """Return the relative error one step x - alpha g adds to q.

    A component computed as (1 - v_i alpha) times its predecessor carries
    a relative error of about u (1 + v_i alpha) / |1 - v_i alpha|.
    """
    with np.errstate(divide="ignore"):
        amplification = (1.0 + v * alpha) / np.abs(1.0 - v * alpha)
    return float(4.0 * ROUNDING_UNIT * amplification.sum())


def solver_vs_recurrence(
    problem: QuadraticProblem,
    x1: np.ndarray,
    gamma_sequence: Sequence[float],
    max_compare: int = 30,
) -> tuple[float, int]:
    """Run the solver on diag(1, lambda) and compare q_k with the recurrence.

    gamma_sequence[j] is the weight used at k = j + 2. The recurrence is
    seeded with the solver's q_1 and q_2 and iterated only as far as the
    solver ran. The comparison stops once ||g_k|| <= 1e-12 ||g_1||, or
    once the estimated relative error of the solver's own q_k exceeds
    1e-9. That estimate starts at zero for the seeds and follows
    e_k = e_{k-1} + 2 e_{k-2} + 4u sum_i (1 + v_i alpha_{k-1}) / |1 - v_i alpha_{k-1}|,
    the first order error of q_{k+1} = h(q_{k-1})² q_k / q_{k-1}² plus
    the rounding of the step that formed g_k.

    Args:
        problem: Diagonal problem with v = (1, lambda) and b = 0.
        x1: Starting point.
        gamma_sequence: gamma_2, gamma_3, ...
        max_compare: Maximum number of compared q_k. Defaults to 30.

    Raises:
        DimensionNotTwo: The problem is not 2-D.
        ValueError: The problem is not diag(1, lambda) with b = 0.
        ZeroGradient: A component of g_1 is zero.
        TooShort: Not a single q_k could be compared.

    Returns:
        (deviation, compared): the maximum of
        |q_k^solver - q_k^recurrence| / q_k^recurrence over the compared
        k >= 3, and the number of compared values.
    """
    if problem.n != 2:
        raise DimensionNotTwo(f"The recurrence needs a 2-D problem, got n={problem.n}.")
    if problem.rotated or np.any(problem.b) or problem.v[0] != 1.0 or not problem.v[1] > 1.0:
        raise ValueError("The recurrence needs A = diag(1, lambda) with lambda > 1 and b = 0.")
    lam = float(problem.v[1])
    if not np.all(gradient(problem, np.asarray(x1, dtype=float))):
        raise ZeroGradient("Both components of g_1 must be nonzero.")

    config = RunConfig(
        method=MethodId.FAMILY_FIXED,
        epsilon=ROUNDOFF_CUTOFF,
        max_iter=len(gamma_sequence) + 1,
        record_gradients=True,
    )
    method = FamilySequence(config, problem, gamma_sequence)
    trace = run_gradient_method(problem, x1, config, method=method)
    gradients = trace.eigen_gradients
    if len(gradients) < 3 or not np.all(gradients[1]):
        raise TooShort("The run stopped before q_3 was formed.")

    q_solver = [_squared_ratio(g) if np.all(g) else math.nan for g in gradients]
    q_recurrence = recurrence_sequence(lam, q_solver[0], q_solver[1], list(gamma_sequence)[: len(q_solver) - 2])
    g1_norm = trace.records[0].grad_norm
    alphas = trace.alphas

    deviation = 0.0
    compared = 0
    errors = [0.0, 0.0]
    for k in range(3, min(len(q_solver), len(q_recurrence)) + 1):
        if trace.records[k - 1].grad_norm <= ROUNDOFF_CUTOFF * g1_norm or math.isnan(q_solver[k - 1]):
            break
        errors.append(errors[-1] + 2.0 * errors[-2] + _update_error(problem.v, float(alphas[k - 2])))
        if errors[-1] > PRECISION_BUDGET:
            break
        deviation = max(deviation, abs(q_solver[k - 1] - q_recurrence[k - 1]) / q_recurrence[k - 1])
        compared += 1
        if compared == max_compare:
            break
    if compared == 0:
        raise TooShort("Round-off dominated q_3 already; nothing was compared.")
    logger.debug(
        "Compared %d values of q, maximum relative deviation %.3e, estimated error %.1e.",
        compared,
        deviation,
        errors[-1],
    )
    return deviation, compared


def write_report_csv(report: EnvelopeReport | PropertyAReport, path: str | Path) -> None:
    """Write a diagnostic report as 'k,value,bound,satisfied'.

    Args:
        report: EnvelopeReport or PropertyAReport.
        path: Output file path.
    """
    rows = report.rows()
    pl.DataFrame(
        {
            "k": [row[0] for row in rows],
            "value": [row[1] for row in rows],
            "bound": [row[2] for row in rows],
            "satisfied": [row[3] for row in rows],
        },
        schema={"k": pl.Int64, "value": pl.Float64, "bound": pl.Float64, "satisfied": pl.Boolean},
    ).write_csv(path)
