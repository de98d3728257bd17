"""Module with the numeric verification suite.

Every check returns a pass flag and a short detail string. The fast
tier uses reduced sample sizes and skips the statistical reproductions
(criteria 8 to 10); the full tier runs everything at full size.

Classes:
    CheckResult: A dataclass to represent the outcome of one check.
    VerifyContext: A dataclass holding the state shared by the checks.

Functions:
    random_pair: Draw a gradient pair with positive curvature.
    check_quasi_newton: psi vanishes at the family stepsize.
    check_root_monotone: psi has one sign change and its root grows with tau.
    check_endpoint_traces: gamma = 1 and 0 reproduce BB1 and BB2 exactly.
    check_recurrence: The 2-D solver follows the q recurrence.
    qualifying_start: Draw a 2-D start meeting the growth hypothesis.
    check_superlinear: 2-D runs with random gamma converge superlinearly.
    check_rlinear: Family and ATC1 runs converge R-linearly.
    check_property_a: Stepsize reciprocals stay inside the spectrum.
    check_atc_vs_bb: ATC1 needs fewer iterations than BB1 on set 1.
    check_nonrand_band: ATC1 and ABB iteration counts on the non-random problem.
    check_gamma_trend: Profiles improve as gamma grows.
    check_xi_growth: xi_k grows at least like 2^{k/2}.
    run_checks: Run the checks of a tier.
    format_report: Render check results as an aligned table.
"""

import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from bench.runner import make_problem, run_suite
from bench.suite import ExperimentSuite, MethodEntry
from bench.utilities import format_percentage, format_table
from spectral.analysis import (
    log_envelope_check,
    log_gradient_norms,
    log_gradient_trajectory,
    log_recurrence_sequence,
    meets_growth_hypothesis,
    performance_profile,
    property_a_check,
    rlinear_fit,
    solver_vs_recurrence,
    xi_sequence,
)
from spectral.exceptions import TooShort
from spectral.problems import SpectrumKind, gradient, make_diagonal_problem
from spectral.rng import METHOD_STREAM, START_STREAM, make_stream
from spectral.solver import FamilySequence, MethodId, RunConfig, RunTrace, run_gradient_method
from spectral.stepsize import (
    GradientPair,
    StepInterval,
    StrategyState,
    family_step,
    gamma_random,
    phi_eval,
    psi_eval,
    root_for_tau,
    tau_for_gamma,
)


logger = logging.getLogger(__name__)

TIERS = ("fast", "full")

PsiFunction = Callable[[float, float | np.ndarray, GradientPair], float | np.ndarray]
"""psi(tau, alpha, pair), vectorised over alpha."""

GAMMAS = np.linspace(0.0, 1.0, 11)
TAUS = np.linspace(0.01, 0.99, 99)
PAIR_DIMENSIONS = (2, 10, 100)
CURVATURE_RANGE = (1.0, 100.0)
MIN_RELATIVE_WIDTH = 1e-6
SIGN_SAMPLES = 1000

RESIDUAL_TOL = 1e-10
MONOTONE_TOL = 1e-12
RECURRENCE_TOL = 1e-8

ANALYSIS_LAMBDA = 1e3
RECURRENCE_LAMBDA = 100.0
SUPERLINEAR_ITERATIONS = 60
MAX_START_DRAWS = 10_000
XI_LENGTH = 40
XI_START_RANGE = 60.0


@dataclass(frozen=True)
class CheckResult:
    """Dataclass to represent the outcome of one check.

    Attributes:
        criterion: Criterion number, 1 to 11.
        name: Short name of the check.
        passed: True if the check passed.
        detail: Measured values behind the verdict.
        seconds: Wall time of the check.
    """

    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass
class VerifyContext:
    """Dataclass holding the state shared by the checks of one tier.

    Attributes:
        tier: 'fast' or 'full'.
        psi: psi implementation under test. Defaults to psi_eval.
        runs: (trace, eigenvalues) of every run recorded with its
            eigenbasis gradients, for the Property (A) check.
    """

    tier: str
    psi: PsiFunction = psi_eval
    runs: list[tuple[RunTrace, np.ndarray]] = field(default_factory=list)

    @property
    def full(self) -> bool:
        return self.tier == "full"

    def size(self, fast: int, full: int) -> int:
        """Return the sample size of the tier."""
        return full if self.full else fast


def random_pair(rng: np.random.Generator, n: int) -> GradientPair:
    """Draw s ~ N(0, I) and y = D s for a random positive diagonal D.

    Pairs whose interval [bb2, bb1] is narrower than 1e-6 bb1 are drawn
    again.

    Args:
        rng: Random stream.
        n: Dimension.

    Returns:
        GradientPair with bb1 > bb2.
    """
    while True:
        s = rng.standard_normal(n)
        y = rng.uniform(*CURVATURE_RANGE, size=n) * s
        pair = GradientPair.from_vectors(s, y)
        interval = StepInterval.from_pair(pair)
        if interval.width > MIN_RELATIVE_WIDTH * interval.bb1:
            return pair


def _pairs(seed: int, count: int) -> list[GradientPair]:
    rng = make_stream(seed)
    return [random_pair(rng, PAIR_DIMENSIONS[i % len(PAIR_DIMENSIONS)]) for i in range(count)]


def check_quasi_newton(context: VerifyContext) -> tuple[bool, str]:
    """psi(tau, alpha_gamma) = 0 and alpha_gamma minimises phi_tau on [bb2, bb1]."""
    pairs = _pairs(1, context.size(100, 1000))
    grid_size = context.size(10_000, 100_000)
    worst_residual = 0.0
    misplaced = 0
    for pair in pairs:
        interval = StepInterval.from_pair(pair)
        grid = np.linspace(interval.bb2, interval.bb1, grid_size)
        cell = (interval.bb1 - interval.bb2) / (grid_size - 1)
        scale = pair.yy * interval.bb1**3
        for gamma in GAMMAS:
            alpha = family_step(float(gamma), interval)
            tau = tau_for_gamma(float(gamma), interval)
            worst_residual = max(worst_residual, abs(context.psi(tau, alpha, pair)) / scale)

            values = phi_eval(tau, grid, pair)
            best = int(np.argmin(values))
            # Near the minimum phi is flat to rounding; a tie in value is a match.
            tie = phi_eval(tau, alpha, pair) <= values[best] + 1e-12 * _phi_scale(tau, alpha, pair)
            if abs(grid[best] - alpha) > cell and not tie:
                misplaced += 1
    passed = worst_residual <= RESIDUAL_TOL and misplaced == 0
    return passed, f"{len(pairs)} pairs, max scaled |psi| {worst_residual:.1e}, {misplaced} misplaced minimizers"


def _phi_scale(tau: float, alpha: float, pair: GradientPair) -> float:
    a = tau / alpha + (1.0 - tau)
    c = tau + (1.0 - tau) * alpha
    return a * a * pair.ss + c * c * pair.yy


def _sign_changes(values: np.ndarray, atol: float) -> int:
    signs = np.sign(np.where(np.abs(values) <= atol, 0.0, values))
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs)))


def check_root_monotone(context: VerifyContext) -> tuple[bool, str]:
    """psi(tau, .) changes sign once, upwards, and its root increases with tau."""
    pairs = _pairs(2, context.size(20, 100))
    bad_sign = 0
    not_monotone = 0
    for pair in pairs:
        interval = StepInterval.from_pair(pair)
        alphas = np.linspace(interval.bb2, interval.bb1, SIGN_SAMPLES)
        atol = 1e-13 * pair.yy * interval.bb1**3
        roots = []
        for tau in TAUS:
            values = np.asarray(context.psi(float(tau), alphas, pair), dtype=float)
            if _sign_changes(values, atol) != 1 or values[0] > atol or values[-1] < -atol:
                bad_sign += 1
            roots.append(root_for_tau(float(tau), pair))
        if np.any(np.diff(roots) < -MONOTONE_TOL * interval.bb1):
            not_monotone += 1
    passed = bad_sign == 0 and not_monotone == 0
    return passed, f"{len(pairs)} pairs x {len(TAUS)} tau, {bad_sign} bad sign patterns, {not_monotone} non-monotone roots"


def _same_trace(first: RunTrace, second: RunTrace) -> bool:
    return first.iterations == second.iterations and bool(
        np.array_equal(first.alphas, second.alphas) and np.array_equal(first.grad_norms, second.grad_norms)
    )


def check_endpoint_traces(context: VerifyContext) -> tuple[bool, str]:
    """FAMILY_FIXED with gamma 1 and 0 reproduces BB1 and BB2 bit for bit."""
    count = context.size(4, 20)
    n, kappa, epsilon = 100, 1e4, 1e-9
    mismatches = 0
    for seed in range(count):
        problem = make_problem(SpectrumKind.SET1, n, kappa, seed)
        x1 = np.ones(n)
        for gamma, method in ((1.0, MethodId.BB1), (0.0, MethodId.BB2)):
            family = run_gradient_method(
                problem, x1, RunConfig(method=MethodId.FAMILY_FIXED, gamma=gamma, epsilon=epsilon, record_gradients=True)
            )
            reference = run_gradient_method(problem, x1, RunConfig(method=method, epsilon=epsilon, record_gradients=True))
            context.runs += [(family, problem.v), (reference, problem.v)]
            if not _same_trace(family, reference):
                mismatches += 1
    return mismatches == 0, f"{2 * count} trace pairs, {mismatches} mismatches"


def check_recurrence(context: VerifyContext) -> tuple[bool, str]:
    """The q_k of 2-D runs match the q recurrence to 1e-8."""
    problem = make_diagonal_problem(np.array([1.0, RECURRENCE_LAMBDA]))
    x1 = make_stream(4, START_STREAM).uniform(-10.0, 10.0, size=2)
    length = 30
    sequences = {
        "gamma=1": [1.0] * length,
        "gamma=0": [0.0] * length,
        "gamma=0.5": [0.5] * length,
        "random": list(make_stream(4, METHOD_STREAM).uniform(0.0, 1.0, size=length)),
    }
    comparisons = {}
    for name, gammas in sequences.items():
        comparisons[name] = solver_vs_recurrence(problem, x1, gammas)
        config = RunConfig(method=MethodId.FAMILY_FIXED, epsilon=1e-12, max_iter=length + 1, record_gradients=True)
        trace = run_gradient_method(problem, x1, config, method=FamilySequence(config, problem, gammas))
        context.runs.append((trace, problem.v))
    worst = max(deviation for deviation, _ in comparisons.values())
    detail = ", ".join(
        f"{name} {deviation:.1e} over {compared} values" for name, (deviation, compared) in comparisons.items()
    )
    return worst <= RECURRENCE_TOL, f"max relative deviation: {detail}"


def qualifying_start(seed: int, lam: float) -> np.ndarray:
    """Draw starts in [-10, 10]² from the start stream of a seed until one
    meets the growth hypothesis on diag(1, lambda).

    Args:
        seed: Seed of the start stream.
        lam: Condition number lambda > 1.

    Raises:
        TooShort: No start qualified within 10000 draws.

    Returns:
        The first qualifying start.
    """
    rng = make_stream(seed, START_STREAM)
    v = np.array([1.0, lam])
    for _ in range(MAX_START_DRAWS):
        x1 = rng.uniform(-10.0, 10.0, size=2)
        if np.all(x1) and meets_growth_hypothesis(lam, v * x1):
            return x1
    raise TooShort(f"No start for seed {seed} met the growth hypothesis.")


def check_superlinear(context: VerifyContext) -> tuple[bool, str]:
    """Random-gamma runs on diag(1, 1e3) from qualifying starts converge superlinearly.

    Convergence within 60 iterations is read from the solver. A float64
    run reaches an exactly zero gradient after a handful of steps, so the
    5-step ratios are read from the cancellation-free trajectory of the
    same start and gamma draws over all 60 iterations: the maxima of the
    last three blocks of five ratios must strictly decrease, and every
    ratio must stay below the superlinear bound.
    """
    count = context.size(20, 100)
    problem = make_diagonal_problem(np.array([1.0, ANALYSIS_LAMBDA]))
    converged = 0
    decreasing = 0
    bounded = 0
    for seed in range(count):
        x1 = qualifying_start(seed, ANALYSIS_LAMBDA)
        config = RunConfig(
            method=MethodId.FAMILY_RANDOM,
            epsilon=1e-10,
            max_iter=SUPERLINEAR_ITERATIONS,
            seed=seed,
            record_gradients=True,
        )
        trace = run_gradient_method(problem, x1, config)
        context.runs.append((trace, problem.v))
        converged += trace.solved

        state = StrategyState(rng=make_stream(seed, METHOD_STREAM))
        gammas = [gamma_random(state) for _ in range(SUPERLINEAR_ITERATIONS - 1)]
        trajectory = log_gradient_trajectory(ANALYSIS_LAMBDA, gradient(problem, x1), gammas)
        report = log_envelope_check(log_gradient_norms(trajectory), ANALYSIS_LAMBDA)
        decreasing += report.block_maxima_decreasing()
        bounded += report.all_satisfied
    passed = converged >= 0.95 * count and decreasing >= 0.9 * count and bounded == count
    return passed, (
        f"{format_percentage(converged / count)} converged, "
        f"{format_percentage(decreasing / count)} with decreasing block maxima, "
        f"{count - bounded} runs above the bound"
    )


def check_rlinear(context: VerifyContext) -> tuple[bool, str]:
    """FAMILY_FIXED(0.5) and ATC1 converge on set 1 with a fitted rate below 1."""
    count = context.size(3, 10)
    n, kappa = 100, 1e4
    failures = 0
    worst_rate = 0.0
    worst_quality = 0.0
    for seed in range(count):
        problem = make_problem(SpectrumKind.SET1, n, kappa, seed)
        for config in (
            RunConfig(method=MethodId.FAMILY_FIXED, gamma=0.5, epsilon=1e-9, record_gradients=True),
            RunConfig(method=MethodId.ATC1, epsilon=1e-9, record_gradients=True),
        ):
            trace = run_gradient_method(problem, np.ones(n), config)
            context.runs.append((trace, problem.v))
            rate, quality = rlinear_fit(trace)
            worst_rate = max(worst_rate, rate)
            worst_quality = max(worst_quality, quality)
            if not trace.solved or not rate < 1.0:
                failures += 1
    return failures == 0, f"{2 * count} runs, {failures} failures, max rate {worst_rate:.4f}, max fit rms {worst_quality:.2f}"


def check_property_a(context: VerifyContext) -> tuple[bool, str]:
    """min(v) <= 1/alpha_k <= max(v) on every recorded run."""
    if not context.runs:
        return False, "no recorded runs"
    violations = sum(len(property_a_check(trace, v).violations) for trace, v in context.runs)
    return violations == 0, f"{len(context.runs)} runs, {violations} violations"


def _suite_means(suite: ExperimentSuite) -> dict[str, float]:
    rows = run_suite(suite)
    means = {}
    for entry in suite.methods:
        iterations = [row.iterations if row.solved else math.inf for row in rows if row.method == entry.name]
        means[entry.name] = float(np.mean(iterations))
    return means


def check_atc_vs_bb(context: VerifyContext) -> tuple[bool, str]:
    """Mean ATC1(m=30) iterations are at most 0.85 times BB1's on set 1."""
    suite = ExperimentSuite(
        kind=SpectrumKind.SET1,
        n=1000,
        kappas=[1e4],
        epsilons=[1e-9],
        methods=[MethodEntry(method=MethodId.ATC1, m=30), MethodEntry(method=MethodId.BB1)],
        instances=10,
        seed=100,
    )
    means = _suite_means(suite)
    atc, bb = means["ATC1(m=30)"], means["BB1"]
    return atc <= 0.85 * bb, f"ATC1 {atc:.1f}, BB1 {bb:.1f}, ratio {atc / bb:.2f}"


def check_nonrand_band(context: VerifyContext) -> tuple[bool, str]:
    """ATC1 and ABB means lie within 40% of 558.8 and 531.3."""
    suite = ExperimentSuite(
        kind=SpectrumKind.NONRAND,
        n=10_000,
        kappas=[1e4],
        epsilons=[1e-6],
        methods=[MethodEntry(method=MethodId.ATC1), MethodEntry(method=MethodId.ABB)],
        instances=10,
    )
    means = _suite_means(suite)
    targets = {"ATC1": 558.8, "ABB": 531.3}
    passed = all(abs(means[name] - target) <= 0.4 * target for name, target in targets.items())
    return passed, ", ".join(f"{name} {means[name]:.1f} (target {target})" for name, target in targets.items())


def check_gamma_trend(context: VerifyContext) -> tuple[bool, str]:
    """The profile at rho = 2 does not drop from gamma 0.1 to 0.5 to 0.9."""
    gammas = (0.1, 0.5, 0.9, 1.0)
    suite = ExperimentSuite(
        kind=SpectrumKind.SET1,
        n=100,
        kappas=[1e4],
        epsilons=[1e-6],
        methods=[MethodEntry(method=MethodId.FAMILY_FIXED, gamma=gamma) for gamma in gammas],
        instances=40,
        seed=200,
    )
    curves = performance_profile(run_suite(suite))
    values = [curves[f"FAMILY_FIXED(gamma={gamma:g})"].value_at(2.0) for gamma in gammas]
    passed = values[0] <= values[1] <= values[2]
    return passed, ", ".join(f"gamma={gamma:g} {value:.2f}" for gamma, value in zip(gammas, values))


def check_xi_growth(context: VerifyContext) -> tuple[bool, str]:
    """|xi_k| >= (sqrt(2) - 1) 2^{k/2} c1 whenever |xi_2| > 8 log lambda."""
    rng = make_stream(11)
    qualifying = 0
    failures = 0
    for _ in range(50):
        m1, m2 = rng.uniform(-XI_START_RANGE, XI_START_RANGE, size=2)
        gammas = rng.uniform(0.0, 1.0, size=XI_LENGTH - 2)
        report = xi_sequence(log_recurrence_sequence(ANALYSIS_LAMBDA, m1, m2, gammas), ANALYSIS_LAMBDA)
        if report.hypothesis_met:
            qualifying += 1
            failures += not report.bound_holds
    return qualifying > 0 and failures == 0, f"{qualifying}/50 qualifying sequences, {failures} below the bound"


CHECKS: list[tuple[int, str, Callable[[VerifyContext], tuple[bool, str]], bool]] = [
    (1, "quasi-Newton property", check_quasi_newton, False),
    (2, "root monotone in tau", check_root_monotone, False),
    (3, "endpoint traces", check_endpoint_traces, False),
    (4, "recurrence equivalence", check_recurrence, False),
    (5, "2-D superlinear", check_superlinear, False),
    (6, "R-linear fit", check_rlinear, False),
    (7, "Property (A)(i)", check_property_a, False),
    (8, "ATC1 vs BB1 on set 1", check_atc_vs_bb, True),
    (9, "non-random problem band", check_nonrand_band, True),
    (10, "gamma trend in profiles", check_gamma_trend, True),
    (11, "xi growth", check_xi_growth, False),
]
"""(criterion, name, check, full tier only)."""


def run_checks(tier: str = "fast", psi: PsiFunction = psi_eval) -> list[CheckResult]:
    """Run the checks of a tier.

    A check that raises counts as failed.

    Args:
        tier: 'fast' or 'full'. Defaults to 'fast'.
        psi: psi implementation under test. Defaults to psi_eval.

    Raises:
        ValueError: The tier is unknown.

    Returns:
        CheckResult per check run, in criterion order.
    """
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}, got '{tier}'.")
    context = VerifyContext(tier=tier, psi=psi)
    results = []
    for criterion, name, check, full_only in CHECKS:
        if full_only and not context.full:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check(context)
        except Exception as error:
            logger.error("Check %d (%s) raised %s: %s", criterion, name, type(error).__name__, error)
            passed, detail = False, f"{type(error).__name__}: {error}"
        seconds = time.perf_counter() - start
        logger.info("Check %d (%s): %s in %.1f s.", criterion, name, "pass" if passed else "FAIL", seconds)
        results.append(CheckResult(criterion, name, bool(passed), detail, seconds))
    return results


def format_report(results: list[CheckResult]) -> str:
    """Render check results as an aligned pass/fail table."""
    rows = [
        [str(result.criterion), result.name, "pass" if result.passed else "FAIL", f"{result.seconds:.1f}s", result.detail]
        for result in results
    ]
    table = format_table(["#", "check", "result", "time", "detail"], rows, left=(1, 4))
    failed = sum(not result.passed for result in results)
    return f"{table}\n\n{len(results) - failed}/{len(results)} checks passed."
