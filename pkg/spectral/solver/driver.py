"""Module with the gradient method driver.

Functions:
    run_gradient_method: Run x_{k+1} = x_k - alpha_k g_k to termination.
"""

import logging
import math

import numpy as np

from spectral.problems import IterateState, QuadraticProblem, hessian_apply, to_eigenbasis
from spectral.solver.enums import Termination
from spectral.solver.methods import StepContext, StepsizeMethod, make_method
from spectral.solver.objects import RunConfig, RunTrace, TraceRecord
from spectral.stepsize import GradientPair, StepInterval


logger = logging.getLogger(__name__)

STAGNATION_TOL = 1e-16
"""A step with ||s|| <= STAGNATION_TOL * (1 + ||x||) ends the run."""


def _stagnated(pair: GradientPair, x: np.ndarray) -> bool:
    if math.sqrt(pair.ss) <= STAGNATION_TOL * (1.0 + float(np.linalg.norm(x))):
        return True
    return pair.yy == 0.0 or not pair.has_curvature


def run_gradient_method(
    problem: QuadraticProblem,
    x1: np.ndarray,
    config: RunConfig,
    method: StepsizeMethod | None = None,
) -> RunTrace:
    """Minimise a quadratic with a gradient method.

    The run stops at the first iterate with ||g_k|| <= epsilon ||g_1||
    (converged), after max_iter steps (max_iter), or when a step no
    longer moves the iterate or changes the gradient (stagnated).

    Args:
        problem: QuadraticProblem to minimise.
        x1: Starting point.
        config: RunConfig.
        method: StepsizeMethod to use instead of the one named by
            config. Defaults to None.

    Raises:
        DimensionMismatch: x1 has the wrong length.
        MissingParameter: The method lacks a required parameter.

    Returns:
        RunTrace with one record per visited iterate.
    """
    if method is None:
        method = make_method(config, problem)
    trace = RunTrace(
        method=config.method,
        label=method.label,
        epsilon=config.epsilon,
        eigen_gradients=[] if config.record_gradients else None,
        n=problem.n,
    )

    current = IterateState.at(problem, x1)
    g1_norm = current.grad_norm
    pair: GradientPair | None = None

    while True:
        grad_norm = current.grad_norm
        if trace.eigen_gradients is not None:
            trace.eigen_gradients.append(to_eigenbasis(problem, current.g))

        if grad_norm <= config.epsilon * g1_norm:
            trace.termination = Termination.CONVERGED
            break
        if current.k > config.max_iter:
            trace.termination = Termination.MAX_ITER
            break

        context = StepContext(k=current.k, g=current.g, grad_norm=grad_norm)
        if pair is None:
            alpha = method.initial(context)
        else:
            context.pair = pair
            context.interval = StepInterval.from_pair(pair)
            alpha = method.step(context)

        x_next = current.x - alpha * current.g
        following = IterateState.at(problem, x_next, current.k + 1)
        # y = A s rather than the gradient difference g_{k+1} - g_k, which
        # equals A s only in exact arithmetic; this keeps 1/bb1 and 1/bb2
        # inside [min(v), max(v)] even when g is tiny.
        s = following.x - current.x
        pair = GradientPair.from_vectors(s, hessian_apply(problem, s))
        if _stagnated(pair, current.x):
            trace.termination = Termination.STAGNATED
            break

        trace.records.append(TraceRecord(k=current.k, alpha=alpha, grad_norm=grad_norm, f_value=current.f))
        method.advance(alpha)
        current = following

    trace.records.append(TraceRecord(k=current.k, alpha=math.nan, grad_norm=current.grad_norm, f_value=current.f))

    if trace.termination is Termination.CONVERGED:
        logger.debug("%s converged in %d iterations.", trace.label, trace.iterations)
    else:
        logger.warning(
            "%s stopped (%s) after %d iterations at relative gradient norm %.3e.",
            trace.label,
            trace.termination.value,
            trace.iterations,
            current.grad_norm / g1_norm if g1_norm else 0.0,
        )
    return trace
