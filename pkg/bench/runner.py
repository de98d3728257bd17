"""Module to execute the jobs of an experiment suite.

Jobs are independent: each one rebuilds its problem from the job seed,
so they run in any order on any number of workers. Results are sorted
by (problem_id, method, epsilon) afterwards, which makes result files
identical for every worker count.

Functions:
    make_problem: Build the problem of a job.
    start_point: Build the starting point of a job.
    run_job: Run one job.
    run_suite: Run every job of a suite.
    write_results: Write result rows as CSV.
    read_results: Read a result CSV.
"""

import logging
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import polars as pl
from joblib import Parallel, delayed

from bench.suite import ExperimentSuite, Job
from spectral.problems import (
    QuadraticProblem,
    SpectrumKind,
    SpectrumSpec,
    make_nonrand_problem,
    make_random_problem,
)
from spectral.rng import PROBLEM_STREAM, START_STREAM, make_stream
from spectral.solver import RESULT_SCHEMA, ResultRow, results_frame, run_gradient_method


logger = logging.getLogger(__name__)

START_RANGE = 10.0


def make_problem(
    kind: SpectrumKind, n: int, kappa: float, seed: int, equispaced: bool = False
) -> QuadraticProblem:
    """Build a test problem from its kind, size, condition number and seed.

    Args:
        kind: SpectrumKind enum.
        n: Dimension.
        kappa: Condition number.
        seed: Problem seed, ignored by the non-random problem.
        equispaced: Equispaced spectrum for SpectrumKind.EVEN. Defaults
            to False.

    Returns:
        QuadraticProblem.
    """
    if kind is SpectrumKind.NONRAND:
        return make_nonrand_problem(n, kappa)
    rng = make_stream(seed, PROBLEM_STREAM)
    return make_random_problem(n, kappa, SpectrumSpec(kind, equispaced), rng, seed=seed)


def start_point(rule: str, n: int, seed: int) -> np.ndarray:
    """Return the all-ones vector or a uniform point in [-10, 10]^n.

    Args:
        rule: 'ones' or 'uniform'.
        n: Dimension.
        seed: Seed of the start point stream.

    Raises:
        ValueError: The rule is unknown.

    Returns:
        Starting point.
    """
    if rule == "ones":
        return np.ones(n)
    if rule == "uniform":
        return make_stream(seed, START_STREAM).uniform(-START_RANGE, START_RANGE, size=n)
    raise ValueError(f"Unknown start point rule '{rule}'.")


def run_job(job: Job) -> ResultRow:
    """Run one job and summarise it as a result row.

    Args:
        job: Job to run.

    Returns:
        ResultRow of the run.
    """
    problem = make_problem(job.kind, job.n, job.kappa, job.seed, job.equispaced)
    x1 = start_point(job.start, job.n, job.seed)
    config = job.run_config()
    trace = run_gradient_method(problem, x1, config)
    row = trace.to_row(job.problem_id, job.kappa, job.n, job.seed)
    return replace(row, method=job.entry.name)


def run_suite(suite: ExperimentSuite, workers: int = 1) -> list[ResultRow]:
    """Run every job of a suite.

    Args:
        suite: ExperimentSuite to run.
        workers: Number of worker processes. Defaults to 1.

    Raises:
        ValueError: workers is below 1.

    Returns:
        ResultRow per job, sorted by (problem_id, method, epsilon).
    """
    if workers < 1:
        raise ValueError(f"Number of workers must be at least 1, got {workers}.")
    jobs = suite.jobs()
    logger.info("Running %d jobs on %d worker(s).", len(jobs), workers)
    start = time.perf_counter()

    if workers == 1:
        rows = [run_job(job) for job in jobs]
    else:
        rows = Parallel(n_jobs=workers, verbose=0)(delayed(run_job)(job) for job in jobs)

    solved = sum(row.solved for row in rows)
    logger.info(
        "Finished %d jobs in %.1f s, %d solved.", len(rows), time.perf_counter() - start, solved
    )
    return sorted(rows, key=lambda row: (row.problem_id, row.method, row.epsilon))


def write_results(rows: list[ResultRow], path: str | Path) -> None:
    """Write result rows as CSV.

    Args:
        rows: ResultRow objects.
        path: Output file path.
    """
    results_frame(rows).write_csv(path)


def read_results(path: str | Path) -> pl.DataFrame:
    """Read a result CSV.

    Args:
        path: Path of the CSV.

    Returns:
        DataFrame with the result file columns.
    """
    return pl.read_csv(path, schema=RESULT_SCHEMA)
