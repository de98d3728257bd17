"""Module containing the run configuration and run result dataclasses.

Classes:
    RunConfig: A dataclass holding all parameters of one solver run.
    TraceRecord: A dataclass to represent one iterate of a run.
    RunTrace: A dataclass to represent a complete run.
    ResultRow: A dataclass to represent one line of a result file.

Functions:
    results_frame: Build a DataFrame from result rows.
    write_trace_csv: Write the per-iteration CSV of a run.
"""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
import polars as pl

from spectral.solver.enums import MethodId, Termination


DY_PATTERNS = ("alternate", "sd-y-y")
"""Cycle patterns of the DY method."""


@dataclass(kw_only=True)
class RunConfig:
    """Dataclass containing the parameters of one solver run.

    Parameters left as None take the method default, see
    spectral.solver.methods.DEFAULT_PARAMETERS.

    Attributes:
        method: MethodId enum.
        epsilon: Relative gradient tolerance. Defaults to 1e-6.
        max_iter: Maximum number of steps. Defaults to 20000.
        m: Cycle length, window length or number of held Yuan steps.
            Defaults to None.
        gamma: Fixed gamma for FAMILY_FIXED. Defaults to None.
        tau: Ratio threshold for the ABB methods. Defaults to None.
        h: Number of exact line search steps per SDC cycle. Defaults to
            None.
        seed: Seed of the method's random stream. Defaults to 0.
        record_gradients: Keep the eigenbasis gradients on the trace.
            Defaults to False.
        dy_pattern: 'alternate' or 'sd-y-y'. Defaults to 'alternate'.
    """

    method: MethodId
    epsilon: float = 1e-6
    max_iter: int = 20000
    m: int | None = None
    gamma: float | None = None
    tau: float | None = None
    h: int | None = None
    seed: int = 0
    record_gradients: bool = False
    dy_pattern: str = "alternate"

    def __post_init__(self) -> None:
        self.method = MethodId.parse(self.method)
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}.")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}.")
        if self.m is not None and self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}.")
        if self.h is not None and self.h < 2:
            raise ValueError(f"h must be at least 2, got {self.h}.")
        if self.dy_pattern not in DY_PATTERNS:
            raise ValueError(f"dy_pattern must be one of {DY_PATTERNS}, got '{self.dy_pattern}'.")

    @property
    def label(self) -> str:
        """Method name with its explicitly set parameters, e.g. 'ATC1(m=30)'."""
        parameters = [
            f"{name}={value:g}"
            for name, value in (("m", self.m), ("h", self.h), ("gamma", self.gamma), ("tau", self.tau))
            if value is not None
        ]
        if not parameters:
            return self.method.value
        return f"{self.method.value}({','.join(parameters)})"


@dataclass(frozen=True)
class TraceRecord:
    """Dataclass to represent one visited iterate.

    Attributes:
        k: 1-based iteration index.
        alpha: Stepsize taken from this iterate, nan for the last one.
        grad_norm: Gradient norm at the iterate.
        f_value: Objective value at the iterate.
    """

    k: int
    alpha: float
    grad_norm: float
    f_value: float


@dataclass(frozen=True)
class ResultRow:
    """Dataclass to represent one line of a result file.

    Attributes:
        problem_id: Problem identifier '<kind>-n<n>-k<kappa>-i<instance>'.
        method: Method label.
        epsilon: Relative gradient tolerance.
        kappa: Condition number.
        n: Dimension.
        seed: Seed of the problem instance.
        iterations: Number of steps taken.
        solved: True if the run converged.
        final_gradnorm: Gradient norm at the last iterate.
    """

    problem_id: str
    method: str
    epsilon: float
    kappa: float
    n: int
    seed: int
    iterations: int
    solved: bool
    final_gradnorm: float


RESULT_COLUMNS = tuple(column.name for column in fields(ResultRow))

RESULT_SCHEMA = {
    "problem_id": pl.Utf8,
    "method": pl.Utf8,
    "epsilon": pl.Float64,
    "kappa": pl.Float64,
    "n": pl.Int64,
    "seed": pl.Int64,
    "iterations": pl.Int64,
    "solved": pl.Boolean,
    "final_gradnorm": pl.Float64,
}


@dataclass
class RunTrace:
    """Dataclass to represent a complete solver run.

    There is one record per visited iterate x_1, ..., x_K, so a run that
    takes K - 1 steps has K records.

    Attributes:
        method: MethodId enum.
        label: Method label used in result files.
        epsilon: Relative gradient tolerance of the run.
        records: TraceRecord per iterate.
        termination: Termination enum.
        eigen_gradients: Gradients in the eigenbasis of A, one per
            record, or None when not recorded.
        n: Dimension of the problem. Defaults to None.
    """

    method: MethodId
    label: str
    epsilon: float
    records: list[TraceRecord] = field(default_factory=list)
    termination: Termination = Termination.MAX_ITER
    eigen_gradients: list[np.ndarray] | None = field(default=None, repr=False)
    n: int | None = None

    @property
    def iterations(self) -> int:
        """Number of steps taken."""
        return max(len(self.records) - 1, 0)

    @property
    def solved(self) -> bool:
        """True if the run converged."""
        return self.termination is Termination.CONVERGED

    @property
    def final_grad_norm(self) -> float:
        """Gradient norm at the last iterate."""
        return self.records[-1].grad_norm

    @property
    def alphas(self) -> np.ndarray:
        """Stepsizes alpha_1, ..., alpha_{K-1}."""
        return np.array([record.alpha for record in self.records[:-1]])

    @property
    def grad_norms(self) -> np.ndarray:
        """Gradient norms of all iterates."""
        return np.array([record.grad_norm for record in self.records])

    def to_row(self, problem_id: str, kappa: float, n: int, seed: int) -> ResultRow:
        """Summarise the run as a result row.

        Args:
            problem_id: Problem identifier.
            kappa: Condition number of the problem.
            n: Dimension of the problem.
            seed: Seed of the problem instance.

        Returns:
            ResultRow of the run.
        """
        return ResultRow(
            problem_id=problem_id,
            method=self.label,
            epsilon=self.epsilon,
            kappa=kappa,
            n=n,
            seed=seed,
            iterations=self.iterations,
            solved=self.solved,
            final_gradnorm=self.final_grad_norm,
        )


def results_frame(rows: list[ResultRow]) -> pl.DataFrame:
    """Return a DataFrame with one line per result row.

    Args:
        rows: ResultRow objects.

    Returns:
        DataFrame with the result file columns, in row order.
    """
    return pl.DataFrame([asdict(row) for row in rows], schema=RESULT_SCHEMA)


def write_trace_csv(trace: RunTrace, path: str | Path) -> None:
    """Write the per-iteration CSV 'k,alpha,gradnorm,fvalue' of a run.

    Args:
        trace: RunTrace to write.
        path: Output file path.
    """
    df = pl.DataFrame(
        {
            "k": [record.k for record in trace.records],
            "alpha": [record.alpha for record in trace.records],
            "gradnorm": [record.grad_norm for record in trace.records],
            "fvalue": [record.f_value for record in trace.records],
        },
        schema={"k": pl.Int64, "alpha": pl.Float64, "gradnorm": pl.Float64, "fvalue": pl.Float64},
    )
    df.write_csv(path)
