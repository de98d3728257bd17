"""Module to compute performance profiles from result rows.

A problem is one (problem_id, epsilon) pair. For each method and factor
rho the profile is the fraction of problems the method solves within
rho times the iterations of the best method on that problem. Unsolved
runs cost +inf and problems no method solves are left out.

Classes:
    ProfileCurve: A dataclass holding the profile of one method.

Functions:
    performance_profile: Compute the profile of every method.
    write_profile_csv: Write profiles as 'method,rho,fraction'.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import polars as pl

from spectral.exceptions import EmptyInput
from spectral.solver import ResultRow, results_frame


DEFAULT_RHO_GRID = np.geomspace(1.0, 16.0, 200)
PROBLEM_KEY = ["problem_id", "epsilon"]


@dataclass(frozen=True)
class ProfileCurve:
    """Dataclass to represent the performance profile of one method.

    Attributes:
        method: Method label.
        rho: Increasing factors.
        fraction: Fraction of problems solved within each factor.
        ratios: Performance ratio on every counted problem, +inf where
            unsolved.
    """

    method: str
    rho: np.ndarray
    fraction: np.ndarray
    ratios: np.ndarray

    def value_at(self, rho: float) -> float:
        """Return the fraction of problems with ratio <= rho."""
        return float(np.mean(self.ratios <= rho))


def _as_frame(results: pl.DataFrame | Sequence[ResultRow]) -> pl.DataFrame:
    if isinstance(results, pl.DataFrame):
        return results
    return results_frame(list(results))


def performance_profile(
    results: pl.DataFrame | Sequence[ResultRow],
    rho_grid: np.ndarray | None = None,
) -> dict[str, ProfileCurve]:
    """Compute the performance profile of every method in a result set.

    A method with no row for a problem counts as unsolved there.

    Args:
        results: DataFrame with the result file columns, or ResultRow
            objects.
        rho_grid: Factors rho >= 1. Defaults to 200 geometric points
            from 1 to 16.

    Raises:
        EmptyInput: There are no rows, or no problem is solved by any
            method.
        ValueError: A (problem, method) pair appears more than once.

    Returns:
        Dictionary of ProfileCurve keyed by method label, in label order.
    """
    df = _as_frame(results)
    if df.height == 0:
        raise EmptyInput("No results to profile.")
    rho = np.asarray(DEFAULT_RHO_GRID if rho_grid is None else rho_grid, dtype=float)

    duplicates = df.group_by([*PROBLEM_KEY, "method"]).len().filter(pl.col("len") > 1)
    if duplicates.height:
        raise ValueError(f"{duplicates.height} (problem, method) pairs appear more than once.")

    methods = sorted(df.get_column("method").unique().to_list())
    wide = (
        df.with_columns(
            pl.when(pl.col("solved"))
            .then(pl.col("iterations").cast(pl.Float64))
            .otherwise(float("inf"))
            .alias("cost")
        )
        .pivot(on="method", index=PROBLEM_KEY, values="cost")
        .sort(PROBLEM_KEY)
        .with_columns(pl.col(methods).fill_null(float("inf")))
    )
    costs = wide.select(methods).to_numpy().astype(float)
    best = costs.min(axis=1)
    costs, best = costs[np.isfinite(best)], best[np.isfinite(best)]
    if best.size == 0:
        raise EmptyInput("No problem is solved by any method.")

    # A best of 0 iterations: ratio 1 for methods that also take 0, +inf otherwise.
    safe_best = np.where(best > 0, best, 1.0)[:, None]
    ratios = np.where(best[:, None] > 0, costs / safe_best, np.where(costs == 0, 1.0, np.inf))

    curves = {}
    for j, method in enumerate(methods):
        method_ratios = ratios[:, j]
        fraction = np.mean(method_ratios[None, :] <= rho[:, None], axis=1)
        curves[method] = ProfileCurve(method=method, rho=rho, fraction=fraction, ratios=method_ratios)
    return curves


def write_profile_csv(curves: dict[str, ProfileCurve], path: str | Path) -> None:
    """Write profiles in long format 'method,rho,fraction'.

    Args:
        curves: ProfileCurve objects keyed by method label.
        path: Output file path.
    """
    frames = [
        pl.DataFrame({"method": [curve.method] * len(curve.rho), "rho": curve.rho, "fraction": curve.fraction})
        for curve in curves.values()
    ]
    pl.concat(frames).write_csv(path)
