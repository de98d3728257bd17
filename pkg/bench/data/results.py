"""Module with functions to aggregate result files into tables.

Functions:
    add_set_column: Add the spectrum set of every row.
    mean_iterations: Mean iterations per group over solved runs.
    pivot_iterations: Lay out mean iterations with one column per method.
    unsolved_runs: Count unsolved runs per group.
"""

from collections.abc import Sequence

import polars as pl

from spectral.exceptions import EmptyInput


DEFAULT_GROUPING = ("set", "method", "kappa", "epsilon")
GROUP_COLUMNS = {"set", "method", "kappa", "epsilon", "n"}


def add_set_column(df: pl.DataFrame) -> pl.DataFrame:
    """Add the spectrum set, the prefix of problem_id, as column 'set'.

    Args:
        df: DataFrame with the result file columns.

    Returns:
        DataFrame with a 'set' column added.
    """
    return df.with_columns(pl.col("problem_id").str.split("-").list.first().alias("set"))


def _check_grouping(df: pl.DataFrame, grouping: Sequence[str]) -> list[str]:
    if df.height == 0:
        raise EmptyInput("No results to aggregate.")
    unknown = sorted(set(grouping) - GROUP_COLUMNS)
    if unknown:
        raise ValueError(f"Cannot group by {', '.join(unknown)}.")
    return list(grouping)


def mean_iterations(df: pl.DataFrame, grouping: Sequence[str] = DEFAULT_GROUPING) -> pl.DataFrame:
    """Calculate mean iterations per group over solved runs only.

    Unsolved runs are counted but never averaged in. A group with no
    solved run has a null mean.

    Args:
        df: DataFrame with the result file columns.
        grouping: Columns to group by, from set, method, kappa, epsilon
            and n. Defaults to (set, method, kappa, epsilon).

    Raises:
        EmptyInput: The DataFrame has no rows.
        ValueError: A grouping column is unknown.

    Returns:
        DataFrame sorted by the grouping columns.

        Columns:
            <grouping columns>
            Runs: Int
            Solved: Int
            Unsolved: Int
            Mean Iterations: Float | null
    """
    grouping = _check_grouping(df, grouping)
    return (
        add_set_column(df)
        .group_by(grouping)
        .agg(
            pl.len().alias("Runs"),
            pl.col("solved").sum().alias("Solved"),
            pl.col("iterations").filter(pl.col("solved")).mean().alias("Mean Iterations"),
        )
        .with_columns((pl.col("Runs") - pl.col("Solved")).alias("Unsolved"))
        .select([*grouping, "Runs", "Solved", "Unsolved", "Mean Iterations"])
        .sort(grouping)
    )


def pivot_iterations(summary: pl.DataFrame) -> pl.DataFrame:
    """Lay out mean iterations with one row per cell and one column per method.

    Args:
        summary: DataFrame from mean_iterations including a 'method'
            grouping column.

    Returns:
        DataFrame with the non-method grouping columns followed by one
        column per method label.
    """
    index = [column for column in summary.columns if column in GROUP_COLUMNS and column != "method"]
    methods = summary.get_column("method").unique(maintain_order=True).to_list()
    return (
        summary.pivot(on="method", index=index, values="Mean Iterations")
        .select([*index, *methods])
        .sort(index)
    )


def unsolved_runs(summary: pl.DataFrame) -> pl.DataFrame:
    """Return the groups with at least one unsolved run.

    Args:
        summary: DataFrame from mean_iterations.

    Returns:
        DataFrame with the grouping columns and Unsolved/Runs counts.
    """
    grouping = [column for column in summary.columns if column in GROUP_COLUMNS]
    return summary.filter(pl.col("Unsolved") > 0).select([*grouping, "Unsolved", "Runs"])
