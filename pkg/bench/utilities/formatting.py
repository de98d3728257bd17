"""Module with functions to format values and tables as text.

Functions:
    format_value: Format one table cell.
    format_percentage: Convert a decimal value to a percentage string.
    format_table: Align rows of strings into columns.
    frame_to_text: Render a DataFrame as an aligned text table.
"""

from collections.abc import Collection, Sequence

import polars as pl


MISSING = "-"


def format_value(value: object) -> str:
    """Format one table cell.

    Floats use up to 6 significant digits, null becomes '-'.

    Args:
        value: Cell value.

    Returns:
        The formatted value.
    """
    if value is None:
        return MISSING
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.1f}" if 1.0 <= abs(value) < 1e6 else f"{value:.6g}"
    return str(value)


def format_percentage(value: float) -> str:
    """Convert a decimal value to a percentage string.

    Converts a decimal value, e.g. 0.38, to a string representing
    it as a percentage, e.g. 38.0%.

    Args:
        value: The decimal value to convert to a percentage.

    Returns:
        The value as a percentage string.
    """
    return f"{value * 100:.1f}%"


def format_table(
    headers: Sequence[str], rows: Sequence[Sequence[str]], left: Collection[int] = (0,)
) -> str:
    """Align rows of strings into columns.

    Args:
        headers: Column headers.
        rows: Rows of cell strings, each as long as headers.
        left: Indices of left aligned columns, the rest are right
            aligned. Defaults to the first column.

    Returns:
        The table with a header rule, one line per row.
    """
    widths = [len(header) for header in headers]
    for row in rows:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]

    def line(cells: Sequence[str]) -> str:
        return "  ".join(
            cell.ljust(width) if i in left else cell.rjust(width)
            for i, (cell, width) in enumerate(zip(cells, widths))
        ).rstrip()

    rule = "  ".join("-" * width for width in widths)
    return "\n".join([line(headers), rule, *(line(row) for row in rows)])


def frame_to_text(df: pl.DataFrame) -> str:
    """Render a DataFrame as an aligned text table.

    Args:
        df: DataFrame to render.

    Returns:
        The table as text.
    """
    rows = [[format_value(value) for value in row] for row in df.iter_rows()]
    left = [i for i, dtype in enumerate(df.dtypes) if dtype == pl.Utf8]
    return format_table(df.columns, rows, left=left)
