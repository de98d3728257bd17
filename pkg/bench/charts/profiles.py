"""Module with functions to plot performance profiles.

Functions:
    plot_profiles: Plot one step line per method.
    write_svg: Write a figure as a static SVG file.
"""

from pathlib import Path

import plotly.graph_objects as go

from bench.charts.layout import ChartLayout, ProfileColours
from spectral.analysis import ProfileCurve


def plot_profiles(
    curves: dict[str, ProfileCurve],
    width: int = 700,
    height: int = 500,
) -> go.Figure:
    """Plot performance profiles.

    Args:
        curves: ProfileCurve objects keyed by method label.
        width: Width of the plot in pixels. Defaults to 700.
        height: Height of the plot in pixels. Defaults to 500.

    Returns:
        Plotly graph_objects figure with one line per method.
    """
    data = [
        go.Scatter(
            x=curve.rho,
            y=curve.fraction,
            mode="lines",
            name=label,
            line={"color": ProfileColours.LINES[i % len(ProfileColours.LINES)], "shape": "hv"},
        )
        for i, (label, curve) in enumerate(curves.items())
    ]

    layout = dict(
        **ChartLayout.GENERAL,
        **ChartLayout.LINE,
        width=width,
        height=height,
    )
    figure = go.Figure(data=data, layout=layout)
    figure.update_xaxes(title_text="rho")
    figure.update_yaxes(title_text="fraction of problems")
    return figure


def write_svg(figure: go.Figure, path: str | Path) -> None:
    """Write a figure as SVG.

    Args:
        figure: Plotly figure.
        path: Output file path.
    """
    figure.write_image(str(path), format="svg")
