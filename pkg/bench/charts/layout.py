"""Module with classes containing chart layout specifications.

Classes:
    ChartLayout: Layout specifications for the profile chart.
    ProfileColours: Line colours of profile curves.
"""


class ChartLayout:
    """Class with layout specifications for static charts.

    Attributes:
        GENERAL: Layout specifications used on all charts.
        LINE: Layout specifications for line charts.
    """

    GENERAL = {
        "font": {
            "family": "Helvetica, Arial, sans-serif",
            "color": "rgb(40, 40, 40)",
        },
        "plot_bgcolor": "rgb(255, 255, 255)",
        "paper_bgcolor": "rgb(255, 255, 255)",
        "margin": {
            "t": 30,
            "b": 60,
            "l": 70,
            "r": 30,
        },
    }
    """Layout specifications used on all charts.

    Charts are written to files, so the backgrounds are white instead of
    transparent.
    """

    LINE = {
        "xaxis": {
            "gridcolor": "rgb(230, 230, 230)",
            "linecolor": "rgb(80, 80, 80)",
            "linewidth": 2,
        },
        "yaxis": {
            "gridcolor": "rgb(230, 230, 230)",
            "gridwidth": 1,
            "linecolor": "rgb(80, 80, 80)",
            "linewidth": 2,
            "range": [0, 1.02],
        },
        "legend": {
            "x": 0.98,
            "y": 0.02,
            "xanchor": "right",
            "yanchor": "bottom",
            "bordercolor": "rgb(200, 200, 200)",
            "borderwidth": 1,
        },
    }
    """Layout specifications for line charts with a fraction on the y-axis."""


class ProfileColours:
    """Class with colours for profile curves.

    Attributes:
        LINES: rgb codes used in turn for successive methods.
    """

    LINES = (
        "rgb(50, 160, 200)",
        "rgb(200, 50, 80)",
        "rgb(20, 125, 0)",
        "rgb(255, 150, 0)",
        "rgb(120, 70, 170)",
        "rgb(90, 90, 90)",
        "rgb(0, 170, 150)",
        "rgb(180, 120, 60)",
    )
