from .layout import ChartLayout, ProfileColours
from .profiles import plot_profiles, write_svg


__all__ = ["ChartLayout", "ProfileColours", "plot_profiles", "write_svg"]
