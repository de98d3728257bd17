"""Module with the eigenvalue generators for quadratic test problems.

Classes:
    SpectrumSpec: A dataclass describing an eigenvalue distribution.

Functions:
    spectrum_layout: Index ranges and intervals of a distribution.
    spectrum_sample: Draw an eigenvalue vector.
    nonrand_spectrum: The deterministic log-spaced diagonal.
"""

from dataclasses import dataclass

import numpy as np

from spectral.exceptions import BadFraction
from spectral.problems.enums import SpectrumKind


SMALL_BAND = 100.0
"""Upper end of the band of small eigenvalues."""

EDGE_COUNT = 10
"""Index that bounds the few small (set 6) or large (set 7) eigenvalues."""


@dataclass(frozen=True)
class SpectrumSpec:
    """Dataclass describing an eigenvalue distribution.

    Attributes:
        kind: SpectrumKind enum.
        equispaced: Use an equispaced grid instead of uniform draws for
            SpectrumKind.EVEN. Defaults to False.
    """

    kind: SpectrumKind
    equispaced: bool = False

    @classmethod
    def parse(cls, value: "str | SpectrumKind | SpectrumSpec") -> "SpectrumSpec":
        """Create a spec from a kind name such as 'set1' or '1'.

        Args:
            value: Kind name, set number, SpectrumKind or SpectrumSpec.

        Raises:
            ValueError: The name is not a known kind.

        Returns:
            SpectrumSpec for the kind.
        """
        if isinstance(value, SpectrumSpec):
            return value
        if isinstance(value, SpectrumKind):
            return cls(value)
        name = str(value).strip().lower()
        if name.isdigit():
            name = f"set{name}"
        return cls(SpectrumKind(name))


def spectrum_layout(
    kind: SpectrumKind, n: int, kappa: float
) -> list[tuple[int, int, float, float]]:
    """Return the index ranges and sampling intervals of a distribution.

    Indices are 1-based and cover v_2 ... v_{n-1}; v_1 and v_n are
    pinned to 1 and kappa. Fractional boundaries are rounded down.

    Args:
        kind: SpectrumKind enum, not NONRAND.
        n: Dimension.
        kappa: Condition number.

    Raises:
        BadFraction: A group of the layout would be empty or its
            interval would be empty.

    Returns:
        List of (first index, last index, low, high) tuples.
    """
    big = (kappa / 2.0, kappa)
    small = (1.0, SMALL_BAND)
    match kind:
        case SpectrumKind.SET1 | SpectrumKind.EVEN:
            return [(2, n - 1, 1.0, kappa)]
        case SpectrumKind.SET2:
            layout = [(2, n // 5, *small), (n // 5 + 1, n - 1, *big)]
        case SpectrumKind.SET3:
            layout = [(2, n // 2, *small), (n // 2 + 1, n - 1, *big)]
        case SpectrumKind.SET4:
            layout = [(2, 4 * n // 5, *small), (4 * n // 5 + 1, n - 1, *big)]
        case SpectrumKind.SET5:
            layout = [
                (2, n // 5, *small),
                (n // 5 + 1, 4 * n // 5, SMALL_BAND, kappa / 2.0),
                (4 * n // 5 + 1, n - 1, *big),
            ]
        case SpectrumKind.SET6:
            layout = [(2, EDGE_COUNT, *small), (EDGE_COUNT + 1, n - 1, *big)]
        case SpectrumKind.SET7:
            layout = [(2, n - EDGE_COUNT, *small), (n - EDGE_COUNT + 1, n - 1, *big)]
        case _:
            raise ValueError(f"{kind} has no interval layout.")

    for first, last, low, high in layout:
        if last < first:
            raise BadFraction(f"n={n} is too small for the index layout of {kind.value}.")
        if not low < high:
            raise BadFraction(f"kappa={kappa:g} leaves the interval ({low:g}, {high:g}) empty.")
    return layout


def spectrum_sample(
    spec: SpectrumSpec, n: int, kappa: float, rng: np.random.Generator
) -> np.ndarray:
    """Draw the eigenvalues of a test problem.

    Eigenvalues are returned in index order, unsorted, with v_1 = 1 and
    v_n = kappa exactly.

    Args:
        spec: SpectrumSpec.
        n: Dimension, at least 2.
        kappa: Condition number, greater than 1.
        rng: Random stream; unused for deterministic kinds.

    Raises:
        ValueError: n < 2 or kappa <= 1.
        BadFraction: n is too small for the distribution.

    Returns:
        Vector of n eigenvalues.
    """
    if n < 2 or not kappa > 1:
        raise ValueError(f"Need n >= 2 and kappa > 1, got n={n}, kappa={kappa}.")
    if spec.kind is SpectrumKind.NONRAND:
        return nonrand_spectrum(n, kappa)
    if spec.kind is SpectrumKind.EVEN and spec.equispaced:
        v = np.linspace(1.0, kappa, n)
    else:
        v = np.empty(n)
        for first, last, low, high in spectrum_layout(spec.kind, n, kappa):
            v[first - 1 : last] = rng.uniform(low, high, size=last - first + 1)
    v[0] = 1.0
    v[-1] = kappa
    return v


def nonrand_spectrum(n: int, kappa: float) -> np.ndarray:
    """Return the deterministic diagonal 10^(ncond (n - j) / (n - 1)).

    Args:
        n: Dimension, at least 2.
        kappa: Condition number, greater than 1.

    Returns:
        Vector with v_1 = 1, v_n = kappa and log-spaced values between.
    """
    if n < 2 or not kappa > 1:
        raise ValueError(f"Need n >= 2 and kappa > 1, got n={n}, kappa={kappa}.")
    ncond = np.log10(kappa)
    j = np.arange(1, n + 1)
    v = 10.0 ** (ncond / (n - 1) * (n - j))
    v[0] = 1.0
    v[-1] = kappa
    return v
