"""Module containing the gradient pair and stepsize interval dataclasses.

Classes:
    GradientPair: A dataclass holding an iterate displacement, the
        matching gradient difference and their inner products.
    StepInterval: A dataclass holding the long and short BB stepsizes.
"""

from dataclasses import dataclass

import numpy as np

from spectral.exceptions import CurvatureNonPositive, DegeneratePair, DimensionMismatch


CURVATURE_GUARD = 1e-30
"""Relative threshold below which s·y counts as non-positive."""


@dataclass(frozen=True)
class GradientPair:
    """Dataclass to represent a displacement and gradient difference.

    Use ``GradientPair.from_vectors`` to build a pair; it computes the
    cached inner products once.

    Attributes:
        s: Iterate displacement x_k - x_{k-1}.
        y: Gradient difference g_k - g_{k-1}.
        ss: s·s.
        sy: s·y.
        yy: y·y.
    """

    s: np.ndarray
    y: np.ndarray
    ss: float
    sy: float
    yy: float

    @classmethod
    def from_vectors(cls, s: np.ndarray, y: np.ndarray) -> "GradientPair":
        """Create a pair and cache its inner products.

        Args:
            s: Iterate displacement.
            y: Gradient difference.

        Raises:
            DimensionMismatch: s and y differ in length or are empty.

        Returns:
            GradientPair with ss, sy and yy filled in.
        """
        s = np.asarray(s, dtype=float)
        y = np.asarray(y, dtype=float)
        if s.shape != y.shape or s.ndim != 1 or s.size == 0:
            raise DimensionMismatch(
                f"s and y must be nonempty vectors of equal length, got {s.shape} and {y.shape}."
            )
        return cls(s=s, y=y, ss=float(s @ s), sy=float(s @ y), yy=float(y @ y))

    @property
    def has_curvature(self) -> bool:
        """True if s·y is safely positive."""
        return self.sy > CURVATURE_GUARD * max(self.ss, self.yy)

    def require_curvature(self) -> None:
        """Raise unless the pair has positive curvature.

        Raises:
            DegeneratePair: s is the zero vector.
            CurvatureNonPositive: s·y is not safely positive.
        """
        if self.ss == 0.0:
            raise DegeneratePair("Displacement s is the zero vector.")
        if not self.has_curvature:
            raise CurvatureNonPositive(f"s·y = {self.sy!r} is not positive.")


@dataclass(frozen=True)
class StepInterval:
    """Dataclass to represent the interval spanned by the BB stepsizes.

    Attributes:
        bb1: Long BB stepsize s·s / s·y.
        bb2: Short BB stepsize s·y / y·y.
    """

    bb1: float
    bb2: float

    @classmethod
    def from_pair(cls, pair: GradientPair) -> "StepInterval":
        """Create the interval [bb2, bb1] of a gradient pair.

        Args:
            pair: GradientPair with positive curvature.

        Raises:
            CurvatureNonPositive: s·y is not safely positive.

        Returns:
            StepInterval of the pair.
        """
        pair.require_curvature()
        bb1 = pair.ss / pair.sy
        bb2 = pair.sy / pair.yy
        # Rounding can push bb2 a hair above bb1 when s is parallel to y.
        return cls(bb1=bb1, bb2=min(bb2, bb1))

    @property
    def width(self) -> float:
        """bb1 - bb2, zero when the gradient is an eigenvector."""
        return self.bb1 - self.bb2

    @property
    def degenerate(self) -> bool:
        """True if the interval has collapsed to a point."""
        return self.bb1 == self.bb2

    def contains(self, alpha: float, rtol: float = 0.0) -> bool:
        """Check whether a stepsize lies in [bb2, bb1].

        Args:
            alpha: Stepsize to test.
            rtol: Relative slack on both ends. Defaults to 0.

        Returns:
            True if bb2 <= alpha <= bb1 within the slack.
        """
        return self.bb2 * (1 - rtol) <= alpha <= self.bb1 * (1 + rtol)
