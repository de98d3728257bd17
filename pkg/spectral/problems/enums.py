"""Module containing enums for test problem classification.

Classes:
    SpectrumKind: Eigenvalue distribution enums.
"""

from enum import Enum


class SpectrumKind(Enum):
    """Enums for eigenvalue distributions."""

    SET1 = "set1"
    """Interior eigenvalues in (1, kappa)."""

    SET2 = "set2"
    """20% in (1, 100), the rest in (kappa/2, kappa)."""

    SET3 = "set3"
    """50% in (1, 100), the rest in (kappa/2, kappa)."""

    SET4 = "set4"
    """80% in (1, 100), the rest in (kappa/2, kappa)."""

    SET5 = "set5"
    """20% in (1, 100), 60% in (100, kappa/2), 20% in (kappa/2, kappa)."""

    SET6 = "set6"
    """Nine small eigenvalues in (1, 100), the rest in (kappa/2, kappa)."""

    SET7 = "set7"
    """Nine large eigenvalues in (kappa/2, kappa), the rest in (1, 100)."""

    EVEN = "even"
    """Evenly distributed in [1, kappa]; uniform draws or an equispaced grid."""

    NONRAND = "nonrand"
    """Deterministic log-spaced diagonal."""

    @property
    def is_random(self) -> bool:
        """True for kinds whose spectrum is drawn from a random stream."""
        return self is not SpectrumKind.NONRAND

    @property
    def default_atc_cycle(self) -> int:
        """ATC refresh period m tuned for this kind of spectrum."""
        if self in (SpectrumKind.SET1, SpectrumKind.SET5, SpectrumKind.EVEN):
            return 30
        return 8
