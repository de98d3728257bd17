"""Module containing enums for solver runs.

Classes:
    MethodId: Stepsize method enums.
    Termination: Termination reason enums.
"""

from enum import Enum

from spectral.exceptions import UnknownMethod


class MethodId(Enum):
    """Enums for stepsize methods."""

    SD = "SD"
    """Exact line search (Cauchy) stepsize at every iteration."""

    BB1 = "BB1"
    """Long Barzilai-Borwein stepsize."""

    BB2 = "BB2"
    """Short Barzilai-Borwein stepsize."""

    P = "P"
    """Geometric mean of the two BB stepsizes."""

    FAMILY_FIXED = "FAMILY_FIXED"
    """Family stepsize with a constant gamma."""

    FAMILY_RANDOM = "FAMILY_RANDOM"
    """Family stepsize with gamma drawn uniformly from (0, 1)."""

    ATC = "ATC"
    """Adaptive truncated cyclic stepsize without refresh."""

    ATC1 = "ATC1"
    """ATC refreshed with the long BB stepsize every m iterations."""

    ATC2 = "ATC2"
    """ATC refreshed with the short BB stepsize every m iterations."""

    ATC3 = "ATC3"
    """ATC refreshed with the geometric mean every m iterations."""

    ALBB = "ALBB"
    """Alternate BB: long on odd iterations, short on even ones."""

    ABB = "ABB"
    """Adaptive BB with a fixed ratio threshold."""

    CBB1 = "CBB1"
    """Cyclic BB holding the long stepsize for m iterations."""

    CBB2 = "CBB2"
    """Cyclic BB holding the short stepsize for m iterations."""

    CP = "CP"
    """Cyclic method holding the geometric mean for m iterations."""

    DY = "DY"
    """Exact line search interleaved with Yuan stepsizes."""

    ABBMIN1 = "ABBMIN1"
    """Adaptive BB taking the smallest recent short stepsize."""

    ABBMIN2 = "ABBMIN2"
    """ABBMIN1 with a threshold that adapts to each choice."""

    SDC = "SDC"
    """h exact line searches followed by m held Yuan stepsizes."""

    @classmethod
    def parse(cls, value: "str | MethodId") -> "MethodId":
        """Return the method for a name, ignoring case.

        Args:
            value: Method name or MethodId.

        Raises:
            UnknownMethod: The name is not a known method.

        Returns:
            MethodId enum.
        """
        if isinstance(value, MethodId):
            return value
        name = str(value).strip().upper()
        try:
            return cls(name)
        except ValueError:
            raise UnknownMethod(f"Unknown method '{value}'.") from None


class Termination(Enum):
    """Enums for the reason a run stopped."""

    CONVERGED = "converged"
    """The gradient norm reached epsilon times the initial norm."""

    MAX_ITER = "max_iter"
    """The iteration cap was reached first."""

    STAGNATED = "stagnated"
    """The step or gradient change fell to round-off level."""
