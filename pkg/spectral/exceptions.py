"""Module with custom exceptions.

Classes:
    SpectralError: Base class for all errors raised by the library.
    CurvatureNonPositive: Error raised when s·y is not positive.
    DegeneratePair: Error raised when s or y is the zero vector.
    GammaOutOfRange: Error raised when a combination weight is not in
        [0, 1].
    NoSignChange: Error raised when a root bracket has no sign change.
    MissingParameter: Error raised when a strategy lacks a parameter.
    BadFraction: Error raised when a spectrum layout cannot be built.
    DimensionMismatch: Error raised on vectors of the wrong length.
    ZeroGradient: Error raised when a stepsize needs a nonzero gradient.
    InsufficientHistory: Error raised when a Yuan step lacks SD history.
    TooShort: Error raised when a sequence is too short to analyse.
    DimensionNotTwo: Error raised when a 2-D diagnostic gets n != 2.
    MissingEigenbasis: Error raised when eigenbasis gradients are absent.
    EmptyInput: Error raised when an aggregation receives no data.
    UnknownMethod: Error raised for an unrecognised method id.
"""


class SpectralError(Exception):
    """Base class for all errors raised by the library."""


class CurvatureNonPositive(SpectralError):
    """Error raised when the curvature s·y is not positive."""


class DegeneratePair(SpectralError):
    """Error raised when s or y of a gradient pair is zero."""


class GammaOutOfRange(SpectralError):
    """Error raised when a combination weight is outside [0, 1]."""


class NoSignChange(SpectralError):
    """Error raised when the root bracket has no sign change."""


class MissingParameter(SpectralError):
    """Error raised when a strategy parameter has not been set."""


class BadFraction(SpectralError):
    """Error raised when a spectrum's index layout cannot be filled."""


class DimensionMismatch(SpectralError):
    """Error raised when a vector does not match the problem dimension."""


class ZeroGradient(SpectralError):
    """Error raised when a stepsize is requested for a zero gradient."""


class InsufficientHistory(SpectralError):
    """Error raised when fewer than two exact SD steps are available."""


class TooShort(SpectralError):
    """Error raised when a sequence or trace is too short to analyse."""


class DimensionNotTwo(SpectralError):
    """Error raised when a two-dimensional diagnostic gets n != 2."""


class MissingEigenbasis(SpectralError):
    """Error raised when a trace has no eigenbasis gradients recorded."""


class EmptyInput(SpectralError):
    """Error raised when an aggregation receives no rows."""


class UnknownMethod(SpectralError):
    """Error raised when a method id has no implementation."""
