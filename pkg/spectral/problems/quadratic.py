"""Module with strictly convex quadratic test problems.

A problem is f(x) = 1/2 x'Ax - b'x with A = Q V Q', V diagonal and Q a
product of three Householder reflectors. A is never formed: products
with A cost three reflections each way plus a diagonal scaling.

Classes:
    QuadraticProblem: A dataclass holding the implicit A and b.
    IterateState: A dataclass holding an iterate, its gradient and
        objective value.

Functions:
    make_random_problem: Random problem from a spectrum spec.
    make_nonrand_problem: Deterministic diagonal problem.
    make_diagonal_problem: Diagonal problem from given eigenvalues.
    hessian_apply: Return A d.
    gradient: Return A x - b.
    objective: Return f(x).
    to_eigenbasis: Return Q' d.
    sd_stepsize: Exact line search (Cauchy) stepsize.
    mg_stepsize: Minimal gradient stepsize.
"""

from dataclasses import dataclass

import numpy as np

from spectral.exceptions import DimensionMismatch, ZeroGradient
from spectral.problems.enums import SpectrumKind
from spectral.problems.spectra import SpectrumSpec, nonrand_spectrum, spectrum_sample


B_RANGE = 10.0
"""Entries of b are drawn uniformly from [-B_RANGE, B_RANGE]."""


@dataclass(frozen=True)
class QuadraticProblem:
    """Dataclass to represent a strictly convex quadratic.

    Attributes:
        v: Positive eigenvalues, stored in generation order.
        b: Linear term.
        householder: Unit vectors (w1, w2, w3) of Q = H3 H2 H1, or None
            for a diagonal problem.
        kind: SpectrumKind the eigenvalues were generated from, or None.
        seed: Seed of the generating stream, or None.
    """

    v: np.ndarray
    b: np.ndarray
    householder: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
    kind: SpectrumKind | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.v.ndim != 1 or self.v.size < 1:
            raise DimensionMismatch("Eigenvalues must be a nonempty vector.")
        if self.b.shape != self.v.shape:
            raise DimensionMismatch(f"b has shape {self.b.shape}, expected {self.v.shape}.")
        if not np.all(self.v > 0):
            raise ValueError("All eigenvalues must be positive.")
        if self.householder is not None:
            for w in self.householder:
                if w.shape != self.v.shape:
                    raise DimensionMismatch("Reflector vectors must have length n.")

    @property
    def n(self) -> int:
        """Dimension."""
        return self.v.size

    @property
    def kappa(self) -> float:
        """Condition number max(v) / min(v)."""
        return float(self.v.max() / self.v.min())

    @property
    def rotated(self) -> bool:
        """True if A is not diagonal in the standard basis."""
        return self.householder is not None

    def check_dimension(self, d: np.ndarray) -> None:
        """Raise unless d is a vector of length n.

        Args:
            d: Vector to check.

        Raises:
            DimensionMismatch: d has the wrong shape.
        """
        if np.shape(d) != (self.n,):
            raise DimensionMismatch(f"Expected a vector of length {self.n}, got shape {np.shape(d)}.")


def _reflect(w: np.ndarray, d: np.ndarray) -> np.ndarray:
    return d - 2.0 * (w @ d) * w


def to_eigenbasis(problem: QuadraticProblem, d: np.ndarray) -> np.ndarray:
    """Return Q' d, the coordinates of d in the eigenbasis of A.

    Args:
        problem: QuadraticProblem.
        d: Vector of length n.

    Returns:
        Q' d, or d itself for a diagonal problem.
    """
    problem.check_dimension(d)
    if problem.householder is None:
        return np.asarray(d, dtype=float)
    w1, w2, w3 = problem.householder
    return _reflect(w1, _reflect(w2, _reflect(w3, d)))


def from_eigenbasis(problem: QuadraticProblem, u: np.ndarray) -> np.ndarray:
    """Return Q u.

    Args:
        problem: QuadraticProblem.
        u: Vector of eigenbasis coordinates.

    Returns:
        Q u, or u itself for a diagonal problem.
    """
    if problem.householder is None:
        return np.asarray(u, dtype=float)
    w1, w2, w3 = problem.householder
    return _reflect(w3, _reflect(w2, _reflect(w1, u)))


def hessian_apply(problem: QuadraticProblem, d: np.ndarray) -> np.ndarray:
    """Return A d = Q (v * (Q' d)).

    Args:
        problem: QuadraticProblem.
        d: Vector of length n.

    Raises:
        DimensionMismatch: d has the wrong length.

    Returns:
        The Hessian product, in O(n) operations.
    """
    return from_eigenbasis(problem, problem.v * to_eigenbasis(problem, d))


def gradient(problem: QuadraticProblem, x: np.ndarray) -> np.ndarray:
    """Return the gradient A x - b.

    Args:
        problem: QuadraticProblem.
        x: Point of length n.

    Raises:
        DimensionMismatch: x has the wrong length.

    Returns:
        Gradient at x.
    """
    return hessian_apply(problem, x) - problem.b


def objective(problem: QuadraticProblem, x: np.ndarray, g: np.ndarray | None = None) -> float:
    """Return f(x) = 1/2 x'Ax - b'x.

    Args:
        problem: QuadraticProblem.
        x: Point of length n.
        g: Gradient at x, if already known. Defaults to None.

    Returns:
        Objective value.
    """
    if g is None:
        g = gradient(problem, x)
    # x'Ax = x'(g + b)
    return float(0.5 * (x @ g) - 0.5 * (problem.b @ x))


def sd_stepsize(problem: QuadraticProblem, g: np.ndarray) -> float:
    """Return the exact line search stepsize g'g / g'Ag.

    Args:
        problem: QuadraticProblem.
        g: Nonzero gradient.

    Raises:
        ZeroGradient: g is zero.

    Returns:
        Reciprocal Rayleigh quotient of g.
    """
    gg = float(g @ g)
    if gg == 0.0:
        raise ZeroGradient("The SD stepsize is undefined at a zero gradient.")
    return gg / float(g @ hessian_apply(problem, g))


def mg_stepsize(problem: QuadraticProblem, g: np.ndarray) -> float:
    """Return the minimal gradient stepsize g'Ag / g'A²g.

    Args:
        problem: QuadraticProblem.
        g: Nonzero gradient.

    Raises:
        ZeroGradient: g is zero.

    Returns:
        Stepsize minimising the next gradient norm along -g.
    """
    if not np.any(g):
        raise ZeroGradient("The MG stepsize is undefined at a zero gradient.")
    ag = hessian_apply(problem, g)
    return float(g @ ag) / float(ag @ ag)


def _unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    w = rng.standard_normal(n)
    return w / np.linalg.norm(w)


def make_random_problem(
    n: int,
    kappa: float,
    spec: SpectrumSpec | str,
    rng: np.random.Generator,
    seed: int | None = None,
) -> QuadraticProblem:
    """Create a random problem A = Q V Q' with b uniform in [-10, 10].

    The stream is consumed in a fixed order: eigenvalues, w1, w2, w3,
    then b.

    Args:
        n: Dimension, at least 2.
        kappa: Condition number.
        spec: SpectrumSpec or kind name.
        rng: Random stream.
        seed: Seed of the stream, kept for reference. Defaults to None.

    Raises:
        BadFraction: n is too small for the distribution.

    Returns:
        QuadraticProblem with three reflectors.
    """
    spec = SpectrumSpec.parse(spec)
    v = spectrum_sample(spec, n, kappa, rng)
    householder = (_unit_vector(rng, n), _unit_vector(rng, n), _unit_vector(rng, n))
    b = rng.uniform(-B_RANGE, B_RANGE, size=n)
    return QuadraticProblem(v=v, b=b, householder=householder, kind=spec.kind, seed=seed)


def make_nonrand_problem(n: int, kappa: float) -> QuadraticProblem:
    """Create the deterministic diagonal problem with b = 0.

    Args:
        n: Dimension, at least 2.
        kappa: Condition number.

    Returns:
        Diagonal QuadraticProblem.
    """
    return QuadraticProblem(v=nonrand_spectrum(n, kappa), b=np.zeros(n), kind=SpectrumKind.NONRAND)


def make_diagonal_problem(v: np.ndarray, b: np.ndarray | None = None) -> QuadraticProblem:
    """Create a diagonal problem from given eigenvalues.

    Args:
        v: Positive eigenvalues.
        b: Linear term. Defaults to zero.

    Returns:
        Diagonal QuadraticProblem.
    """
    v = np.asarray(v, dtype=float)
    b = np.zeros_like(v) if b is None else np.asarray(b, dtype=float)
    return QuadraticProblem(v=v, b=b)


@dataclass(frozen=True)
class IterateState:
    """Dataclass to represent an iterate and the quantities evaluated at it.

    Attributes:
        k: 1-based iteration index.
        x: Iterate.
        g: Gradient A x - b.
        f: Objective value.
    """

    k: int
    x: np.ndarray
    g: np.ndarray
    f: float

    @classmethod
    def at(cls, problem: QuadraticProblem, x: np.ndarray, k: int = 1) -> "IterateState":
        """Evaluate the gradient and objective at x.

        Args:
            problem: QuadraticProblem.
            x: Point of length n.
            k: Iteration index. Defaults to 1.

        Raises:
            DimensionMismatch: x has the wrong length.

        Returns:
            IterateState at x.
        """
        x = np.asarray(x, dtype=float)
        g = gradient(problem, x)
        return cls(k=k, x=x, g=g, f=objective(problem, x, g))

    @property
    def grad_norm(self) -> float:
        """Euclidean norm of the gradient."""
        return float(np.linalg.norm(self.g))
