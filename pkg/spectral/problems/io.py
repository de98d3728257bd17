"""Module to write and read quadratic problems as plain text.

The format is line based. Five header lines are followed by sections
that each start with a bracketed name and hold one value per line:

    n 4
    kappa 1000.0
    kind set1
    seed 7
    rotated 1
    [v]
    ...
    [w1]
    ...
    [w2]
    ...
    [w3]
    ...
    [b]
    ...

Values are written with repr so they read back to the same doubles.
Reflector sections are present only when rotated is 1; seed is '-'
and kind is '-' when unknown.

Functions:
    write_problem: Write a problem file.
    read_problem: Read a problem file.
"""

from pathlib import Path

import numpy as np

from spectral.exceptions import DimensionMismatch
from spectral.problems.enums import SpectrumKind
from spectral.problems.quadratic import QuadraticProblem


HEADER_KEYS = ("n", "kappa", "kind", "seed", "rotated")
MISSING = "-"


def _section(name: str, values: np.ndarray) -> list[str]:
    return [f"[{name}]", *(repr(float(value)) for value in values)]


def write_problem(problem: QuadraticProblem, path: str | Path) -> None:
    """Write a problem to a plain-text file.

    Args:
        problem: QuadraticProblem to write.
        path: Output file path.
    """
    lines = [
        f"n {problem.n}",
        f"kappa {problem.kappa!r}",
        f"kind {problem.kind.value if problem.kind else MISSING}",
        f"seed {problem.seed if problem.seed is not None else MISSING}",
        f"rotated {int(problem.rotated)}",
        *_section("v", problem.v),
    ]
    if problem.householder is not None:
        for i, w in enumerate(problem.householder, start=1):
            lines += _section(f"w{i}", w)
    lines += _section("b", problem.b)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_problem(path: str | Path) -> QuadraticProblem:
    """Read a problem written by write_problem.

    Args:
        path: Problem file path.

    Raises:
        ValueError: The file is not in the problem format.
        DimensionMismatch: A section does not hold n values.

    Returns:
        The stored QuadraticProblem.
    """
    lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [line for line in lines if line]

    header: dict[str, str] = {}
    for key, line in zip(HEADER_KEYS, lines):
        name, _, value = line.partition(" ")
        if name != key:
            raise ValueError(f"Expected header '{key}', found '{line}'.")
        header[key] = value.strip()
    if len(header) != len(HEADER_KEYS):
        raise ValueError("Problem file header is incomplete.")

    sections: dict[str, list[float]] = {}
    current: list[float] | None = None
    for line in lines[len(HEADER_KEYS) :]:
        if line.startswith("[") and line.endswith("]"):
            current = sections.setdefault(line[1:-1], [])
        elif current is None:
            raise ValueError(f"Value outside a section: '{line}'.")
        else:
            current.append(float(line))

    n = int(header["n"])
    wanted = ["v", "b"]
    rotated = header["rotated"] == "1"
    if rotated:
        wanted += ["w1", "w2", "w3"]
    for name in wanted:
        if name not in sections:
            raise ValueError(f"Missing section [{name}].")
        if len(sections[name]) != n:
            raise DimensionMismatch(f"Section [{name}] has {len(sections[name])} values, expected {n}.")

    householder = None
    if rotated:
        householder = tuple(np.array(sections[f"w{i}"]) for i in (1, 2, 3))
    kind = None if header["kind"] == MISSING else SpectrumKind(header["kind"])
    seed = None if header["seed"] == MISSING else int(header["seed"])
    return QuadraticProblem(
        v=np.array(sections["v"]),
        b=np.array(sections["b"]),
        householder=householder,
        kind=kind,
        seed=seed,
    )
