"""Module with the portable random streams used across the library.

Every random draw in the repository comes from numpy's Philox
generator (Philox4x64, 10 rounds), which is counter-based: the key is
the 64-bit seed and the counter starts at zero. Independent streams for
one seed are obtained by jumping the counter by ``stream * 2**128``, so
a port to another language only has to reproduce Philox4x64-10 and the
jump to obtain identical draws.

Functions:
    make_stream: Return a generator for a seed and stream index.
"""

import numpy as np


PROBLEM_STREAM = 0
"""Stream used to build a problem: spectrum, reflectors and b."""

START_STREAM = 1
"""Stream used to draw a starting point."""

METHOD_STREAM = 2
"""Stream used by methods that draw random numbers."""


def make_stream(seed: int, stream: int = PROBLEM_STREAM) -> np.random.Generator:
    """Return a generator for the given seed and stream index.

    Args:
        seed: Unsigned 64-bit seed.
        stream: Stream index. Defaults to the problem stream.

    Returns:
        numpy Generator backed by a Philox bit generator.
    """
    bit_generator = np.random.Philox(key=int(seed) % 2**64)
    if stream:
        bit_generator = bit_generator.jumped(stream)
    return np.random.Generator(bit_generator)
