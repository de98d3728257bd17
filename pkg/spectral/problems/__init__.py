from spectral.problems.enums import SpectrumKind
from spectral.problems.spectra import (
    SpectrumSpec,
    nonrand_spectrum,
    spectrum_layout,
    spectrum_sample,
)
from spectral.problems.quadratic import (
    IterateState,
    QuadraticProblem,
    from_eigenbasis,
    gradient,
    hessian_apply,
    make_diagonal_problem,
    make_nonrand_problem,
    make_random_problem,
    mg_stepsize,
    objective,
    sd_stepsize,
    to_eigenbasis,
)
from spectral.problems.io import read_problem, write_problem
