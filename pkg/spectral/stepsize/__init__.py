from spectral.stepsize.pairs import GradientPair, StepInterval
from spectral.stepsize.core import (
    compute_bb1,
    compute_bb2,
    compute_geomean,
    family_step,
    phi_derivative,
    phi_eval,
    psi_eval,
    root_for_tau,
    root_sensitivity,
    tau_for_gamma,
)
from spectral.stepsize.gamma import (
    StrategyState,
    atc_step,
    atc_variant_step,
    gamma_cyclic,
    gamma_fixed,
    gamma_random,
)
