"""Module with the stepsize methods the solver can run.

Each method is a small class that owns the strategy state of one run.
The solver calls ``initial`` at k = 1, ``step`` at every later
iteration and ``advance`` after each step has been taken.

Classes:
    StepContext: A dataclass holding what a method may look at.
    StepsizeMethod: Base class for all methods.
    SteepestDescent, LongBB, ShortBB, GeometricMean: Classical rules.
    FamilyFixed, FamilyRandom, FamilySequence: Family stepsizes.
    TruncatedCyclic, TruncatedCyclicVariant: ATC rules.
    AlternateCyclic, AdaptiveBB, YuanType: Comparison methods.

Functions:
    first_stepsize: Stepsize used by every method at k = 1.
    resolve_parameters: Fill in method defaults for a run.
    make_method: Create the method object for a run configuration.
"""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from spectral.exceptions import MissingParameter, UnknownMethod
from spectral.problems import QuadraticProblem, SpectrumKind, sd_stepsize
from spectral.rng import METHOD_STREAM, make_stream
from spectral.solver.baselines import (
    BaselineState,
    baseline_adaptive,
    baseline_alternate_or_cyclic,
    baseline_yuan,
)
from spectral.solver.enums import MethodId
from spectral.solver.objects import RunConfig
from spectral.stepsize import (
    GradientPair,
    StepInterval,
    StrategyState,
    atc_step,
    atc_variant_step,
    compute_geomean,
    family_step,
    gamma_fixed,
    gamma_random,
)


DEFAULT_PARAMETERS: dict[MethodId, dict[str, float]] = {
    MethodId.CBB1: {"m": 3},
    MethodId.CBB2: {"m": 4},
    MethodId.CP: {"m": 4},
    MethodId.ABB: {"tau": 0.1},
    MethodId.ABBMIN1: {"tau": 0.8, "m": 9},
    MethodId.ABBMIN2: {"tau": 0.9, "m": 9},
    MethodId.SDC: {"h": 8, "m": 6},
}
"""Method defaults that do not depend on the problem."""

NONRAND_SDC_PARAMETERS = {"h": 30, "m": 2}
"""SDC defaults for the deterministic diagonal problem."""

ATC_METHODS = (MethodId.ATC1, MethodId.ATC2, MethodId.ATC3)


def first_stepsize(problem: QuadraticProblem, g1: np.ndarray) -> float:
    """Return the stepsize every method takes at k = 1.

    Args:
        problem: QuadraticProblem.
        g1: Nonzero gradient at the starting point.

    Raises:
        ZeroGradient: g1 is zero.

    Returns:
        The exact line search stepsize at x_1.
    """
    return sd_stepsize(problem, g1)


def resolve_parameters(config: RunConfig, kind: SpectrumKind | None = None) -> dict[str, float]:
    """Return the parameters of a run with method defaults filled in.

    The ATC refresh period depends on the spectrum kind (30 for sets 1
    and 5, 8 otherwise) and SDC uses (h, m) = (30, 2) on the
    deterministic diagonal problem.

    Args:
        config: RunConfig.
        kind: SpectrumKind of the problem, if known. Defaults to None.

    Returns:
        Dictionary with keys m, gamma, tau and h; unused ones are None.
    """
    parameters: dict[str, float | None] = {"m": None, "gamma": None, "tau": None, "h": None}
    if config.method in ATC_METHODS:
        parameters["m"] = kind.default_atc_cycle if kind is not None else SpectrumKind.SET2.default_atc_cycle
    elif config.method is MethodId.SDC and kind is SpectrumKind.NONRAND:
        parameters.update(NONRAND_SDC_PARAMETERS)
    else:
        parameters.update(DEFAULT_PARAMETERS.get(config.method, {}))

    for name in parameters:
        value = getattr(config, name)
        if value is not None:
            parameters[name] = value
    return parameters


@dataclass
class StepContext:
    """Dataclass containing what a method may use at iteration k.

    Attributes:
        k: 1-based iteration index.
        g: Gradient at x_k.
        grad_norm: ||g_k||.
        pair: GradientPair of the last step, None at k = 1.
        interval: StepInterval of pair, None at k = 1.
    """

    k: int
    g: np.ndarray
    grad_norm: float
    pair: GradientPair | None = None
    interval: StepInterval | None = None


class StepsizeMethod(ABC):
    """Base class for a stepsize method.

    Attributes:
        config: RunConfig of the run.
        problem: QuadraticProblem being solved.
        parameters: Resolved parameters of the run.
        state: StrategyState of the run.
    """

    method_id: ClassVar[MethodId | None] = None

    def __init__(self, config: RunConfig, problem: QuadraticProblem) -> None:
        self.config = config
        self.problem = problem
        self.parameters = resolve_parameters(config, problem.kind)
        self.state = self.make_state()

    def make_state(self) -> StrategyState:
        return StrategyState(m=int(self.parameters["m"] or 1))

    @property
    def label(self) -> str:
        return self.config.label

    def initial(self, context: StepContext) -> float:
        """Return the stepsize at k = 1."""
        return first_stepsize(self.problem, context.g)

    @abstractmethod
    def step(self, context: StepContext) -> float:
        """Return the stepsize at k >= 2."""

    def advance(self, alpha: float) -> None:
        self.state.advance(alpha)


class SteepestDescent(StepsizeMethod):
    def step(self, context: StepContext) -> float:
        return sd_stepsize(self.problem, context.g)


class LongBB(StepsizeMethod):
    def step(self, context: StepContext) -> float:
        return context.interval.bb1


class ShortBB(StepsizeMethod):
    def step(self, context: StepContext) -> float:
        return context.interval.bb2


class GeometricMean(StepsizeMethod):
    def step(self, context: StepContext) -> float:
        return compute_geomean(context.pair)


class FamilyFixed(StepsizeMethod):
    """Family stepsize with a constant gamma."""

    def make_state(self) -> StrategyState:
        if self.parameters["gamma"] is None:
            raise MissingParameter("FAMILY_FIXED needs a gamma.")
        return StrategyState(fixed_gamma=self.parameters["gamma"])

    def step(self, context: StepContext) -> float:
        return family_step(gamma_fixed(self.state), context.interval)


class FamilyRandom(StepsizeMethod):
    """Family stepsize with gamma drawn from the method stream of the seed."""

    def make_state(self) -> StrategyState:
        return StrategyState(rng=make_stream(self.config.seed, METHOD_STREAM))

    def step(self, context: StepContext) -> float:
        return family_step(gamma_random(self.state), context.interval)


class FamilySequence(StepsizeMethod):
    """Family stepsize with gamma_k read from a given sequence.

    gammas[0] is used at k = 2. The last value is repeated once the
    sequence is exhausted.
    """

    def __init__(self, config: RunConfig, problem: QuadraticProblem, gammas: Sequence[float]) -> None:
        if len(gammas) == 0:
            raise MissingParameter("A gamma sequence needs at least one value.")
        self.gammas = list(gammas)
        super().__init__(config, problem)

    @property
    def label(self) -> str:
        return "FAMILY_SEQUENCE"

    def step(self, context: StepContext) -> float:
        gamma = self.gammas[min(context.k - 2, len(self.gammas) - 1)]
        return family_step(gamma, context.interval)


class TruncatedCyclic(StepsizeMethod):
    """ATC: the previous stepsize truncated to [bb2, bb1]."""

    def step(self, context: StepContext) -> float:
        return atc_step(self.state, context.interval)


class TruncatedCyclicVariant(StepsizeMethod):
    """ATC refreshed with bb1, bb2 or the geometric mean every m steps."""

    def step(self, context: StepContext) -> float:
        variant = int(self.config.method.value[-1])
        return atc_variant_step(variant, self.state, context.interval, context.pair)


class _Baseline(StepsizeMethod):
    def make_state(self) -> BaselineState:
        return BaselineState(
            m=int(self.parameters["m"] or 1),
            tau=self.parameters["tau"] if self.parameters["tau"] is not None else 0.0,
            h=int(self.parameters["h"] or 2),
            dy_pattern=self.config.dy_pattern,
        )


class AlternateCyclic(_Baseline):
    """ALBB, CBB1, CBB2 and CP."""

    def step(self, context: StepContext) -> float:
        return baseline_alternate_or_cyclic(self.config.method, self.state, context.pair)


class AdaptiveBB(_Baseline):
    """ABB, ABBMIN1 and ABBMIN2."""

    def step(self, context: StepContext) -> float:
        return baseline_adaptive(self.config.method, self.state, context.interval)


class YuanType(_Baseline):
    """DY and SDC."""

    def initial(self, context: StepContext) -> float:
        alpha = super().initial(context)
        self.state.record_sd(alpha, context.grad_norm)
        return alpha

    def step(self, context: StepContext) -> float:
        return baseline_yuan(self.config.method, self.state, self.problem, context.g)


METHODS: dict[MethodId, type[StepsizeMethod]] = {
    MethodId.SD: SteepestDescent,
    MethodId.BB1: LongBB,
    MethodId.BB2: ShortBB,
    MethodId.P: GeometricMean,
    MethodId.FAMILY_FIXED: FamilyFixed,
    MethodId.FAMILY_RANDOM: FamilyRandom,
    MethodId.ATC: TruncatedCyclic,
    MethodId.ATC1: TruncatedCyclicVariant,
    MethodId.ATC2: TruncatedCyclicVariant,
    MethodId.ATC3: TruncatedCyclicVariant,
    MethodId.ALBB: AlternateCyclic,
    MethodId.CBB1: AlternateCyclic,
    MethodId.CBB2: AlternateCyclic,
    MethodId.CP: AlternateCyclic,
    MethodId.ABB: AdaptiveBB,
    MethodId.ABBMIN1: AdaptiveBB,
    MethodId.ABBMIN2: AdaptiveBB,
    MethodId.DY: YuanType,
    MethodId.SDC: YuanType,
}


def make_method(config: RunConfig, problem: QuadraticProblem) -> StepsizeMethod:
    """Create the stepsize method of a run.

    Args:
        config: RunConfig.
        problem: QuadraticProblem to be solved.

    Raises:
        UnknownMethod: No implementation is registered for the method.
        MissingParameter: A required parameter such as gamma is unset.

    Returns:
        A fresh StepsizeMethod owning the state of this run only.
    """
    try:
        method_class = METHODS[config.method]
    except KeyError:
        raise UnknownMethod(f"No implementation for {config.method}.") from None
    return method_class(config, problem)
