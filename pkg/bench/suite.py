"""Module to read experiment suites and expand them into jobs.

A suite is a TOML file with three sections:

    [problem]
    kind = "set1"          # set1 ... set7, even, nonrand
    n = 1000
    kappa = [1e4, 1e5, 1e6]
    equispaced = false     # optional, for kind = "even"
    start = "ones"         # optional, "ones" or "uniform"

    [run]
    epsilon = [1e-6, 1e-9]
    instances = 10
    seed = 0
    max_iter = 20000

    [[methods]]
    id = "ATC1"
    label = "ATC1(m=30)"   # optional
    m = 30                 # optional, also gamma, tau and h

Instance i of a suite uses seed = seed + i. Random spectra start from
the all-ones vector and the non-random problem from a uniform point in
[-10, 10]^n unless 'start' says otherwise.

Classes:
    MethodEntry: A dataclass holding one method of a suite.
    ExperimentSuite: A dataclass holding a complete suite.
    Job: A dataclass to represent one solver run of a suite.

Functions:
    load_suite: Read a suite file.
    suite_from_mapping: Build a suite from parsed TOML.
    apply_overrides: Replace suite fields with command line values.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from bench.exceptions import ConfigParseError
from spectral.exceptions import UnknownMethod
from spectral.problems import SpectrumKind
from spectral.solver import MethodId, RunConfig


START_RULES = ("ones", "uniform")

PROBLEM_KEYS = {"kind", "n", "kappa", "equispaced", "start"}
RUN_KEYS = {"epsilon", "instances", "seed", "max_iter"}
METHOD_KEYS = {"id", "label", "m", "gamma", "tau", "h"}


@dataclass(kw_only=True, frozen=True)
class MethodEntry:
    """Dataclass containing one method of a suite with its parameters.

    Attributes:
        method: MethodId enum.
        label: Label used in result files. Defaults to the method id
            with the parameters set here, e.g. 'ATC1(m=30)'.
        m: Cycle or window length. Defaults to None.
        gamma: Fixed gamma. Defaults to None.
        tau: ABB threshold. Defaults to None.
        h: SDC line search steps. Defaults to None.
    """

    method: MethodId
    label: str | None = None
    m: int | None = None
    gamma: float | None = None
    tau: float | None = None
    h: int | None = None

    def run_config(self, epsilon: float = 1e-6, max_iter: int = 20000, seed: int = 0) -> RunConfig:
        """Return the RunConfig of this method for one run.

        Raises:
            ConfigParseError: A parameter value is invalid.
        """
        try:
            return RunConfig(
                method=self.method,
                epsilon=epsilon,
                max_iter=max_iter,
                m=self.m,
                gamma=self.gamma,
                tau=self.tau,
                h=self.h,
                seed=seed,
            )
        except ValueError as error:
            raise ConfigParseError(f"{self.method.value}: {error}") from error

    @property
    def name(self) -> str:
        """Label of the method in result files."""
        return self.label if self.label else self.run_config().label


@dataclass(frozen=True)
class Job:
    """Dataclass to represent one solver run of a suite.

    Attributes:
        kind: SpectrumKind of the problem.
        n: Dimension.
        kappa: Condition number.
        instance: 0-based instance index.
        seed: Problem seed, base seed plus instance index.
        epsilon: Relative gradient tolerance.
        entry: MethodEntry to run.
        max_iter: Maximum number of steps.
        equispaced: Equispaced spectrum for SpectrumKind.EVEN.
        start: Start point rule, 'ones' or 'uniform'.
    """

    kind: SpectrumKind
    n: int
    kappa: float
    instance: int
    seed: int
    epsilon: float
    entry: MethodEntry
    max_iter: int
    equispaced: bool = False
    start: str = "ones"

    @property
    def problem_id(self) -> str:
        """Identifier '<kind>-n<n>-k<kappa>-i<instance>'."""
        return f"{self.kind.value}-n{self.n}-k{self.kappa:g}-i{self.instance}"

    @property
    def sort_key(self) -> tuple[str, str, float]:
        """Key giving the row order of result files."""
        return (self.problem_id, self.entry.name, self.epsilon)

    def run_config(self) -> RunConfig:
        """Return the RunConfig of the job."""
        return self.entry.run_config(self.epsilon, self.max_iter, self.seed)


@dataclass(kw_only=True)
class ExperimentSuite:
    """Dataclass containing an experiment suite.

    Attributes:
        kind: SpectrumKind of the problems.
        n: Dimension.
        kappas: Condition numbers.
        epsilons: Relative gradient tolerances.
        methods: MethodEntry per compared method.
        instances: Number of problem instances per kappa. Defaults to 10.
        seed: Base seed. Defaults to 0.
        max_iter: Maximum number of steps per run. Defaults to 20000.
        equispaced: Equispaced spectrum for SpectrumKind.EVEN. Defaults
            to False.
        start: Start point rule 'ones' or 'uniform'. Defaults to None,
            which picks 'uniform' for the non-random problem and 'ones'
            otherwise.
    """

    kind: SpectrumKind
    n: int
    kappas: list[float]
    epsilons: list[float]
    methods: list[MethodEntry] = field(default_factory=list)
    instances: int = 10
    seed: int = 0
    max_iter: int = 20000
    equispaced: bool = False
    start: str | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ConfigParseError(f"n must be at least 2, got {self.n}.")
        if self.instances < 1:
            raise ConfigParseError(f"instances must be at least 1, got {self.instances}.")
        if self.max_iter < 1:
            raise ConfigParseError(f"max_iter must be at least 1, got {self.max_iter}.")
        if self.seed < 0:
            raise ConfigParseError(f"seed must be nonnegative, got {self.seed}.")
        if not self.kappas or any(not kappa > 1 for kappa in self.kappas):
            raise ConfigParseError(f"kappa values must exceed 1, got {self.kappas}.")
        if not self.epsilons or any(not epsilon > 0 for epsilon in self.epsilons):
            raise ConfigParseError(f"epsilon values must be positive, got {self.epsilons}.")
        if not self.methods:
            raise ConfigParseError("A suite needs at least one method.")
        if self.start is not None and self.start not in START_RULES:
            raise ConfigParseError(f"start must be one of {START_RULES}, got '{self.start}'.")

        names = [entry.name for entry in self.methods]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ConfigParseError(f"Method labels must be unique, repeated: {', '.join(duplicates)}.")

    @property
    def start_rule(self) -> str:
        """Start point rule used by the suite's jobs."""
        if self.start is not None:
            return self.start
        return "ones" if self.kind.is_random else "uniform"

    def jobs(self) -> list[Job]:
        """Expand the suite into one job per (kappa, instance, method, epsilon).

        Returns:
            List of Job objects in result file order.
        """
        jobs = [
            Job(
                kind=self.kind,
                n=self.n,
                kappa=float(kappa),
                instance=instance,
                seed=self.seed + instance,
                epsilon=float(epsilon),
                entry=entry,
                max_iter=self.max_iter,
                equispaced=self.equispaced,
                start=self.start_rule,
            )
            for kappa in self.kappas
            for instance in range(self.instances)
            for entry in self.methods
            for epsilon in self.epsilons
        ]
        return sorted(jobs, key=lambda job: job.sort_key)


def _as_list(value: Any) -> list[float]:
    if isinstance(value, (list, tuple)):
        return [float(item) for item in value]
    return [float(value)]


def _check_keys(section: str, table: Mapping[str, Any], allowed: set[str]) -> None:
    unknown = sorted(set(table) - allowed)
    if unknown:
        raise ConfigParseError(f"Unknown keys in [{section}]: {', '.join(unknown)}.")


def _parse_method(table: Mapping[str, Any]) -> MethodEntry:
    _check_keys("methods", table, METHOD_KEYS)
    if "id" not in table:
        raise ConfigParseError("Every [[methods]] entry needs an 'id'.")
    try:
        method = MethodId.parse(table["id"])
    except UnknownMethod as error:
        raise ConfigParseError(str(error)) from error
    entry = MethodEntry(
        method=method,
        label=table.get("label"),
        m=table.get("m"),
        gamma=table.get("gamma"),
        tau=table.get("tau"),
        h=table.get("h"),
    )
    entry.run_config()
    return entry


def suite_from_mapping(data: Mapping[str, Any]) -> ExperimentSuite:
    """Build a suite from a parsed suite file.

    Args:
        data: Dictionary with 'problem', 'run' and 'methods' entries.

    Raises:
        ConfigParseError: A section, key or value is invalid.

    Returns:
        ExperimentSuite.
    """
    _check_keys("suite", data, {"problem", "run", "methods"})
    problem = data.get("problem")
    if not isinstance(problem, Mapping):
        raise ConfigParseError("A suite needs a [problem] section.")
    run = data.get("run", {})
    _check_keys("problem", problem, PROBLEM_KEYS)
    _check_keys("run", run, RUN_KEYS)
    for key in ("kind", "n", "kappa"):
        if key not in problem:
            raise ConfigParseError(f"[problem] needs '{key}'.")

    try:
        kind = SpectrumKind(str(problem["kind"]).lower())
    except ValueError as error:
        raise ConfigParseError(f"Unknown spectrum kind '{problem['kind']}'.") from error

    try:
        return ExperimentSuite(
            kind=kind,
            n=int(problem["n"]),
            kappas=_as_list(problem["kappa"]),
            epsilons=_as_list(run.get("epsilon", 1e-6)),
            methods=[_parse_method(table) for table in data.get("methods", [])],
            instances=int(run.get("instances", 10)),
            seed=int(run.get("seed", 0)),
            max_iter=int(run.get("max_iter", 20000)),
            equispaced=bool(problem.get("equispaced", False)),
            start=problem.get("start"),
        )
    except (TypeError, ValueError) as error:
        raise ConfigParseError(f"Invalid suite value: {error}") from error


def load_suite(path: str | Path) -> ExperimentSuite:
    """Read a suite file.

    Args:
        path: Path of the TOML suite file.

    Raises:
        ConfigParseError: The file is not valid TOML or not a valid
            suite.
        OSError: The file cannot be read.

    Returns:
        ExperimentSuite.
    """
    with open(path, "rb") as file:
        try:
            data = tomllib.load(file)
        except tomllib.TOMLDecodeError as error:
            raise ConfigParseError(f"{path}: {error}") from error
    return suite_from_mapping(data)


def apply_overrides(
    suite: ExperimentSuite | None,
    *,
    kind: str | None = None,
    n: int | None = None,
    kappas: Sequence[float] | None = None,
    epsilons: Sequence[float] | None = None,
    methods: Sequence[str] | None = None,
    m: int | None = None,
    gamma: float | None = None,
    seed: int | None = None,
    instances: int | None = None,
) -> ExperimentSuite:
    """Replace suite fields with values given on the command line.

    Without a suite, one is built from the flags alone, using a set-1
    spectrum, n = 100, kappa = 1e4 and epsilon = 1e-6 for anything not
    given. m and gamma apply to every method named by 'methods'; they
    require 'methods'.

    Args:
        suite: Suite to modify, or None.
        kind: Spectrum kind name. Defaults to None.
        n: Dimension. Defaults to None.
        kappas: Condition numbers. Defaults to None.
        epsilons: Tolerances. Defaults to None.
        methods: Method ids replacing the suite's methods. Defaults to
            None.
        m: Cycle length for the given methods. Defaults to None.
        gamma: Fixed gamma for the given methods. Defaults to None.
        seed: Base seed. Defaults to None.
        instances: Number of instances. Defaults to None.

    Raises:
        ConfigParseError: A value is invalid or no method is given.

    Returns:
        New ExperimentSuite.
    """
    if (m is not None or gamma is not None) and not methods:
        raise ConfigParseError("--m and --gamma need --method.")

    changes: dict[str, Any] = {}
    if kind is not None:
        try:
            changes["kind"] = SpectrumKind(f"set{kind}" if str(kind).isdigit() else str(kind).lower())
        except ValueError as error:
            raise ConfigParseError(f"Unknown spectrum kind '{kind}'.") from error
    if n is not None:
        changes["n"] = n
    if kappas:
        changes["kappas"] = [float(kappa) for kappa in kappas]
    if epsilons:
        changes["epsilons"] = [float(epsilon) for epsilon in epsilons]
    if seed is not None:
        changes["seed"] = seed
    if instances is not None:
        changes["instances"] = instances
    if methods:
        parameters = {name: value for name, value in (("m", m), ("gamma", gamma)) if value is not None}
        changes["methods"] = [_parse_method({"id": method_id, **parameters}) for method_id in methods]

    if suite is None:
        defaults: dict[str, Any] = {
            "kind": SpectrumKind.SET1,
            "n": 100,
            "kappas": [1e4],
            "epsilons": [1e-6],
        }
        return ExperimentSuite(**(defaults | changes))
    return replace(suite, **changes)
