import pytest

from bench.suite import ExperimentSuite, MethodEntry
from spectral.problems import SpectrumKind
from spectral.solver import MethodId


@pytest.fixture
def small_suite() -> ExperimentSuite:
    return ExperimentSuite(
        kind=SpectrumKind.SET1,
        n=20,
        kappas=[100.0],
        epsilons=[1e-6, 1e-9],
        methods=[MethodEntry(method=MethodId.BB1), MethodEntry(method=MethodId.ATC1, m=30)],
        instances=2,
        seed=5,
    )


SUITE_TEXT = """
[problem]
kind = "set1"
n = 20
kappa = [100.0, 1000.0]

[run]
epsilon = [1e-6]
instances = 2
seed = 3

[[methods]]
id = "bb1"

[[methods]]
id = "FAMILY_FIXED"
gamma = 0.5
"""


@pytest.fixture
def suite_file(tmp_path):
    path = tmp_path / "suite.toml"
    path.write_text(SUITE_TEXT)
    return path
