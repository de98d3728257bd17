import math

import numpy as np
import polars as pl
import pytest

from spectral.analysis import DEFAULT_RHO_GRID, performance_profile, write_profile_csv
from spectral.exceptions import EmptyInput
from spectral.solver import ResultRow


def row(problem_id: str, method: str, iterations: int, solved: bool = True, epsilon: float = 1e-6) -> ResultRow:
    return ResultRow(
        problem_id=problem_id,
        method=method,
        epsilon=epsilon,
        kappa=100.0,
        n=10,
        seed=0,
        iterations=iterations,
        solved=solved,
        final_gradnorm=0.0,
    )


class TestPerformanceProfile:
    def test_identical_methods(self):
        rows = [row(f"p{i}", method, 10 + i) for i in range(3) for method in ("A", "B")]
        curves = performance_profile(rows)
        assert list(curves) == ["A", "B"]
        for curve in curves.values():
            np.testing.assert_array_equal(curve.fraction, np.ones_like(DEFAULT_RHO_GRID))

    def test_domination(self):
        rows = [row("p0", "A", 10), row("p0", "B", 20), row("p1", "A", 10), row("p1", "B", 40)]
        curves = performance_profile(rows)
        assert curves["A"].value_at(1.0) == 1.0
        assert curves["B"].value_at(1.0) == 0.0
        assert curves["B"].value_at(2.0) == 0.5
        assert curves["B"].value_at(4.0) == 1.0
        assert np.all(np.diff(curves["B"].fraction) >= 0)

    def test_unsolved_and_missing_runs(self):
        rows = [row("p0", "A", 10), row("p0", "B", 5, solved=False), row("p1", "B", 7), row("p2", "A", 3, solved=False)]
        curves = performance_profile(rows)
        assert math.isinf(curves["B"].ratios[0])
        assert math.isinf(curves["A"].ratios[1])
        # p2 is solved by no method.
        assert len(curves["A"].ratios) == 2

    def test_problems_differ_by_epsilon(self):
        rows = [row("p0", "A", 10, epsilon=1e-6), row("p0", "A", 20, epsilon=1e-9), row("p0", "B", 10, epsilon=1e-6)]
        assert len(performance_profile(rows)["B"].ratios) == 2

    def test_frame_input(self):
        df = pl.DataFrame({"problem_id": ["p0", "p0"], "method": ["A", "B"], "epsilon": [1e-6, 1e-6],
                           "iterations": [4, 8], "solved": [True, True]})
        assert performance_profile(df, rho_grid=np.array([1.0, 2.0]))["B"].fraction.tolist() == [0.0, 1.0]

    def test_empty(self):
        with pytest.raises(EmptyInput):
            performance_profile([])
        with pytest.raises(EmptyInput):
            performance_profile([row("p0", "A", 3, solved=False)])

    def test_duplicates(self):
        with pytest.raises(ValueError):
            performance_profile([row("p0", "A", 3), row("p0", "A", 4)])

    def test_write_csv(self, tmp_path):
        path = tmp_path / "profile.csv"
        curves = performance_profile([row("p0", "A", 10), row("p0", "B", 20)], rho_grid=np.array([1.0, 2.0]))
        write_profile_csv(curves, path)
        df = pl.read_csv(path)
        assert df.columns == ["method", "rho", "fraction"]
        assert df.get_column("fraction").to_list() == [1.0, 1.0, 0.0, 1.0]
