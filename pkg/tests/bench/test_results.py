import polars as pl
import pytest

from bench.data import add_set_column, mean_iterations, pivot_iterations, unsolved_runs
from spectral.exceptions import EmptyInput
from spectral.solver import ResultRow, results_frame


def make_rows(method: str, iterations: list[int], solved: list[bool] | None = None, kappa: float = 100.0):
    solved = solved if solved is not None else [True] * len(iterations)
    return [
        ResultRow(
            problem_id=f"set2-n10-k{kappa:g}-i{i}",
            method=method,
            epsilon=1e-6,
            kappa=kappa,
            n=10,
            seed=i,
            iterations=count,
            solved=ok,
            final_gradnorm=1e-7,
        )
        for i, (count, ok) in enumerate(zip(iterations, solved))
    ]


class TestMeanIterations:
    def test_set_column(self):
        df = add_set_column(results_frame(make_rows("BB1", [3])))
        assert df.get_column("set").to_list() == ["set2"]

    def test_single_row(self):
        summary = mean_iterations(results_frame(make_rows("BB1", [42])))
        assert summary.columns == ["set", "method", "kappa", "epsilon", "Runs", "Solved", "Unsolved", "Mean Iterations"]
        assert summary.row(0, named=True)["Mean Iterations"] == 42.0

    def test_constant_cell(self):
        summary = mean_iterations(results_frame(make_rows("BB1", [100] * 10)))
        assert summary.height == 1
        assert summary.get_column("Mean Iterations").to_list() == [100.0]
        assert summary.get_column("Runs").to_list() == [10]

    def test_unsolved_runs_excluded(self):
        rows = make_rows("ABB", [10, 20, 20000], solved=[True, True, False])
        summary = mean_iterations(results_frame(rows))
        cell = summary.row(0, named=True)
        assert cell["Mean Iterations"] == pytest.approx(15.0)
        assert (cell["Solved"], cell["Unsolved"]) == (2, 1)
        assert unsolved_runs(summary).get_column("Unsolved").to_list() == [1]

    def test_nothing_solved(self):
        summary = mean_iterations(results_frame(make_rows("SD", [5, 5], solved=[False, False])))
        assert summary.get_column("Mean Iterations").to_list() == [None]

    def test_grouping(self):
        rows = make_rows("BB1", [10, 30]) + make_rows("BB1", [50], kappa=1000.0)
        summary = mean_iterations(results_frame(rows), ["method"])
        assert summary.get_column("Mean Iterations").to_list() == [30.0]

    def test_empty(self):
        with pytest.raises(EmptyInput):
            mean_iterations(results_frame([]))

    def test_unknown_column(self):
        with pytest.raises(ValueError):
            mean_iterations(results_frame(make_rows("BB1", [1])), ["problem_id"])


class TestPivot:
    def test_one_column_per_method(self):
        rows = make_rows("BB1", [10, 20]) + make_rows("ATC1", [5, 7])
        table = pivot_iterations(mean_iterations(results_frame(rows)))
        assert table.columns == ["set", "kappa", "epsilon", "ATC1", "BB1"]
        assert table.row(0) == ("set2", 100.0, 1e-6, 6.0, 15.0)
        assert isinstance(table, pl.DataFrame)
