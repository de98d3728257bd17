import math

import polars as pl
import pytest

from spectral.exceptions import UnknownMethod
from spectral.solver import (
    RESULT_COLUMNS,
    MethodId,
    ResultRow,
    RunConfig,
    RunTrace,
    Termination,
    TraceRecord,
    results_frame,
    write_trace_csv,
)


class TestMethodId:
    @pytest.mark.parametrize("name", ["atc1", "ATC1", " Atc1 "])
    def test_parse(self, name):
        assert MethodId.parse(name) is MethodId.ATC1

    def test_unknown(self):
        with pytest.raises(UnknownMethod):
            MethodId.parse("NEWTON")


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig(method="bb1")
        assert config.method is MethodId.BB1
        assert (config.epsilon, config.max_iter, config.seed) == (1e-6, 20000, 0)

    @pytest.mark.parametrize(
        "kwargs",
        [{"epsilon": 0.0}, {"max_iter": 0}, {"m": 0}, {"h": 1}, {"dy_pattern": "sd-sd"}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            RunConfig(method=MethodId.DY, **kwargs)

    def test_labels(self):
        assert RunConfig(method=MethodId.BB1).label == "BB1"
        assert RunConfig(method=MethodId.ATC1, m=30).label == "ATC1(m=30)"
        assert RunConfig(method=MethodId.FAMILY_FIXED, gamma=0.5).label == "FAMILY_FIXED(gamma=0.5)"


def make_trace(termination: Termination) -> RunTrace:
    records = [
        TraceRecord(k=1, alpha=0.5, grad_norm=4.0, f_value=2.0),
        TraceRecord(k=2, alpha=0.25, grad_norm=1.0, f_value=1.0),
        TraceRecord(k=3, alpha=math.nan, grad_norm=1e-7, f_value=0.5),
    ]
    return RunTrace(method=MethodId.BB1, label="BB1", epsilon=1e-6, records=records, termination=termination, n=2)


class TestRunTrace:
    def test_iterations_count_steps(self):
        trace = make_trace(Termination.CONVERGED)
        assert trace.iterations == 2
        assert trace.solved
        assert trace.final_grad_norm == 1e-7
        assert list(trace.alphas) == [0.5, 0.25]

    def test_to_row(self):
        row = make_trace(Termination.MAX_ITER).to_row("set1-n2-k100-i0", 100.0, 2, 5)
        assert row == ResultRow(
            problem_id="set1-n2-k100-i0",
            method="BB1",
            epsilon=1e-6,
            kappa=100.0,
            n=2,
            seed=5,
            iterations=2,
            solved=False,
            final_gradnorm=1e-7,
        )

    def test_results_frame(self):
        rows = [make_trace(Termination.CONVERGED).to_row("p", 10.0, 2, 0)]
        df = results_frame(rows)
        assert tuple(df.columns) == RESULT_COLUMNS
        assert df.schema["solved"] == pl.Boolean
        assert df.row(0, named=True)["iterations"] == 2

    def test_trace_csv(self, tmp_path):
        path = tmp_path / "trace.csv"
        write_trace_csv(make_trace(Termination.CONVERGED), path)
        df = pl.read_csv(path)
        assert df.columns == ["k", "alpha", "gradnorm", "fvalue"]
        assert df.height == 3
        assert df.get_column("k").to_list() == [1, 2, 3]
