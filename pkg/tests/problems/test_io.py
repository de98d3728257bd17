import numpy as np
import pytest

from spectral.exceptions import DimensionMismatch
from spectral.problems import make_nonrand_problem, make_random_problem, read_problem, write_problem
from spectral.rng import make_stream


class TestProblemFiles:
    def test_rotated_problem_reads_back_exactly(self, tmp_path):
        problem = make_random_problem(12, 1e4, "set5", make_stream(7), seed=7)
        path = tmp_path / "problem.txt"
        write_problem(problem, path)
        restored = read_problem(path)
        np.testing.assert_array_equal(restored.v, problem.v)
        np.testing.assert_array_equal(restored.b, problem.b)
        for original, read in zip(problem.householder, restored.householder):
            np.testing.assert_array_equal(read, original)
        assert (restored.kind, restored.seed) == (problem.kind, 7)

    def test_header(self, tmp_path):
        path = tmp_path / "problem.txt"
        write_problem(make_nonrand_problem(3, 100.0), path)
        lines = path.read_text().splitlines()
        assert lines[:5] == ["n 3", "kappa 100.0", "kind nonrand", "seed -", "rotated 0"]
        assert "[w1]" not in lines

    def test_wrong_section_length(self, tmp_path):
        path = tmp_path / "problem.txt"
        write_problem(make_nonrand_problem(3, 100.0), path)
        path.write_text(path.read_text().replace("n 3", "n 4"))
        with pytest.raises(DimensionMismatch):
            read_problem(path)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "problem.txt"
        path.write_text("dimension 3\n")
        with pytest.raises(ValueError):
            read_problem(path)
