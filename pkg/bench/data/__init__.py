from .results import add_set_column, mean_iterations, pivot_iterations, unsolved_runs


__all__ = ["add_set_column", "mean_iterations", "pivot_iterations", "unsolved_runs"]
