"""Command line harness: experiment suites, parallel runs, tables,
performance profiles and numeric verification."""

from bench.exceptions import ConfigParseError
from bench.suite import ExperimentSuite, Job, MethodEntry, apply_overrides, load_suite, suite_from_mapping
from bench.runner import make_problem, read_results, run_job, run_suite, start_point, write_results
