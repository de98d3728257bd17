"""Script to run, aggregate and verify stepsize experiments.

Subcommands:
    run: Run a suite and write the result CSV.
    table: Aggregate a result CSV into mean iteration tables.
    profile: Write performance profiles as CSV and SVG.
    verify: Run the numeric verification checks.
    gen: Write one problem file.

Arguments:
    --suite: Suite file (run).
    --out: Output path.
    --seed: Base seed (run) or problem seed (gen).
    --workers: Number of worker processes (run).
    --n: Dimension.
    --kappa: Condition number(s).
    --set: Spectrum kind, e.g. 1, set1, even or nonrand.
    --eps: Relative gradient tolerance(s) (run).
    --method: Method id(s) (run).
    --m: Cycle length for the given methods (run).
    --gamma: Fixed gamma for the given methods (run).
    --instances: Number of problem instances (run).
    --group-by: Comma separated grouping columns (table).
    --tier: fast or full (verify).
    --verbose: Log debug messages.

Exit codes are 0 on success, 1 when a verification check fails and 2
for invalid configuration or unreadable input.

Functions:
    cmd_run: Run a suite.
    cmd_table: Print and write the aggregated table.
    cmd_profile: Write profile CSV and SVG.
    cmd_verify: Run the checks of a tier.
    cmd_gen: Write a problem file.
    main: Parse arguments and dispatch to a subcommand.
"""

import argparse
import logging
import sys
from pathlib import Path

import polars as pl

from bench.charts import plot_profiles, write_svg
from bench.data import mean_iterations, pivot_iterations, unsolved_runs
from bench.exceptions import ConfigParseError
from bench.runner import make_problem, read_results, run_suite, write_results
from bench.suite import apply_overrides, load_suite
from bench.utilities import frame_to_text
from bench.verify import TIERS, format_report, run_checks
from spectral.analysis import performance_profile, write_profile_csv
from spectral.exceptions import EmptyInput, SpectralError
from spectral.problems import SpectrumSpec, write_problem


logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def cmd_run(args: argparse.Namespace) -> int:
    """Run a suite, from a file and/or flags, and write the result CSV."""
    if args.workers < 1:
        raise ConfigParseError(f"--workers must be at least 1, got {args.workers}.")
    suite = load_suite(args.suite) if args.suite else None
    suite = apply_overrides(
        suite,
        kind=args.set,
        n=args.n,
        kappas=args.kappa,
        epsilons=args.eps,
        methods=args.method,
        m=args.m,
        gamma=args.gamma,
        seed=args.seed,
        instances=args.instances,
    )
    rows = run_suite(suite, workers=args.workers)
    write_results(rows, args.out)
    logger.info("Wrote %d rows to %s.", len(rows), args.out)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    """Print mean iterations per cell and optionally write them as CSV."""
    grouping = [column.strip() for column in args.group_by.split(",") if column.strip()]
    try:
        summary = mean_iterations(read_results(args.results), grouping)
    except ValueError as error:
        raise ConfigParseError(str(error)) from error
    if args.out:
        summary.write_csv(args.out)
        logger.info("Wrote %d cells to %s.", summary.height, args.out)

    table = pivot_iterations(summary) if "method" in grouping else summary
    print(frame_to_text(table))
    unsolved = unsolved_runs(summary)
    if unsolved.height:
        print("\nUnsolved runs (not included in the means):")
        print(frame_to_text(unsolved))
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    """Write the profiles of a result CSV as '<out>.csv' and '<out>.svg'."""
    results = read_results(args.results)
    if results.get_column("method").n_unique() < 2:
        raise EmptyInput("A performance profile needs at least two methods.")
    curves = performance_profile(results)
    out = Path(args.out)
    write_profile_csv(curves, out.with_suffix(".csv"))
    write_svg(plot_profiles(curves), out.with_suffix(".svg"))
    logger.info(
        "Wrote profiles of %d methods to %s and %s.", len(curves), out.with_suffix(".csv"), out.with_suffix(".svg")
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the checks of a tier and print the pass/fail table."""
    results = run_checks(args.tier)
    print(format_report(results))
    return EXIT_OK if all(result.passed for result in results) else EXIT_FAILED


def cmd_gen(args: argparse.Namespace) -> int:
    """Write one problem file."""
    try:
        spec = SpectrumSpec.parse(args.set)
    except ValueError as error:
        raise ConfigParseError(f"Unknown spectrum kind '{args.set}'.") from error
    kappa = args.kappa[0] if args.kappa else 1e4
    problem = make_problem(spec.kind, args.n, kappa, args.seed)
    write_problem(problem, args.out)
    logger.info("Wrote %s problem with n=%d to %s.", spec.kind.value, problem.n, args.out)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", default=False, action="store_true", help="Log debug messages.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Run a suite and write the result CSV.")
    run.add_argument("--suite", help="Suite file.")
    run.add_argument("--out", required=True, help="Result CSV path.")
    run.add_argument("--workers", type=int, default=1, help="Number of worker processes.")
    run.add_argument("--seed", type=int, help="Base seed.")
    run.add_argument("--n", type=int, help="Dimension.")
    run.add_argument("--kappa", type=float, nargs="+", help="Condition numbers.")
    run.add_argument("--set", help="Spectrum kind.")
    run.add_argument("--eps", type=float, nargs="+", help="Relative gradient tolerances.")
    run.add_argument("--method", nargs="+", help="Method ids.")
    run.add_argument("--m", type=int, help="Cycle length for the given methods.")
    run.add_argument("--gamma", type=float, help="Fixed gamma for the given methods.")
    run.add_argument("--instances", type=int, help="Number of problem instances.")
    run.set_defaults(handler=cmd_run)

    table = subparsers.add_parser("table", help="Aggregate a result CSV.")
    table.add_argument("results", help="Result CSV.")
    table.add_argument("--out", help="CSV path for the aggregated cells.")
    table.add_argument("--group-by", default="set,method,kappa,epsilon", help="Grouping columns.")
    table.set_defaults(handler=cmd_table)

    profile = subparsers.add_parser("profile", help="Write performance profiles.")
    profile.add_argument("results", help="Result CSV.")
    profile.add_argument("--out", required=True, help="Output path, '.csv' and '.svg' are added.")
    profile.set_defaults(handler=cmd_profile)

    verify = subparsers.add_parser("verify", help="Run the verification checks.")
    verify.add_argument("--tier", choices=TIERS, default="fast", help="Check tier.")
    verify.set_defaults(handler=cmd_verify)

    gen = subparsers.add_parser("gen", help="Write one problem file.")
    gen.add_argument("--set", default="set1", help="Spectrum kind.")
    gen.add_argument("--n", type=int, default=1000, help="Dimension.")
    gen.add_argument("--kappa", type=float, nargs=1, help="Condition number.")
    gen.add_argument("--seed", type=int, default=0, help="Problem seed.")
    gen.add_argument("--out", required=True, help="Problem file path.")
    gen.set_defaults(handler=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, configure logging and run a subcommand.

    Args:
        argv: Arguments without the program name. Defaults to
            sys.argv[1:].

    Returns:
        Exit code.
    """
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        return args.handler(args)
    except (ConfigParseError, SpectralError, OSError, pl.exceptions.PolarsError) as error:
        logger.error("%s: %s", type(error).__name__, error)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
