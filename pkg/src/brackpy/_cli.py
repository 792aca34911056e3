"""Command line interface ``brackpy check | table | point``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
from scanpy import logging as logg

from brackpy._constants._constants import Subcommand
from brackpy._constants._pkg_constants import TOLERANCES
from brackpy._utils import verbosity
from brackpy.geo._surface import DegenerateSurfaceError, Density, DensityError, GridSpec, SurfaceSpec
from brackpy.la._eigen import ConvergenceError
from brackpy.read._read import SpecFileError, load_spec
from brackpy.sym._expr import ExprSyntaxError
from brackpy.sym._scalar import DomainError

__all__ = ["main"]

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

_INPUT_ERRORS = (SpecFileError, ExprSyntaxError, DensityError, OSError)
_FAILURES = (DegenerateSurfaceError, DomainError, ConvergenceError)


def _tolerance(text: str) -> tuple[str, float]:
    from brackpy.tl import resolve_tolerances

    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"Expected `name=value`, found `{text}`.")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a number for tolerance `{name}`, found `{value}`.") from None
    try:
        resolve_tolerances({name.strip(): tol})
    except (KeyError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e).strip("\"'")) from None
    return name.strip(), tol


def _density(text: str) -> Density:
    try:
        return Density.create(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        if len(parts) != 2:
            raise ValueError(text)
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected `a,b`, found `{text}`.") from None


def _load(args: argparse.Namespace) -> tuple[SurfaceSpec, GridSpec]:
    from brackpy import datasets

    path = Path(args.spec)
    if not path.exists() and args.spec in datasets.names():
        path = datasets.path(args.spec)
    spec, grid = load_spec(path)
    if args.rho is not None:
        spec = spec.with_density(args.rho)
    return spec, grid


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return f"{value:.17g}"
    return np.array2string(
        np.asarray(value, dtype=np.float64),
        separator=", ",
        formatter={"float_kind": lambda x: f"{x:.17g}"},
        max_line_width=sys.maxsize,
        threshold=sys.maxsize,
    )


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fout:
            fout.write(text)


def cmd_check(args: argparse.Namespace, spec: SurfaceSpec, grid: GridSpec) -> int:
    from brackpy.tl import check_grid

    report = check_grid(spec, grid, tolerances=dict(args.tol or []), n_jobs=args.n_jobs)
    sys.stdout.write(report.to_text())
    sys.stdout.flush()
    if args.out is not None:
        report.write(args.out)
    if not report.passed:
        logg.error(f"Failed checks: `{report.failed}`" if report.failed else "No grid point could be evaluated")
        return EXIT_FAILED
    return EXIT_OK


def cmd_table(args: argparse.Namespace, spec: SurfaceSpec, grid: GridSpec) -> int:
    from brackpy.tl import curvature_table, write_table

    df = curvature_table(spec, grid, n_jobs=args.n_jobs)
    _write(write_table(df), args.out)
    return EXIT_OK if len(df) else EXIT_FAILED


def cmd_point(args: argparse.Namespace, spec: SurfaceSpec, grid: GridSpec) -> int:
    from brackpy.tl import point_digest

    digest = point_digest(spec, args.u)
    _write("".join(f"{key}: {_fmt(value)}\n" for key, value in digest.items()), args.out)
    return EXIT_OK


_COMMANDS: dict[Subcommand, Callable[[argparse.Namespace, SurfaceSpec, GridSpec], int]] = {
    Subcommand.CHECK: cmd_check,
    Subcommand.TABLE: cmd_table,
    Subcommand.POINT: cmd_point,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brackpy", description="Surface geometry from Poisson brackets, checked against classical formulas."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Increase logging verbosity.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="Surface spec file, or the name of a shipped surface.")
    common.add_argument("--rho", type=_density, default=None, help="Density override: `sqrt_g`, `one` or an expression in u1, u2.")
    common.add_argument("--out", default=None, help="Output file.")

    check = sub.add_parser(Subcommand.CHECK.s, parents=[common], help="Check every identity on the grid.")
    check.add_argument(
        "--tol",
        action="append",
        type=_tolerance,
        metavar="NAME=VALUE",
        help=f"Tolerance override, repeatable. Names are `all` or one of `{', '.join(TOLERANCES)}`.",
    )
    check.add_argument("--n-jobs", type=int, default=1, help="Number of parallel jobs.")

    table = sub.add_parser(Subcommand.TABLE.s, parents=[common], help="Tabulate the curvatures on the grid.")
    table.add_argument("--n-jobs", type=int, default=1, help="Number of parallel jobs.")

    point = sub.add_parser(Subcommand.POINT.s, parents=[common], help="Print all data at one point.")
    point.add_argument("--u", type=_point, required=True, metavar="A,B", help="Parameter point.")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the command line interface.

    Parameters
    ----------
    argv
        Arguments without the program name. If `None`, use :data:`sys.argv`.

    Returns
    -------
    Exit code: `0` if everything passed, `1` for failed checks or a failed computation, `2` for invalid input. Other
    exceptions propagate.
    """
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    with verbosity(min(1 + args.verbose, 4)):
        try:
            spec, grid = _load(args)
        except _INPUT_ERRORS as e:
            logg.error(str(e))
            return EXIT_INPUT

        try:
            return _COMMANDS[Subcommand(args.command)](args, spec, grid)
        except DensityError as e:
            # the density is input, even when it only vanishes at a grid point
            logg.error(str(e))
            return EXIT_INPUT
        except _FAILURES as e:
            logg.error(str(e))
            return EXIT_FAILED
