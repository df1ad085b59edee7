"""Command-line experiment runner.

Subcommands::

    solve       solve one problem, print a one-line summary
    table       self-convergence table as CSV
    compare     FEM vs FDM difference report as JSON
    dump-field  nodal solution as CSV or PGM heatmap

Coefficients come from ``--coeff preset:<name>`` (see presets module for
the built-in names) or ``--coeff file:<path>`` with the JSON cell layout.
Exit codes: 0 success, 2 usage error, 3 solver failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys

import numpy as np

from . import experiments
from .fdm import FdmProblem, assemble_fdm
from .fem import FemProblem, assemble_fem
from .grid import GridSpec
from .presets import parse_coeff_spec
from .solvers import SolverConfig, SolverError, factor_solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridjump",
        description="FEM and FDM solvers for piecewise-constant cross-interface problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, methods=("fem", "fdm")):
        p.add_argument("--coeff", required=True, help="preset:<name> or file:<path>")
        p.add_argument("--method", choices=methods, required="both" not in methods)
        p.add_argument("--solver", choices=("direct", "cg", "bicgstab"), default="direct")
        p.add_argument("--tol", type=float, default=1e-12, help="relative residual target")

    p_solve = sub.add_parser("solve", help="solve once and print a summary line")
    add_common(p_solve)
    p_solve.add_argument("--level", type=int, required=True, help="grid level k, N = 2^k")

    p_table = sub.add_parser("table", help="self-convergence table as CSV")
    add_common(p_table, methods=("fem", "fdm", "both"))
    p_table.set_defaults(method="both")
    p_table.add_argument(
        "--levels",
        help="row levels k0..k1 (default: the preset's range; required for file coefficients)",
    )
    p_table.add_argument("--out", help="output CSV path (default: stdout)")

    p_cmp = sub.add_parser("compare", help="FEM vs FDM difference report as JSON")
    p_cmp.add_argument("--coeff", required=True, help="preset:<name> or file:<path>")
    p_cmp.add_argument("--level", type=int, required=True, help="grid level k, N = 2^k")
    p_cmp.add_argument("--solver", choices=("direct", "cg", "bicgstab"), default="direct")
    p_cmp.add_argument("--tol", type=float, default=1e-12)
    p_cmp.add_argument(
        "--threshold", type=float, default=0.1,
        help="rel_inf above this is reported divergent (heuristic)",
    )
    p_cmp.add_argument("--out", help="output JSON path (default: stdout)")

    p_dump = sub.add_parser("dump-field", help="nodal solution as CSV or PGM")
    add_common(p_dump)
    p_dump.add_argument("--level", type=int, required=True)
    p_dump.add_argument("--format", choices=("csv", "pgm"), required=True)
    p_dump.add_argument("--out", required=True, help="output path")
    return parser


def _config(args) -> SolverConfig:
    return SolverConfig(method=args.solver, rel_tol=args.tol)


def _parse_levels(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not match:
        raise ValueError(f"--levels must look like k0..k1, got {text!r}")
    k0, k1 = int(match.group(1)), int(match.group(2))
    if k1 < k0:
        raise ValueError(f"--levels range is empty: {text!r}")
    return k0, k1


def _cmd_solve(args) -> int:
    field, _ = parse_coeff_spec(args.coeff)
    grid = GridSpec(N=2**args.level, m=field.m)
    assemble = assemble_fem if args.method == "fem" else assemble_fdm
    problem = (FemProblem if args.method == "fem" else FdmProblem)(grid, field)
    system = assemble(problem)
    x = factor_solve(system.matrix, system.rhs, _config(args))
    residual = float(
        np.linalg.norm(system.rhs - system.matrix @ x) / np.linalg.norm(system.rhs)
    )
    sys.stdout.write(
        f"method={args.method} coeff={args.coeff} level={args.level} N={grid.N} "
        f"unknowns={len(system.dofmap)} residual={residual:.3E} "
        f"umin={x.min():.10E} umax={x.max():.10E}\n"
    )
    return EXIT_OK


def _cmd_table(args) -> int:
    field, preset = parse_coeff_spec(args.coeff)
    if args.levels:
        k0, k1 = _parse_levels(args.levels)
    elif preset is not None:
        k0, k1 = preset.level_min, preset.level_max
    else:
        raise ValueError("--levels is required with file coefficients")
    for k in range(k0, k1 + 2):
        GridSpec(N=2**k, m=field.m)  # validate the whole sweep up front
    methods = ("fem", "fdm") if args.method == "both" else (args.method,)
    tables = experiments.run_table(field, range(k0, k1 + 1), methods, _config(args))
    buffer = io.StringIO()
    experiments.write_table_csv(tables, buffer)
    _write_text(args.out, buffer.getvalue())
    return EXIT_OK


def _cmd_compare(args) -> int:
    field, _ = parse_coeff_spec(args.coeff)
    GridSpec(N=2**args.level, m=field.m)
    cfg = SolverConfig(method=args.solver, rel_tol=args.tol)
    report = experiments.compare_methods(field, args.level, cfg, threshold=args.threshold)
    report["coeff"] = args.coeff
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _write_text(args.out, text)
    return EXIT_OK


def _cmd_dump_field(args) -> int:
    field, _ = parse_coeff_spec(args.coeff)
    solution = experiments.solve_with_method(
        args.method, field, 2**args.level, _config(args)
    )
    if args.format == "csv":
        buffer = io.StringIO()
        experiments.write_field_csv(solution, buffer)
        _write_text(args.out, buffer.getvalue())
    else:
        with open(args.out, "wb") as fh:
            fh.write(experiments.field_to_pgm(solution))
    return EXIT_OK


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


_COMMANDS = {
    "solve": _cmd_solve,
    "table": _cmd_table,
    "compare": _cmd_compare,
    "dump-field": _cmd_dump_field,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SolverError as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return EXIT_SOLVER
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
