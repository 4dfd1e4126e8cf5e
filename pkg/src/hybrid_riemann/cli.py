"""Command-line front end.

Run a case (the default command)::

    hybrid-riemann --case sod --scheme hllx-omega --omega 0.5 --out sod.csv

Export theory tables::

    hybrid-riemann dissipation --nu-min -0.4 --nu-max 0.8 --omega 0.5 --out d.csv
    hybrid-riemann utilde --d-hat 0 1 2 --out u.csv
    hybrid-riemann overshoot --omega 0 0.3 0.5 1 --out max.csv

Failures exit nonzero with a one-line JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, dissipation
from .cases import CASE_NAMES, OutputSpec, builtin_case, from_dict, parse_document, to_dict, to_json
from .core import FluxEvaluationError
from .io import write_columns, write_table
from .reference import VacuumError, fine_reference, sod_cell_averages
from .solvers import SCHEME_NAMES, FluxScheme, Kind
from .timeloop import ConfigError, RunError, run

EXIT_CONFIG = 2
EXIT_RUN = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _run_parser():
    p = _Parser(prog="hybrid-riemann", description="Run a Riemann problem with a chosen numerical flux.")
    p.add_argument("--case", choices=CASE_NAMES, help="built-in case")
    p.add_argument("--config", help="JSON configuration file (flags override it)")
    p.add_argument("--scheme", choices=SCHEME_NAMES)
    p.add_argument("--omega", type=float)
    p.add_argument("--path", choices=("composite", "matrix"))
    p.add_argument("--n", type=int, help="number of cells")
    p.add_argument("--cfl", type=float)
    p.add_argument("--tend", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--out", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--variables", help="comma-separated primitive variables to write")
    p.add_argument("--reference", help="add reference columns: 'exact' (Euler only) or 'fine:N'")
    p.add_argument(
        "--diagnostics",
        nargs="?",
        const="auto",
        help="write per-step diagnostics (optionally to the given path)",
    )
    p.add_argument("--print-config", action="store_true", help="print the resolved configuration and exit")
    return p


def _table_parsers():
    d = _Parser(
        prog="hybrid-riemann dissipation",
        description="Sample every dissipation function over a Courant-number bracket.",
    )
    d.add_argument("--nu-min", type=float, required=True)
    d.add_argument("--nu-max", type=float, required=True)
    d.add_argument("--omega", type=float, default=0.5)
    d.add_argument("--samples", type=int, default=201)
    d.add_argument("--out", default="-")

    u = _Parser(prog="hybrid-riemann utilde", description="Tabulate the non-dimensional modified-equation solution.")
    u.add_argument("--d-hat", type=float, nargs="+", required=True)
    u.add_argument("--xi-min", type=float, default=-10.0)
    u.add_argument("--xi-max", type=float, default=10.0)
    u.add_argument("--samples", type=int, default=201)
    u.add_argument("--out", default="-")

    o = _Parser(
        prog="hybrid-riemann overshoot",
        description="Per-step overshoot (-min u) of the advected sign function.",
    )
    o.add_argument("--omega", type=float, nargs="+", required=True)
    o.add_argument("--out", default="-")
    return {"dissipation": d, "utilde": u, "overshoot": o}


def _document(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
        case, output = parse_document(text)
        doc = to_dict(case, output)
        if args.case:
            raise ConfigError("--case and --config are mutually exclusive")
    elif args.case:
        doc = {"case": args.case}
    else:
        raise ConfigError("one of --case or --config is required")

    if args.scheme or args.omega is not None or args.path:
        scheme = dict(doc.get("scheme", {"kind": "hll"}))
        if args.scheme:
            scheme = {"kind": args.scheme}
        if args.omega is not None:
            scheme["omega"] = args.omega
        if args.path:
            scheme["path"] = args.path
        doc["scheme"] = scheme
    if args.n is not None:
        doc["grid"] = {**doc.get("grid", {}), "n_cells": args.n}
    if args.cfl is not None:
        doc["cfl"] = args.cfl
    if args.tend is not None:
        doc["t_end"] = args.tend
    if args.gamma is not None:
        doc["model_params"] = {**doc.get("model_params", {}), "gamma": args.gamma}

    out = dict(doc.get("output", {}))
    if args.out is not None:
        out["path"] = args.out
    if args.format is not None:
        out["format"] = args.format
    if args.variables is not None:
        out["variables"] = [v.strip() for v in args.variables.split(",") if v.strip()]
    if args.reference is not None:
        out["include_reference"] = True
        out["reference"] = args.reference
    if args.diagnostics is not None:
        out["include_diagnostics"] = True
    doc["output"] = out
    return doc


def _diagnostics_path(arg, output: OutputSpec):
    if arg not in (None, "auto"):
        return arg
    if output.path == "-":
        raise ConfigError("--diagnostics needs an explicit path when the profile goes to stdout")
    stem, _ = os.path.splitext(output.path)
    return f"{stem}.diagnostics.{output.format}"


def _reference_columns(case, output: OutputSpec, result):
    model = result.model
    choice = output.reference
    if choice == "exact":
        if case.model != "euler":
            raise ConfigError("reference 'exact' is only available for the euler model")
        gamma = model.gamma
        cons = sod_cell_averages(gamma, case.left, case.right, case.grid.edges, result.t, case.x0)
    elif choice.startswith("fine:"):
        try:
            n_ref = int(choice[5:])
        except ValueError:
            raise ConfigError(f"reference: expected fine:N, got {choice!r}") from None
        try:
            _, cons = fine_reference(case, n_ref)
        except ValueError as exc:
            raise ConfigError(f"reference: {exc}") from None
    else:
        raise ConfigError(f"reference: expected 'exact' or 'fine:N', got {choice!r}")
    return model.to_primitive(cons)


def run_case(case, output: OutputSpec, diagnostics_path=None):
    """Run ``case`` and write the requested files.  Returns the :class:`RunResult`."""
    model = case.make_model()
    names = output.variables or model.variable_names
    unknown = [v for v in names if v not in model.variable_names]
    if unknown:
        raise ConfigError(f"output.variables: {unknown[0]!r} is not one of {list(model.variable_names)}")
    result = run(case, model)
    prim = result.primitive()
    columns = {"x": result.x}
    for name in names:
        columns[name] = prim[model.variable_names.index(name)]
    if output.include_reference:
        ref = _reference_columns(case, output, result)
        for name in names:
            columns[f"ref_{name}"] = ref[model.variable_names.index(name)]
    write_columns(output.path, columns, output.format)

    if output.include_diagnostics:
        path = _diagnostics_path(diagnostics_path, output)
        d = result.diagnostics
        diag = {"step": np.arange(1, result.n_steps + 1), "t": d["t"], "dt": d["dt"],
                "max_speed": d["max_speed"], "max_nu": d["max_nu"]}
        for name in model.variable_names:
            diag[f"max_{name}"] = d[f"max_{name}"]
            diag[f"min_{name}"] = d[f"min_{name}"]
        write_columns(path, diag, output.format)
    return result


def _cmd_run(argv):
    args = _run_parser().parse_args(argv)
    doc = _document(args)
    case, output = from_dict(doc)
    if args.print_config:
        sys.stdout.write(to_json(case, output))
        return 0
    run_case(case, output, args.diagnostics)
    return 0


def _cmd_dissipation(args):
    try:
        header, rows = dissipation.dissipation_table((args.nu_min, args.nu_max), args.omega, args.samples)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    write_table(args.out, header, rows)
    return 0


def _cmd_utilde(args):
    if any(d < 0 for d in args.d_hat):
        raise ConfigError("--d-hat values must be >= 0")
    xi = np.linspace(args.xi_min, args.xi_max, args.samples)
    analysis.write_utilde_table(args.out, xi, args.d_hat)
    return 0


def _cmd_overshoot(args):
    series = {}
    for omega in args.omega:
        try:
            scheme = FluxScheme(Kind.HLLX_OMEGA, omega)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        result = run(builtin_case("advection-sign", scheme))
        # sgn(x) data carry their dispersive tail on the lower plateau
        series[f"omega={omega:g}"] = analysis.overshoot_series(result, side="lower")
    analysis.write_overshoot_table(args.out, series)
    return 0


def _fail(exc, code):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for key in ("step", "time", "cell"):
        value = getattr(exc, key, None)
        if value is not None:
            payload[key] = value
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    tables = _table_parsers()
    try:
        if argv and argv[0] in tables:
            args = tables[argv[0]].parse_args(argv[1:])
            return {"dissipation": _cmd_dissipation, "utilde": _cmd_utilde, "overshoot": _cmd_overshoot}[argv[0]](
                args
            )
        if argv and argv[0] == "run":
            argv = argv[1:]
        return _cmd_run(argv)
    except ConfigError as exc:
        return _fail(exc, EXIT_CONFIG)
    except (RunError, FluxEvaluationError, VacuumError, analysis.QuadratureError, OSError) as exc:
        return _fail(exc, EXIT_RUN)


if __name__ == "__main__":
    sys.exit(main())
