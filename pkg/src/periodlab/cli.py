"""Command-line front end: problem presets, method selection, sweeps, verification.

Subcommands: ``period``, ``sweep``, ``converge``, ``verify``.  Output formats
are ``table`` (default, human), ``json`` (one object per record, arrays for
multi-record output) and ``csv`` (RFC-4180 quoting, fixed column order).
Every float is serialized with 17 significant digits so records re-parse
bit-exactly.  Exit codes: 0 success, 1 usage, 2 domain (separatrix/energy),
3 numerical non-convergence.  The environment variable ``PERIODLAB_TOL``
overrides the default 1e-13 quadrature tolerance.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from .errors import ConvergenceError, DomainError, SeparatrixError
from .frame import BALANCED, FIXED, NAYFEH, balanced_frame, fixed_frame, nayfeh_frame
from .oracle import measure_period
from .period import (
    best_series,
    cubic_elliptic,
    duffing_elliptic,
    period_from_series,
    period_quadrature,
)
from .potential import (
    barrier_info,
    cubic_potential,
    duffing_potential,
    from_physical,
    turning_points,
)

RECORD_FIELDS = [
    "command", "preset", "lambda", "coeffs", "mass", "omega0",
    "energy", "amplitude", "rho", "frame", "omega_ref", "xi",
    "method", "N", "x_minus", "x_plus",
    "T", "Omega", "err_estimate", "regime",
    "sqrt_rho_T", "max_rel_deviation", "partial_sums",
    "error", "error_kind",
]

CONVERGE_FIELDS = [
    "command", "preset", "lambda", "energy", "amplitude", "rho",
    "frame", "omega_ref", "xi", "regime",
    "N", "I_N", "T_N", "abs_dev_quadrature",
]

VERIFY_DEVIATION_LIMIT = 1e-6
_SQRT2 = math.sqrt(2.0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with status 2
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Serialization (17 significant digits everywhere)
# ---------------------------------------------------------------------------

def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return format_float(x)
    if isinstance(v, str):
        import json

        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(e) for e in v) + "]"
    raise TypeError(f"cannot serialize {type(v)}")


def _json_record(record: dict, fields) -> str:
    import json

    parts = [f"{json.dumps(k)}: {_json_value(record.get(k))}" for k in fields]
    return "{" + ", ".join(parts) + "}"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(e) for e in v)
    return str(v)


def emit(records: list[dict], fields, fmt: str, out) -> None:
    if fmt == "json":
        bodies = [_json_record(r, fields) for r in records]
        if len(bodies) == 1:
            out.write(bodies[0] + "\n")
        else:
            out.write("[\n  " + ",\n  ".join(bodies) + "\n]\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(fields)
        for r in records:
            writer.writerow([_csv_cell(r.get(k)) for k in fields])
    else:
        _emit_table(records, fields, out)


def _emit_table(records: list[dict], fields, out) -> None:
    shown = [k for k in fields if any(r.get(k) is not None for r in records)]
    rows = []
    for r in records:
        row = []
        for k in shown:
            v = r.get(k)
            if v is None:
                row.append("")
            elif isinstance(v, (float, np.floating)):
                row.append(f"{float(v):.12g}")
            elif isinstance(v, (list, tuple)):
                row.append(";".join(f"{float(e):.12g}" for e in v))
            else:
                row.append(str(v))
        rows.append(row)
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(shown)]
    out.write("  ".join(h.ljust(w) for h, w in zip(shown, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# Problem construction
# ---------------------------------------------------------------------------

def _parse_frame(text: str):
    if text == "balanced":
        return BALANCED, None
    if text == "nayfeh":
        return NAYFEH, None
    if text.startswith("fixed:"):
        try:
            omega = float(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"cannot parse frame {text!r}; expected fixed:<omega>")
        return FIXED, omega
    raise UsageError(f"unknown frame {text!r}; expected balanced, nayfeh or fixed:<omega>")


def _build_potential(args):
    if args.preset == "duffing":
        if args.lam is None:
            raise UsageError("duffing preset requires --lambda")
        return duffing_potential(args.lam, args.mass, args.omega0)
    if args.preset == "cubic":
        if args.lam is None:
            raise UsageError("cubic preset requires --lambda")
        return cubic_potential(args.lam, args.mass, args.omega0)
    if args.coeffs is None:
        raise UsageError("poly preset requires --coeffs")
    return from_physical(args.coeffs, args.mass, args.omega0)


def _resolve_energy(args, U) -> float:
    given_energy = args.energy is not None
    given_amplitude = args.amplitude is not None
    if given_energy == given_amplitude:
        raise UsageError("provide exactly one of --energy or --amplitude")
    if given_energy:
        return float(args.energy)
    if not U.is_symmetric:
        raise UsageError("--amplitude is only valid for parity-symmetric presets")
    a = float(args.amplitude)
    if a <= 0.0:
        raise UsageError(f"amplitude must be positive, got {a}")
    barrier = barrier_info(U)
    if barrier.has_barrier and barrier.amplitude_limit is not None:
        if a >= barrier.amplitude_limit * (1.0 - 1e-12):
            raise SeparatrixError(
                f"amplitude {a} at or beyond the limit {barrier.amplitude_limit}"
            )
    return float(U(a))


def _make_frame(strategy, omega_fixed, shell):
    if strategy == BALANCED:
        return balanced_frame(shell)
    if strategy == NAYFEH:
        return nayfeh_frame(shell)
    return fixed_frame(shell, omega_fixed)


def _blank_record(command: str) -> dict:
    record = dict.fromkeys(RECORD_FIELDS)
    record["command"] = command
    return record


def _base_record(command: str, args, U, energy, shell, frame) -> dict:
    record = _blank_record(command)
    record.update(
        preset=args.preset,
        coeffs=[float(c) for c in U.coeffs],
        mass=float(U.mass),
        omega0=float(U.omega0),
        energy=float(energy),
        frame=args.frame,
    )
    record["lambda"] = None if args.lam is None else float(args.lam)
    if shell is not None:
        record.update(
            x_minus=float(shell.x_minus),
            x_plus=float(shell.x_plus),
            amplitude=None if shell.amplitude is None else float(shell.amplitude),
            rho=None if shell.rho is None else float(shell.rho),
        )
    if frame is not None:
        record.update(
            omega_ref=float(frame.omega),
            xi=None if frame.xi is None else float(frame.xi),
        )
    return record


def _elliptic_result(U, shell):
    if shell.rho is not None:
        return duffing_elliptic(shell.rho, U.omega0)
    if shell.residual.size == 2:
        return cubic_elliptic(shell, U.omega0)
    raise UsageError("elliptic closed form requires the duffing or cubic preset")


def _apply_method(record: dict, method: str, U, energy, shell, frame, args, tol) -> dict:
    record["method"] = method
    if method == "quadrature":
        res = period_quadrature(frame, U.omega0, tol)
    elif method == "series":
        series = best_series(shell, frame, args.N)
        res = period_from_series(series, U.omega0)
        record["regime"] = series.regime
        record["N"] = len(series.partial_sums) - 1
        if series.xi is not None:
            record["xi"] = float(series.xi)
        if getattr(args, "show_terms", False):
            scale = _SQRT2 / U.omega0
            record["partial_sums"] = [scale * s for s in series.partial_sums]
    elif method == "elliptic":
        res = _elliptic_result(U, shell)
    elif method == "oracle":
        report = measure_period(U, energy)
        if not report.reliable:
            raise ConvergenceError(
                "oracle integration unreliable (energy drift or period cap exceeded)"
            )
        record["T"] = report.period
        record["Omega"] = 2.0 * math.pi / report.period
        record["err_estimate"] = report.energy_drift * report.period
        return record
    else:
        raise UsageError(f"unknown method {method!r}")
    record["T"] = res.T
    record["Omega"] = res.Omega
    record["err_estimate"] = res.err_estimate
    return record


def _methods_for(method: str, U, shell) -> list[str]:
    if method != "all":
        return [method]
    methods = ["quadrature", "series"]
    if shell.rho is not None or shell.residual.size == 2:
        methods.append("elliptic")
    methods.append("oracle")
    return methods


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_period(args, tol, out) -> int:
    U = _build_potential(args)
    energy = _resolve_energy(args, U)
    shell = turning_points(U, energy)
    strategy, omega_fixed = _parse_frame(args.frame)
    frame = _make_frame(strategy, omega_fixed, shell)
    records = []
    for method in _methods_for(args.method, U, shell):
        record = _base_record("period", args, U, energy, shell, frame)
        records.append(_apply_method(record, method, U, energy, shell, frame, args, tol))
    emit(records, RECORD_FIELDS, args.format, out)
    return 0


def cmd_sweep(args, tol, out) -> int:
    if args.steps < 2:
        raise UsageError(f"sweep needs at least 2 steps, got {args.steps}")
    if not args.start < args.stop:
        raise UsageError(f"sweep range is degenerate: from {args.start} to {args.stop}")
    if args.method == "all":
        raise UsageError("sweep computes one method per run; pick a single method")
    if args.param == "rho" and args.preset != "duffing":
        raise UsageError("--param rho requires the duffing preset")
    if args.log:
        if args.start <= 0.0:
            raise UsageError("--log requires a positive sweep start")
        grid = np.geomspace(args.start, args.stop, args.steps)
    else:
        grid = np.linspace(args.start, args.stop, args.steps)

    strategy, omega_fixed = _parse_frame(args.frame)
    records = []
    for value in grid:
        try:
            if args.param == "rho":
                # Any (lam, A) with lam A^2 = rho gives the same period; use A = 1.
                U = duffing_potential(float(value), args.mass, args.omega0)
                energy = float(U(1.0))
            else:
                U = _build_potential(args)
                energy = float(value)
            shell = turning_points(U, energy)
            frame = _make_frame(strategy, omega_fixed, shell)
            record = _base_record("sweep", args, U, energy, shell, frame)
            record = _apply_method(record, args.method, U, energy, shell, frame, args, tol)
            if args.preset == "duffing" and record["rho"] is not None and record["rho"] > 0:
                record["sqrt_rho_T"] = math.sqrt(record["rho"]) * record["T"]
        except (SeparatrixError, DomainError) as exc:
            record = _blank_record("sweep")
            record.update(
                preset=args.preset, mass=args.mass, omega0=args.omega0,
                frame=args.frame, method=args.method,
                error=str(exc),
                error_kind="separatrix" if isinstance(exc, SeparatrixError) else "domain",
            )
            record["energy" if args.param == "energy" else "rho"] = float(value)
            record["lambda"] = None if args.lam is None else float(args.lam)
        records.append(record)
    emit(records, RECORD_FIELDS, args.format, out)
    return 0


def cmd_converge(args, tol, out) -> int:
    U = _build_potential(args)
    energy = _resolve_energy(args, U)
    shell = turning_points(U, energy)
    strategy, omega_fixed = _parse_frame(args.frame)
    frame = _make_frame(strategy, omega_fixed, shell)
    series = best_series(shell, frame, args.Nmax)
    t_quad = period_quadrature(frame, U.omega0, tol).T
    scale = _SQRT2 / U.omega0

    rows = []
    for n, i_n in enumerate(series.partial_sums):
        row = dict.fromkeys(CONVERGE_FIELDS)
        row.update(
            command="converge", preset=args.preset,
            energy=float(energy), frame=args.frame,
            omega_ref=float(frame.omega),
            xi=None if series.xi is None else float(series.xi),
            regime=series.regime,
            N=n, I_N=float(i_n), T_N=scale * i_n,
            abs_dev_quadrature=abs(scale * i_n - t_quad),
        )
        row["lambda"] = None if args.lam is None else float(args.lam)
        if shell.amplitude is not None:
            row["amplitude"] = float(shell.amplitude)
        if shell.rho is not None:
            row["rho"] = float(shell.rho)
        rows.append(row)
    if args.format == "table":
        out.write(f"# regime: {series.regime}"
                  + (f"  xi = {format_float(series.xi)}" if series.xi is not None else "")
                  + f"  T_quadrature = {format_float(t_quad)}\n")
    emit(rows, CONVERGE_FIELDS, args.format, out)
    return 0


def cmd_verify(args, tol, out) -> int:
    U = _build_potential(args)
    energy = _resolve_energy(args, U)
    shell = turning_points(U, energy)
    strategy, omega_fixed = _parse_frame(args.frame)
    frame = _make_frame(strategy, omega_fixed, shell)

    args.N = max(args.N, 30)
    records = []
    for method in _methods_for("all", U, shell):
        record = _base_record("verify", args, U, energy, shell, frame)
        records.append(_apply_method(record, method, U, energy, shell, frame, args, tol))

    periods = [r["T"] for r in records]
    deviation = 0.0
    for i in range(len(periods)):
        for j in range(i + 1, len(periods)):
            deviation = max(
                deviation,
                abs(periods[i] - periods[j]) / max(abs(periods[i]), abs(periods[j])),
            )
    summary = _base_record("verify", args, U, energy, shell, frame)
    summary["method"] = "max-deviation"
    summary["max_rel_deviation"] = deviation
    records.append(summary)
    emit(records, RECORD_FIELDS, args.format, out)
    return 0 if deviation <= VERIFY_DEVIATION_LIMIT else 3


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _add_problem_flags(p: _Parser) -> None:
    p.add_argument("--preset", choices=["duffing", "cubic", "poly"], required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="anharmonicity of the duffing/cubic presets")
    p.add_argument("--coeffs", type=float, nargs="+", default=None,
                   help="physical potential coefficients v_k for the poly preset")
    p.add_argument("--energy", type=float, default=None)
    p.add_argument("--amplitude", type=float, default=None,
                   help="oscillation amplitude (parity-symmetric presets only)")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--frame", default="balanced",
                   help="balanced | nayfeh | fixed:<omega>")
    p.add_argument("--N", type=int, default=16, help="series truncation cap")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")


def build_parser() -> _Parser:
    parser = _Parser(prog="periodlab",
                     description="Periods of one-dimensional polynomial anharmonic wells")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("period", help="compute the period of one configuration")
    _add_problem_flags(p)
    p.add_argument("--method",
                   choices=["quadrature", "series", "elliptic", "oracle", "all"],
                   default="quadrature")
    p.add_argument("--show-terms", action="store_true", dest="show_terms",
                   help="include the series partial sums in the record")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("sweep", help="compute a period across a parameter grid")
    _add_problem_flags(p)
    p.add_argument("--method",
                   choices=["quadrature", "series", "elliptic", "oracle"],
                   default="quadrature")
    p.add_argument("--param", choices=["rho", "energy"], required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--log", action="store_true", help="logarithmic grid")
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("converge", help="tabulate series partial sums against quadrature")
    _add_problem_flags(p)
    p.add_argument("--Nmax", type=int, required=True)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", help="cross-check all applicable methods and the oracle")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_verify)

    return parser


def _env_tol() -> float | None:
    raw = os.environ.get("PERIODLAB_TOL")
    if raw is None:
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"PERIODLAB_TOL={raw!r} is not a number")
    if not 0.0 < tol < 1.0:
        raise UsageError(f"PERIODLAB_TOL={raw!r} outside (0, 1)")
    return tol


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            parser.print_help(out)
            return 1
        tol = _env_tol()
        return args.func(args, tol, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SeparatrixError as exc:
        _print_error(out, exc, "separatrix")
        return 2
    except DomainError as exc:
        _print_error(out, exc, "domain")
        return 2
    except ConvergenceError as exc:
        _print_error(out, exc, "numerical")
        return 3


def _print_error(out, exc, kind: str) -> None:
    record = _blank_record("error")
    record["error"] = str(exc)
    record["error_kind"] = kind
    out.write(_json_record(record, ["command", "error", "error_kind"]) + "\n")
    print(f"{kind} error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
