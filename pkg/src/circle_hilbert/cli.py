"""Command-line front end.

Subcommands: `nodes` (dump a rule), `eval` (pointwise transform values),
`table` (regenerate a built-in example study), `converge` (ad-hoc
convergence study), `selftest` (invariant suite).  Exit codes: 0 success,
1 selftest failure, 2 usage error, 3 evaluation error, 4 reference
non-convergence.  The CIRCLE_HILBERT_PRECISION environment variable
(integer 6..17) overrides the 15 significant digits used in text and CSV
output.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import expr
from .errors import (
    CircleHilbertError,
    ExprError,
    GridEvalError,
    NoConvergence,
    TauNotUnimodular,
)
from .hilbert import Mode, eval_grid
from .quadrature import RuleKind, Tau, as_tau, build_anti_szego, build_szego, tau_prescribed
from .selftest import run_selftest
from .tables import (
    CSV_HEADER,
    DEFAULT_N_REF,
    EXAMPLE_FUNCTION,
    EXAMPLE_N_LISTS,
    EXAMPLE_TAU,
    PHI_GRID_SIZE,
    ConvergenceRow,
    RunConfig,
    ValueRow,
    convergence_rows,
    example1_value_rows,
    phi_grid,
)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_EVAL = 3
EXIT_REFERENCE = 4

_MODES = {
    "naive": Mode.NAIVE_SZEGO,
    "naive-anti": Mode.NAIVE_ANTI,
    "szego": Mode.PRESCRIBED_SZEGO,
    "anti": Mode.PRESCRIBED_ANTI,
    "averaged": Mode.AVERAGED,
}


class UsageError(CircleHilbertError):
    pass


def _precision() -> int:
    raw = os.environ.get("CIRCLE_HILBERT_PRECISION")
    if raw is None:
        return 15
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"CIRCLE_HILBERT_PRECISION must be an integer, got {raw!r}")
    if not 6 <= digits <= 17:
        raise UsageError(f"CIRCLE_HILBERT_PRECISION must be in 6..17, got {digits}")
    return digits


def _fmt(x: float, digits: int) -> str:
    return f"{x:.{digits - 1}e}"


def _fmt_complex(z: complex, digits: int) -> str:
    return f"{z.real:.{digits - 1}e}{z.imag:+.{digits - 1}e}j"


def _json_complex(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_tau(text: str) -> Tau:
    try:
        value = complex(text.strip())
    except ValueError:
        raise UsageError(f"--tau must be a complex literal such as 1, -1 or 0.6+0.8j, got {text!r}")
    return as_tau(value)


def _resolve_integrand(args) -> tuple[str, object]:
    if getattr(args, "f", None) and getattr(args, "expr", None):
        raise UsageError("give either --f or --expr, not both")
    if getattr(args, "f", None):
        return args.f, expr.compile_integrand(expr.builtin(args.f))
    if getattr(args, "expr", None):
        return args.expr, expr.compile_integrand(expr.parse(args.expr))
    raise UsageError("an integrand is required (--f NAME or --expr SOURCE)")


# -- nodes --------------------------------------------------------------------


def _cmd_nodes(args, digits: int) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.prescribed_phi is not None and args.tau is not None:
        raise UsageError("give either --tau or --prescribed-phi, not both")
    if args.prescribed_phi is not None:
        tau = tau_prescribed(args.prescribed_phi + math.pi / (4 * args.n), args.n)
    else:
        tau = _parse_tau(args.tau if args.tau is not None else "1")
    kind = RuleKind.SZEGO if args.kind == "szego" else RuleKind.ANTI_SZEGO
    build = build_szego if kind is RuleKind.SZEGO else build_anti_szego
    rule = build(args.n, tau)
    weight = 1.0 / args.n
    nodes = rule.nodes()

    if args.format == "json":
        payload = {
            "kind": rule.kind.value,
            "n": rule.n,
            "tau": _json_complex(tau.value),
            "weight": weight,
            "nodes": [
                {"angle": float(a), "re": z.real, "im": z.imag}
                for a, z in zip(rule.node_angles, nodes)
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = []
    if args.format == "csv":
        lines.append("k,angle,re,im,weight")
        for k, (a, z) in enumerate(zip(rule.node_angles, nodes), start=1):
            lines.append(
                f"{k},{_fmt(float(a), digits)},{_fmt(z.real, digits)},"
                f"{_fmt(z.imag, digits)},{_fmt(weight, digits)}"
            )
    else:
        lines.append(f"# {rule.kind.value} rule, n={rule.n}, tau={_fmt_complex(tau.value, digits)}")
        lines.append(f"{'k':>4} {'angle':>{digits + 8}} {'re':>{digits + 8}} {'im':>{digits + 8}} {'weight':>{digits + 8}}")
        for k, (a, z) in enumerate(zip(rule.node_angles, nodes), start=1):
            lines.append(
                f"{k:>4} {_fmt(float(a), digits):>{digits + 8}} {_fmt(z.real, digits):>{digits + 8}} "
                f"{_fmt(z.imag, digits):>{digits + 8}} {_fmt(weight, digits):>{digits + 8}}"
            )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- eval ---------------------------------------------------------------------


def _cmd_eval(args, digits: int) -> int:
    label, f = _resolve_integrand(args)
    if args.phi and args.phi_grid:
        raise UsageError("give either --phi or --phi-grid, not both")
    if args.phi:
        phis = sorted(args.phi)
    elif args.phi_grid:
        phis = list(phi_grid(args.phi_grid))
    else:
        raise UsageError("an evaluation point is required (--phi or --phi-grid)")
    mode = _MODES[args.mode]
    tau = _parse_tau(args.tau) if args.tau is not None else as_tau(1)
    results = eval_grid(f, phis, args.n, [mode], tau=tau)

    if args.format == "json":
        payload = {
            "integrand": label,
            "n": args.n,
            "mode": args.mode,
            "records": [
                {
                    "phi": r.phi,
                    "value": _json_complex(r.value),
                    "estimate": None if r.error_estimate is None else _json_complex(r.error_estimate),
                }
                for r in results
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = []
    if args.format == "csv":
        lines.append("phi,mode,value,estimate")
        for r in results:
            est = "" if r.error_estimate is None else _fmt_complex(r.error_estimate, digits)
            lines.append(f"{_fmt(r.phi, digits)},{args.mode},{_fmt_complex(r.value, digits)},{est}")
    else:
        lines.append(f"# {label}, n={args.n}, mode={args.mode}")
        for r in results:
            est = "" if r.error_estimate is None else f"  estimate={_fmt_complex(r.error_estimate, digits)}"
            lines.append(f"phi={_fmt(r.phi, digits)}  value={_fmt_complex(r.value, digits)}{est}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- table / converge ---------------------------------------------------------


def _rows_to_csv(rows: list[ConvergenceRow], digits: int) -> list[str]:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    str(r.n),
                    _fmt(r.eps, digits),
                    _fmt(r.eps_anti, digits),
                    _fmt(r.eps_avg, digits),
                    _fmt(r.rn_max, digits),
                    _fmt_complex(r.e_mean, digits),
                    _fmt_complex(r.e_mean_anti, digits),
                    _fmt_complex(r.e_mean_avg, digits),
                    _fmt_complex(r.big_r, digits),
                )
            )
        )
    return lines


def _rows_to_json(rows: list[ConvergenceRow]) -> list[dict]:
    return [
        {
            "n": r.n,
            "eps": r.eps,
            "eps_anti": r.eps_anti,
            "eps_avg": r.eps_avg,
            "rn_max": r.rn_max,
            "e_mean": _json_complex(r.e_mean),
            "e_mean_anti": _json_complex(r.e_mean_anti),
            "e_mean_avg": _json_complex(r.e_mean_avg),
            "Rn": _json_complex(r.big_r),
        }
        for r in rows
    ]


def _rows_to_text(rows: list[ConvergenceRow], digits: int, rates: bool) -> list[str]:
    w = digits + 7
    header = f"{'n':>6} {'eps':>{w}} {'eps_anti':>{w}} {'eps_avg':>{w}} {'rn_max':>{w}}"
    if rates:
        header += f" {'rate':>7}"
    header += f" {'e_mean':>{2 * w}} {'e_mean_anti':>{2 * w}} {'e_mean_avg':>{2 * w}} {'Rn':>{2 * w}}"
    lines = [header]
    for i, r in enumerate(rows):
        line = (
            f"{r.n:>6} {_fmt(r.eps, digits):>{w}} {_fmt(r.eps_anti, digits):>{w}} "
            f"{_fmt(r.eps_avg, digits):>{w}} {_fmt(r.rn_max, digits):>{w}}"
        )
        if rates:
            if i > 0 and rows[i - 1].eps > 0 and r.eps > 0 and r.n != rows[i - 1].n:
                rate = math.log(rows[i - 1].eps / r.eps) / math.log(r.n / rows[i - 1].n)
                line += f" {rate:>7.2f}"
            else:
                line += f" {'':>7}"
        line += (
            f" {_fmt_complex(r.e_mean, digits):>{2 * w}} {_fmt_complex(r.e_mean_anti, digits):>{2 * w}}"
            f" {_fmt_complex(r.e_mean_avg, digits):>{2 * w}} {_fmt_complex(r.big_r, digits):>{2 * w}}"
        )
        lines.append(line)
    return lines


def _value_rows_to_lines(values: list[ValueRow], fmt: str, digits: int) -> list[str]:
    def cell(z: complex | None) -> str:
        if z is None:
            return "" if fmt == "csv" else "unstable"
        return _fmt_complex(z, digits)

    if fmt == "csv":
        lines = ["phi,n,naive_szego,naive_anti,szego,anti"]
        for v in values:
            lines.append(
                f"{_fmt(v.phi, digits)},{v.n},{cell(v.naive_szego)},{cell(v.naive_anti)},"
                f"{cell(v.prescribed_szego)},{cell(v.prescribed_anti)}"
            )
        return lines
    w = 2 * digits + 16
    lines = [f"{'phi':>{digits + 7}} {'n':>6} {'naive_szego':>{w}} {'naive_anti':>{w}} {'szego':>{w}} {'anti':>{w}}"]
    for v in values:
        lines.append(
            f"{_fmt(v.phi, digits):>{digits + 7}} {v.n:>6} {cell(v.naive_szego):>{w}} "
            f"{cell(v.naive_anti):>{w}} {cell(v.prescribed_szego):>{w}} {cell(v.prescribed_anti):>{w}}"
        )
    return lines


def _run_study(f, config: RunConfig, digits: int, values: list[ValueRow] | None, rates: bool) -> int:
    rows = convergence_rows(f, config)
    if config.output_format == "json":
        payload: dict = {"source": config.source, "n_ref": config.n_ref, "rows": _rows_to_json(rows)}
        if values is not None:
            payload["values"] = [
                {
                    "phi": v.phi,
                    "n": v.n,
                    "naive_szego": None if v.naive_szego is None else _json_complex(v.naive_szego),
                    "naive_anti": None if v.naive_anti is None else _json_complex(v.naive_anti),
                    "szego": _json_complex(v.prescribed_szego),
                    "anti": _json_complex(v.prescribed_anti),
                }
                for v in values
            ]
        _emit(json.dumps(payload, indent=2) + "\n", config.out_path)
        return EXIT_OK
    lines: list[str] = []
    if values is not None:
        lines.extend(_value_rows_to_lines(values, config.output_format, digits))
        lines.append("")
    if config.output_format == "csv":
        lines.extend(_rows_to_csv(rows, digits))
    else:
        lines.extend(_rows_to_text(rows, digits, rates))
    _emit("\n".join(lines) + "\n", config.out_path)
    return EXIT_OK


def _cmd_table(args, digits: int) -> int:
    example = args.example
    name = EXAMPLE_FUNCTION[example]
    f = expr.compile_integrand(expr.builtin(name))
    config = RunConfig(
        source=name,
        n_list=EXAMPLE_N_LISTS[example],
        phis=tuple(phi_grid(PHI_GRID_SIZE)),
        n_ref=args.n_ref,
        tau_mean=as_tau(EXAMPLE_TAU[example]),
        output_format=args.format,
        out_path=args.out,
    )
    values = example1_value_rows(f) if example == 1 else None
    return _run_study(f, config, digits, values, rates=False)


def _cmd_converge(args, digits: int) -> int:
    label, f = _resolve_integrand(args)
    try:
        n_list = tuple(int(part) for part in args.n_list.split(","))
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {args.n_list!r}")
    if any(n < 1 for n in n_list):
        raise UsageError("every study size must be >= 1")
    tau = _parse_tau(args.tau) if args.tau is not None else as_tau(1)
    try:
        config = RunConfig(
            source=label,
            n_list=n_list,
            phis=tuple(phi_grid(args.phi_grid)),
            n_ref=args.n_ref,
            tau_mean=tau,
            output_format=args.format,
            out_path=args.out,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    return _run_study(f, config, digits, values=None, rates=args.format == "text")


# -- argument parsing ---------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circle-hilbert",
        description="Szego/anti-Szego quadrature and circular Hilbert transform evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("nodes", help="print the nodes and weight of one rule")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("szego", "anti"), default="szego")
    p.add_argument("--tau", default=None)
    p.add_argument("--prescribed-phi", type=float, default=None)
    add_output_flags(p)

    p = sub.add_parser("eval", help="evaluate the transform at points")
    p.add_argument("--f", default=None, help="built-in integrand name (f0..f4)")
    p.add_argument("--expr", default=None, help="integrand expression in theta")
    p.add_argument("--phi", type=float, action="append", default=None)
    p.add_argument("--phi-grid", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=sorted(_MODES), default="averaged")
    p.add_argument("--tau", default=None, help="rule parameter for the naive modes")
    add_output_flags(p)

    p = sub.add_parser("table", help="regenerate a built-in example study")
    p.add_argument("--example", type=int, choices=(1, 2, 3, 4, 5), required=True)
    p.add_argument("--n-ref", type=int, default=DEFAULT_N_REF)
    add_output_flags(p)

    p = sub.add_parser("converge", help="run a convergence study")
    p.add_argument("--f", default=None)
    p.add_argument("--expr", default=None)
    p.add_argument("--n-list", required=True, help="comma-separated rule sizes")
    p.add_argument("--n-ref", type=int, default=DEFAULT_N_REF)
    p.add_argument("--phi-grid", type=int, default=PHI_GRID_SIZE)
    p.add_argument("--tau", default=None, help="fixed tau for the mean-integral columns")
    add_output_flags(p)

    sub.add_parser("selftest", help="run the property self-test suite")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        digits = _precision()
        if args.command == "selftest":
            return run_selftest()
        if args.command == "nodes":
            return _cmd_nodes(args, digits)
        if args.command == "eval":
            return _cmd_eval(args, digits)
        if args.command == "table":
            return _cmd_table(args, digits)
        return _cmd_converge(args, digits)
    except (UsageError, TauNotUnimodular, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    except GridEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except CircleHilbertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
