"""Command-line front end.

Subcommands map one-to-one onto the library surfaces: sums, bound-check,
eval, scan, twin, selftest.  Output is CSV or JSON with '.'-decimal,
17-significant-digit floats, so identical configurations produce
byte-identical files.  --plot renders a PNG companion next to the
delimited output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import boundary, selftest, sequences, series, tauberian, twinprime
from .errors import (CoefficientFileError, DomainError, ResolutionError,
                     ResourceLimitError, SamplingError, TermOverflowError)

_ERRORS = (CoefficientFileError, DomainError, ResolutionError, ResourceLimitError,
           SamplingError, TermOverflowError, ValueError, OverflowError)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _add_sequence_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("sequence source (exactly one)")
    src.add_argument("--gen", choices=["ones", "von-mangoldt", "twin-weights", "counterexample"],
                     help="built-in generator")
    src.add_argument("--file", help="sparse coefficient file ('index value' lines)")
    p.add_argument("--horizon", type=int, help="truncation horizon for dense generators")
    p.add_argument("--k", type=int, help="number of witness terms (counterexample)")


def _build_sequence(args) -> sequences.CoefficientSequence:
    if (args.gen is None) == (args.file is None):
        raise DomainError("exactly one of --gen/--file is required")
    if args.file is not None:
        return sequences.load_coefficients(args.file)
    if args.gen == "counterexample":
        if args.k is None:
            raise DomainError("--k is required with --gen counterexample")
        return sequences.counterexample(args.k)
    if args.horizon is None:
        raise DomainError(f"--horizon is required with --gen {args.gen}")
    maker = {"ones": sequences.ones, "von-mangoldt": sequences.von_mangoldt,
             "twin-weights": sequences.twin_weights}[args.gen]
    return maker(args.horizon)


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _plot_base(args) -> str:
    if args.out is None or args.out == "-":
        raise DomainError("--plot needs --out to name the figure")
    return os.path.splitext(args.out)[0]


# -- subcommands -----------------------------------------------------------


def _cmd_sums(args) -> int:
    seq = _build_sequence(args)
    if args.checkpoints == "geometric":
        cps = tauberian.default_checkpoints(seq.require_int_horizon())
    else:
        cps = sorted({int(tok) for tok in args.checkpoints.split(",")})
    table = tauberian.partial_sums(seq, cps)
    if args.format == "json":
        rows = [{"N": c, "s": s.to_json_obj(), "ratio": r, "running_sup": u}
                for c, s, r, u in zip(table.checkpoints, table.sums,
                                      table.ratios, table.running_sup)]
        _write_text(args.out, _json_dump({"rule": seq.rule, "table": rows}))
    else:
        lines = ["N,s,ratio,running_sup"]
        for c, s, r, u in zip(table.checkpoints, table.sums, table.ratios, table.running_sup):
            lines.append(f"{c},{s.to_text()},{_fmt(r)},{_fmt(u)}")
        _write_text(args.out, "\n".join(lines) + "\n")
    if args.plot:
        from . import plots
        print(plots.sums_figure(table, _plot_base(args) + ".png",
                                title=seq.rule or "partial sums"), file=sys.stderr)
    return 0


def _cmd_bound_check(args) -> int:
    if args.gen == "counterexample" and args.N is None:
        if args.k is None:
            raise DomainError("--k or --N required")
        rep = tauberian.sharpness_check(args.k)
        _write_text(args.out, _json_dump(rep.to_json_obj()))
        return 0
    seq = _build_sequence(args)
    if args.N is None:
        raise DomainError("--N is required for the chain check")
    reports = [tauberian.log_bound_check(seq, n) for n in args.N]
    payload = reports[0].to_json_obj() if len(reports) == 1 \
        else [r.to_json_obj() for r in reports]
    _write_text(args.out, _json_dump(payload))
    if args.plot:
        from . import plots
        print(plots.bound_chain_figure(reports, _plot_base(args) + ".png"), file=sys.stderr)
    return 0


def _cmd_eval(args) -> int:
    seq = _build_sequence(args)
    z = complex(args.x, args.y)
    f = series.eval_f(seq, z)
    q = series.eval_q(seq, z)
    abel = series.abel_rhs(seq, z)
    lap = series.laplace_q(seq, z)
    scale = abs(q.value) + 1e-300
    payload = {
        "z": {"x": args.x, "y": args.y},
        "f": {"re": f.value.real, "im": f.value.imag},
        "q": {"re": q.value.real, "im": q.value.imag},
        "horizon_used": f.horizon_used,
        "terms_included": f.terms_included,
        "smallest_term_magnitude": f.smallest_term_magnitude,
        "identity_deltas": {
            "abel_rel": abs(q.value - abel) / scale,
            "laplace_rel": abs(q.value - lap) / scale,
        },
    }
    _write_text(args.out, _json_dump(payload))
    return 0


def _cmd_scan(args) -> int:
    seq = _build_sequence(args)
    if args.coupled is not None:
        xs, level_ns = boundary.coupled_levels(seq.require_int_horizon(), args.coupled)
    elif args.x_levels is not None:
        xs = [float(tok) for tok in args.x_levels.split(",")]
        level_ns = None
    else:
        raise DomainError("--x-levels or --coupled required")
    grid = boundary.scan(seq, b=args.B, dy=args.dy, x_levels=xs, level_horizons=level_ns)
    diag = boundary.window_coeffs(grid, m_max=args.M)

    lines = ["x,y,re_q,im_q"]
    for i, x in enumerate(grid.x_levels):
        for j, y in enumerate(grid.y):
            v = grid.values[i, j]
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(v.real)},{_fmt(v.imag)}")
    _write_text(args.out, "\n".join(lines) + "\n")

    diag_lines = ["x,m,re_c,im_c,classification"]
    for i, x in enumerate(grid.x_levels):
        for mi, m in enumerate(range(-diag.m_max, diag.m_max + 1)):
            c = diag.coefficients[i, mi]
            diag_lines.append(
                f"{_fmt(x)},{m},{_fmt(c.real)},{_fmt(c.imag)},{diag.classification}")
    if args.out is None or args.out == "-":
        _write_text(None, "\n".join(diag_lines) + "\n")
    else:
        diag_path = os.path.splitext(args.out)[0] + ".diag.csv"
        _write_text(diag_path, "\n".join(diag_lines) + "\n")
        print(diag_path, file=sys.stderr)
    if args.plot:
        from . import plots
        print(plots.scan_figure(grid, diag, _plot_base(args) + ".png",
                                title=seq.rule or "scan"), file=sys.stderr)
    return 0


def _cmd_twin(args) -> int:
    rep = twinprime.report(args.N, args.P)
    _write_text(args.out, _json_dump(rep.to_json_obj()))
    if args.plot:
        from . import plots
        print(plots.twin_figure(rep, _plot_base(args) + ".png"), file=sys.stderr)
    return 0


def _cmd_selftest(args) -> int:
    ok = selftest.run_selftest()
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taublab",
        description="Dirichlet-series boundary laboratory: partial sums, growth "
                    "bounds, transform identities, windowed boundary diagnostics, "
                    "and twin-prime comparisons.")
    parser.add_argument("--threads", type=int,
                        default=int(os.environ.get("TAUB_LAB_THREADS", "0") or 0),
                        help="worker cap (results are independent of it)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sums", help="checkpointed partial sums and ratios")
    _add_sequence_args(p)
    p.add_argument("--checkpoints", default="geometric",
                   help="'geometric' or comma-separated integers")
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--plot", action="store_true", help="render a PNG next to the output")
    p.set_defaults(fn=_cmd_sums)

    p = sub.add_parser("bound-check", help="order-log chain or sharpness witness")
    _add_sequence_args(p)
    p.add_argument("--N", type=int, action="append",
                   help="chain-check N (repeatable)")
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=_cmd_bound_check)

    p = sub.add_parser("eval", help="single-point evaluation with identity deltas")
    _add_sequence_args(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("scan", help="boundary grid + windowed Fourier diagnostic")
    _add_sequence_args(p)
    p.add_argument("--B", type=float, default=boundary.DEFAULT_B, help="window half-width")
    p.add_argument("--dy", type=float, default=None, help="y step (default: coupled to horizon)")
    p.add_argument("--x-levels", help="comma-separated decreasing x values > 1")
    p.add_argument("--coupled", type=int, metavar="L",
                   help="L levels with x_j - 1 = 1/ln(N_j), N_j = horizon^(j/L)")
    p.add_argument("--M", type=int, default=boundary.DEFAULT_M, help="max Fourier index")
    p.add_argument("--out", help="grid CSV path ('-' for stdout); diagnostic CSV lands beside it")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("twin", help="pair counts, constant, integral, ratios")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--P", type=int, required=True, help="Euler-product truncation prime")
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=_cmd_twin)

    p = sub.add_parser("selftest", help="run acceptance criteria and invariants; exit 0 iff all pass")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _ERRORS as exc:
        print(f"taublab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
