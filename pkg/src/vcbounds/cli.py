"""Command-line front end.

Subcommands:
  eval    one (d, delta) query across the requested bound families
  sweep   fix one axis, sweep the other, write a CSV/JSON curve
  oracle  exact finite-length computations (vcdim, dist, gv, kk, search, props)

Exit codes: 0 success, 2 invalid input or domain error, 3 unwritable output,
4 search budget exhausted (and 1 when `oracle props` reports a failing
property). The environment variable VCB_TOL overrides the default absolute
tolerance; --tol overrides both.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .curves import (
    ALL_METHODS,
    BoundCurve,
    SweepRequest,
    evaluate_query,
    make_row,
    run_sweep,
)
from .markov_lower import InvalidCycleError, NonStationaryError
from .numeric import DEFAULT_CONFIG, DomainError, ToleranceConfig
from .oracle import (
    BinaryCode,
    BudgetExceededError,
    DEFAULT_NODE_BUDGET,
    constant_weight_set,
    gv_greedy,
    kk_bound,
    max_code_size_exact,
    min_distance,
    switch_bounded_set,
    vc_dimension,
)
from .properties import run_property_suite
from .upper import Method

__all__ = ["main", "build_parser"]


def _tolerance_config(args) -> ToleranceConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        env = os.environ.get("VCB_TOL")
        tol = float(env) if env else DEFAULT_CONFIG.abs_tol
    return ToleranceConfig(abs_tol=tol)


def _parse_methods(text: str) -> tuple[Method, ...]:
    if text.strip() == "all":
        return ALL_METHODS
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise DomainError("at least one method is required")
    return tuple(Method.from_name(name) for name in names)


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must look like start:stop:step, got {text!r}")
    return (float(parts[0]), float(parts[1]), float(parts[2]))


def _axis_value(value: float, name: str, cfg: ToleranceConfig) -> float:
    from .numeric import check_unit_range

    return check_unit_range(value, 0.0, 0.5, cfg.abs_tol, name)


def cmd_eval(args) -> int:
    cfg = _tolerance_config(args)
    d = _axis_value(args.d, "d", cfg)
    delta = _axis_value(args.delta, "delta", cfg)
    methods = _parse_methods(args.methods)
    pairs = evaluate_query(d, delta, methods, cfg)

    print(f"{'d':>10} {'delta':>10} {'method':>12} {'rate':>16}")
    for method, rate in pairs:
        print(f"{d:>10.6g} {delta:>10.6g} {method.value:>12} {rate:>16.12g}")

    if args.out:
        curve = BoundCurve.from_rows(
            make_row(delta, method, rate) for method, rate in pairs
        )
        meta = {
            "query": {"d": d, "delta": delta},
            "methods": [m.value for m in methods],
            "tolerance": {"abs_tol": cfg.abs_tol},
            "note": "grid_value column holds delta for single-point output",
        }
        curve.write(args.out, args.format, meta)
    return 0


def cmd_sweep(args) -> int:
    cfg = _tolerance_config(args)
    if (args.d is None) == (args.delta is None):
        raise DomainError("provide exactly one of --d / --delta as the fixed axis")
    if args.d is not None:
        fixed_axis, fixed_value = "d", _axis_value(args.d, "d", cfg)
    else:
        fixed_axis, fixed_value = "delta", _axis_value(args.delta, "delta", cfg)
    request = SweepRequest(
        fixed_axis=fixed_axis,
        fixed_value=fixed_value,
        grid=_parse_grid(args.grid),
        methods=_parse_methods(args.methods),
        output_format=args.format,
        output_path=args.out,
    )
    curve, skipped = run_sweep(request, cfg)
    if skipped:
        print(f"warning: omitted {skipped} (grid point, method) rows outside "
              f"the [0, 1/2] domain", file=sys.stderr)
    if args.out:
        curve.write(args.out, args.format, request.meta(cfg))
        print(f"wrote {len(curve.rows)} rows to {args.out}")
    else:
        sys.stdout.write(
            curve.to_csv_text() if args.format == "csv"
            else curve.to_json_text(request.meta(cfg))
        )
    return 0


def _load_code(args) -> BinaryCode:
    if args.words:
        if args.n is None:
            raise DomainError("--n is required with --words")
        with open(args.words) as handle:
            words = [int(line.strip(), 16) for line in handle if line.strip()]
        if not words:
            raise DomainError(f"no words found in {args.words}")
        return BinaryCode.from_words(args.n, words)
    if args.gen is None:
        raise DomainError("provide a code via --words FILE or --gen NAME")
    if args.n is None:
        raise DomainError("--n is required with --gen")
    if args.gen == "cube":
        return BinaryCode.full_cube(args.n)
    if args.k is None:
        raise DomainError(f"--k is required for generator {args.gen!r}")
    if args.gen == "constant-weight":
        return constant_weight_set(args.n, args.k)
    if args.gen == "switch-bounded":
        return switch_bounded_set(args.n, args.k)
    raise DomainError(f"unknown generator {args.gen!r}")


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "props":
        results = run_property_suite(
            seed=args.seed,
            trials=args.trials,
            max_n=args.max_n,
            node_budget=args.budget,
        )
        for res in results:
            print(res.line())
        return 0 if all(res.passed for res in results) else 1

    code = _load_code(args)
    if args.oracle_cmd == "vcdim":
        print(vc_dimension(code))
    elif args.oracle_cmd == "dist":
        print(min_distance(code))
    elif args.oracle_cmd == "gv":
        result = gv_greedy(code, args.dist)
        print(f"size {len(result)}")
        if len(result) >= 2:
            print(f"min_distance {min_distance(result)}")
    elif args.oracle_cmd == "kk":
        bound: Fraction = kk_bound(code, args.dist)
        print(f"{bound.numerator}/{bound.denominator}")
    elif args.oracle_cmd == "search":
        print(max_code_size_exact(code, args.dist, vc_cap=args.vc_cap,
                                  node_budget=args.budget))
    else:
        raise DomainError(f"unknown oracle subcommand {args.oracle_cmd!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcbounds",
        description="Rate bounds and exact oracles for binary codes with "
                    "bounded VC-dimension and minimum distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate bounds at one (d, delta) query")
    p_eval.add_argument("--d", type=float, required=True)
    p_eval.add_argument("--delta", type=float, required=True)
    p_eval.add_argument("--methods", default="all",
                        help="comma list of mrrw,sauer,haussler,shortening,cwc,markov")
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.add_argument("--out", default=None)
    p_eval.add_argument("--tol", type=float, default=None)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one axis and emit a curve table")
    p_sweep.add_argument("--d", type=float, default=None,
                         help="fix d and sweep delta over the grid")
    p_sweep.add_argument("--delta", type=float, default=None,
                         help="fix delta and sweep d over the grid")
    p_sweep.add_argument("--grid", required=True, help="start:stop:step")
    p_sweep.add_argument("--methods", default="all")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--tol", type=float, default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_oracle = sub.add_parser("oracle", help="exact finite-length computations")
    oracle_sub = p_oracle.add_subparsers(dest="oracle_cmd", required=True)

    def add_code_args(p):
        p.add_argument("--gen", choices=("cube", "constant-weight", "switch-bounded"),
                       default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--words", default=None,
                       help="file with one hex word per line")

    for name, needs_dist in (("vcdim", False), ("dist", False), ("gv", True),
                             ("kk", True), ("search", True)):
        p = oracle_sub.add_parser(name)
        add_code_args(p)
        if needs_dist:
            p.add_argument("--dist", type=int, required=True)
        if name == "search":
            p.add_argument("--vc-cap", type=int, default=None, dest="vc_cap")
            p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
        p.set_defaults(func=cmd_oracle)

    p_props = oracle_sub.add_parser("props", help="run the finite-length "
                                    "invariant suite and report per property")
    p_props.add_argument("--seed", type=int, default=2024)
    p_props.add_argument("--trials", type=int, default=200)
    p_props.add_argument("--max-n", type=int, default=10, dest="max_n")
    p_props.add_argument("--budget", type=int, default=2_000_000)
    p_props.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except (DomainError, NonStationaryError, InvalidCycleError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
