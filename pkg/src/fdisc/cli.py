"""Command-line front end.

Exit codes: 0 success, 2 validation or domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, discrepancy, loss, measures, stats
from .errors import FdiscError

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_compare(args) -> None:
    mu = measures.load_probability(args.a)
    nu = measures.load_probability(args.b)
    report = discrepancy.compare_all(mu, nu)
    _emit(_json(report.to_dict()), args.out)


def delta_curve_csv(n: int, scaled: bool) -> str:
    table = discrepancy.delta_curve(n, scaled=scaled)
    lines = ["d,fourier,tv,w1"]
    lines += [f"{int(d)},{_fmt(f)},{_fmt(tv)},{_fmt(w1)}" for d, f, tv, w1 in table]
    return "\n".join(lines) + "\n"


def cmd_delta_curve(args) -> None:
    _emit(delta_curve_csv(args.n, args.scaled), args.out)


def cmd_bounds(args) -> None:
    report = bounds.tight_bound_report(args.n, args.theta)
    _emit(_json(report.to_dict()), args.out)


def cmd_conjecture(args) -> None:
    rows = bounds.conjecture_scan(args.n_max, dense=args.dense)
    _emit(bounds.conjecture_csv(rows), args.out)
    failed = [r.n for r in rows if not (r.conjecture_holds and r.formula_matches)]
    if failed:
        print(f"conjecture fails at N = {failed}", file=sys.stderr)


def cmd_decompose(args) -> None:
    delta = measures.load_null_sum(args.delta)
    dec = bounds.decompose_null_sum(delta)
    payload = {
        "tv": dec.tv,
        "terms": [{"i": i, "j": j, "lambda": lam} for i, j, lam in dec.terms],
    }
    _emit(_json(payload), args.out)


def cmd_fit(args) -> None:
    target = measures.load_probability(args.target)
    if args.n is not None and args.n != target.n:
        raise measures.SizeMismatchError(f"size mismatch: --n {args.n} vs target of length {target.n}")
    if args.init == "uniform":
        init = measures.uniform(target.n)
    else:
        init = measures.load_probability(args.init)
    trace = loss.fit(target, init, steps=args.steps, step_size=args.step_size)
    if args.trace:
        Path(args.trace).write_text(trace.to_csv(), encoding="utf-8")
    final_loss = trace.iterates[-1][1]
    print(f"final_loss={_fmt(final_loss)} steps={trace.iterates[-1][0]} converged={str(trace.converged).lower()}")


def cmd_noise_demo(args) -> None:
    result, theta_true = stats.noise_demo(
        args.n, args.sigma, args.samples, args.seed, grid_points=args.grid_points
    )
    _emit(result.to_csv(), args.out)
    print(
        f"theta_true={_fmt(theta_true)} theta_likelihood={_fmt(result.theta_star_likelihood)} "
        f"theta_fourier={_fmt(result.theta_star_fourier)}",
        file=sys.stderr,
    )


def _positive_float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdisc", description="Fourier Discrepancy toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="F, TV, KL and W1 between two measure files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("delta-curve", help="distances between delta_0 and delta_d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_delta_curve)

    p = sub.add_parser("bounds", help="tight bounds of F at fixed TV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("conjecture", help="scan argmin of g for even N <= n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--dense", action="store_true", help="also scan real d on a 1e-3 grid")
    p.add_argument("--out")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("decompose", help="dipole decomposition of a null-sum file")
    p.add_argument("delta")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fit", help="projected gradient descent on the Fourier loss")
    p.add_argument("target")
    p.add_argument("--n", type=int)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--step-size", type=_positive_float)
    p.add_argument("--init", default="uniform", help="'uniform' or a measure file")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("noise-demo", help="likelihood vs Fourier loss on a shifted bump")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=_positive_float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--grid-points", type=int, default=101)
    p.add_argument("--out")
    p.set_defaults(func=cmd_noise_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        args.func(args)
    except (FdiscError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
