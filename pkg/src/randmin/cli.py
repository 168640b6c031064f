"""Command-line front end.

    randmin exact --sigma 2 -k 2 -w 2 --algo naive
    randmin closed-form --sigma 10 -k 30 -w 30
    randmin table --sigma 2 --k-max 23 -o table1.csv
    randmin plot --sigma 2 -k 5 --w-max 300 -o curve.csv
    randmin verify --suite bijection --sigma 2 --max-total 13
    randmin crossing --sigma 10

Exit codes: 0 ok, 1 verification failure, 2 invalid parameters, 3 resource cap.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import closed_form as cf
from . import verify as vf
from .core import DEFAULT_ENUM_CAP, CapExceeded, ParamError, Params
from .exact_enum import exact_density_fast
from .montecarlo import bigw_upper_bound, mc_density, mc_density_curve, mc_gamechanger_density
from .oracle import exact_density_naive
from .report import DensityReport, render

EXIT_OK, EXIT_VERIFY, EXIT_PARAM, EXIT_CAP = 0, 1, 2, 3


def _triple(args) -> Params:
    return Params(args.sigma, args.k, args.w)


def cmd_exact(args) -> list[dict[str, Any]]:
    p = _triple(args)
    t0 = time.perf_counter()
    if args.algo == "naive":
        dr = exact_density_naive(p, cap=args.cap, workers=args.threads)
    else:
        dr = exact_density_fast(p, engine=args.algo, cap=args.cap, workers=args.threads)
    return [DensityReport.from_density(p.sigma, p.k, p.w, dr, args.algo, time.perf_counter() - t0).row()]


def cmd_closed_form(args) -> list[dict[str, Any]]:
    p = _triple(args)
    t0 = time.perf_counter()
    try:
        dr = cf.density_closed_form(p)
    except ParamError as exc:
        raise ParamError(f"{exc}; the closed form covers the half-quadrant w <= k only, use exact or mc") from None
    rep = DensityReport.from_density(p.sigma, p.k, p.w, dr, "closed-form", time.perf_counter() - t0)
    rep.extra["log_abs_dfr_gap"] = cf.log_abs_dfr_gap(p, args.log_base)
    rep.extra["below_2"] = rep.dfr < 2
    return [rep.row()]


def cmd_delta(args) -> list[dict[str, Any]]:
    rows = []
    for w in range(1, args.w_max + 1):
        d = cf.delta(args.sigma, w)
        poly = cf.delta_polynomial(args.sigma, w) if w in cf.DELTA_POLYNOMIALS else None
        rows.append(
            {
                "sigma": args.sigma,
                "w": w,
                "delta": d,
                "polynomial": poly,
                "matches": "" if poly is None else poly == d,
                "dev_next": cf.deviation(args.sigma, w + 1),
            }
        )
    return rows


def cmd_prim(args) -> list[dict[str, Any]]:
    table = cf.prim_table(args.sigma, args.n)
    mu = cf.mobius_table(args.n)
    return [{"sigma": args.sigma, "n": n, "prim": table[n], "prim_mobius": cf.prim_mobius(args.sigma, n, mu)} for n in range(1, args.n + 1)]


def table_rows(sigma: int, k_max: int, log_base: float | None = None, w_min: int = 2) -> list[dict[str, Any]]:
    """One row per k; cell ``w`` holds ``log |DFR - 2|`` and ``signs`` lists '+'/'-' for DFR above/below 2."""
    if k_max < w_min:
        raise ParamError(f"k_max must be >= {w_min}")
    devs = cf.deviations(sigma, k_max)
    base = math.log(sigma if log_base is None else log_base)
    rows = []
    for k in range(w_min, k_max + 1):
        row: dict[str, Any] = {"k": k}
        signs = []
        for w in range(w_min, k_max + 1):
            if w > k:
                row[f"w{w}"] = None
                continue
            # DFR - 2 = (w+1) Dev / sigma^(w+k)
            gap = Fraction((w + 1) * devs[w - 1], sigma ** (w + k))
            row[f"w{w}"] = float("-inf") if gap == 0 else (math.log(abs(gap.numerator)) - math.log(gap.denominator)) / base
            signs.append("+" if gap > 0 else "-" if gap < 0 else "0")
        row["signs"] = "".join(signs)
        rows.append(row)
    return rows


def cmd_table(args) -> list[dict[str, Any]]:
    return table_rows(args.sigma, args.k_max, args.log_base)


def plot_rows(
    sigma: int, k: int, w_max: int, mc_n: int, mc_reps: int, seed: int, exact_cap: int = 2**16
) -> list[dict[str, Any]]:
    """Density curve over ``w = 1..w_max``: closed form, exact enumeration or Monte Carlo per point."""
    mc_ws = []
    rows = []
    for w in range(1, w_max + 1):
        p = Params(sigma, k, w)
        row: dict[str, Any] = {
            "w": w,
            "curve_2_over_w_plus_1": 2 / (w + 1),
            "curve_sigma_minus_k": float(sigma) ** -k,
            "dr_closed_form": float(cf.density_closed_form(p)) if w <= k else None,
            "dr_exact": None,
            "dr_mc": None,
            "dr_mc_se": None,
            "bigw_upper_bound": bigw_upper_bound(p),
        }
        if w > k:
            if p.n_contexts <= exact_cap:
                row["dr_exact"] = float(exact_density_fast(p))
            else:
                mc_ws.append(w)
        rows.append(row)
    if mc_ws:
        est = mc_density_curve(sigma, k, mc_ws, mc_n, mc_reps, seed)
        for w, e in est.items():
            rows[w - 1]["dr_mc"] = e.mean
            rows[w - 1]["dr_mc_se"] = e.std_error
    return rows


def cmd_plot(args) -> list[dict[str, Any]]:
    return plot_rows(args.sigma, args.k, args.w_max, args.n, args.reps, args.seed, args.exact_cap)


def cmd_mc(args) -> list[dict[str, Any]]:
    p = _triple(args)
    fn = mc_density if args.estimator == "markup" else mc_gamechanger_density
    t0 = time.perf_counter()
    est = fn(p, args.n, args.reps, seed=args.seed, workers=args.threads)
    rep = DensityReport.from_density(p.sigma, p.k, p.w, est.mean, f"mc-{args.estimator}", time.perf_counter() - t0)
    rep.extra.update(std_error=est.std_error, replicates=est.replicates, total_windows=est.total_windows, seed=est.seed)
    return [rep.row()]


def cmd_crossing(args) -> list[dict[str, Any]]:
    c = cf.find_crossing(args.sigma, args.w_cap)
    return [
        {
            "sigma": c.sigma,
            "w_cap": c.w_cap,
            "first_negative": c.first_negative,
            "sign_changes": c.sign_changes,
            "single_change": c.single_change,
        }
    ]


def cmd_bigw_bound(args) -> list[dict[str, Any]]:
    p = _triple(args)
    return [{"sigma": p.sigma, "k": p.k, "w": p.w, "bigw_upper_bound": bigw_upper_bound(p), "sigma_minus_k": float(p.sigma) ** -p.k}]


def run_suite(args) -> list[vf.PropertyResult]:
    s = args.sigma
    if args.suite == "lemma2":
        pairs = [(args.k, args.w)] if args.k and args.w else [(1, 2), (2, 2), (2, 3), (3, 2)]
        return vf.lemma2(s, pairs)
    if args.suite == "dev-independence":
        w = args.w or 3
        return vf.dev_independence(s, w, range(max(w, args.k or w), (args.k_max or w + 2) + 1))
    if args.suite == "bijection":
        return vf.bijection(s, args.max_total or 13)
    if args.suite == "major-run":
        return vf.major_run(s, args.max_len or (16 if s == 2 else 10), args.max_total or (14 if s == 2 else 10))
    if args.suite == "delta":
        return vf.delta(s, args.w_max or 10)
    if args.suite == "monotonic":
        return vf.monotonic(s, args.k or 4, args.w_max or 8, args.strings, args.length, args.seed)
    raise ParamError(f"unknown suite {args.suite!r}")


def _add_params(p: argparse.ArgumentParser, w: bool = True) -> None:
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    if w:
        p.add_argument("-w", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", default=None, help="write to PATH instead of stdout")
    common.add_argument("--log-base", type=float, default=None, help="log base for |DFR-2| (default sigma)")

    parser = argparse.ArgumentParser(prog="randmin", description="Expected density of random minimizers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact density by enumeration")
    _add_params(p)
    p.add_argument("--algo", choices=("naive", "dict", "weiner"), default="dict")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP, help="max sigma^(w+k) contexts")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("closed-form", parents=[common], help="closed-form density (w <= k)")
    _add_params(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("delta", parents=[common], help="deviation increments against the published polynomials")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--w-max", type=int, default=10)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("prim", parents=[common], help="primitive word counts")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("-n", type=int, default=20)
    p.set_defaults(func=cmd_prim)

    p = sub.add_parser("table", parents=[common], help="log |DFR - 2| table over the half-quadrant")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=cmd_table, default_format="csv")

    p = sub.add_parser("plot", parents=[common], help="density curve data over w")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--w-max", type=int, required=True)
    p.add_argument("-n", type=int, default=10**6, help="Monte Carlo string length")
    p.add_argument("--reps", type=int, default=4)
    p.add_argument("--exact-cap", type=int, default=2**16)
    p.set_defaults(func=cmd_plot, default_format="csv")

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo density estimate")
    _add_params(p)
    p.add_argument("-n", type=int, default=10**6)
    p.add_argument("--reps", type=int, default=16)
    p.add_argument("--estimator", choices=("markup", "gamechanger"), default="markup")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("--suite", choices=vf.SUITES, required=True)
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-w", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--w-max", type=int, default=None)
    p.add_argument("--max-total", type=int, default=None, help="largest k + w")
    p.add_argument("--max-len", type=int, default=None, help="longest string for run uniqueness")
    p.add_argument("--strings", type=int, default=100)
    p.add_argument("--length", type=int, default=10**5)
    p.set_defaults(func=None)

    p = sub.add_parser("crossing", parents=[common], help="first w with negative deviation")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--w-cap", type=int, default=200)
    p.set_defaults(func=cmd_crossing)

    p = sub.add_parser("bigw-bound", parents=[common], help="large-window upper bound on density")
    _add_params(p)
    p.set_defaults(func=cmd_bigw_bound)
    return parser


def _emit(rows: list[dict[str, Any]], args) -> None:
    fmt = args.format or getattr(args, "default_format", "text")
    text = render(rows, fmt)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise ParamError("--threads must be >= 1")
        if args.command == "verify":
            results = run_suite(args)
            _emit([r.row() for r in results], args)
            return EXIT_OK if vf.all_passed(results) else EXIT_VERIFY
        _emit(args.func(args), args)
    except CapExceeded as exc:
        print(f"randmin: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParamError as exc:
        print(f"randmin: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAM
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
