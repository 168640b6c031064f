"""Density against w for one (sigma, k): exact where possible, Monte Carlo beyond."""

import argparse
from pathlib import Path

from randmin.cli import plot_rows
from randmin.montecarlo import saturation_window
from randmin.report import render


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigma", type=int, default=2)
    ap.add_argument("-k", type=int, default=5)
    ap.add_argument("--w-max", type=int, default=300)
    ap.add_argument("-n", type=int, default=10**6)
    ap.add_argument("--reps", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    rows = plot_rows(args.sigma, args.k, args.w_max, args.n, args.reps, args.seed)
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    path = out / f"curve_sigma{args.sigma}_k{args.k}.csv"
    path.write_text(render(rows, "csv"))
    print(f"wrote {path}")

    floor = args.sigma**-args.k
    w_sat = saturation_window(args.sigma, args.k, g=0.0)
    for r in rows:
        dr = r["dr_closed_form"] or r["dr_exact"] or r["dr_mc"]
        if r["w"] in (1, args.k, 2 * args.k, 80, w_sat) or r["w"] == args.w_max:
            print(f"  w={r['w']:4d}  DR={dr:.6f}  (w+1)DR={dr * (r['w'] + 1):.4f}  DR*sigma^k={dr / floor:.4f}")


if __name__ == "__main__":
    main()
