"""How close DR gets to sigma^-k as w grows, with replicate standard errors.

Compares the two Monte Carlo estimators at a few window sizes; used to check
where the large-window regime actually starts.
"""

import argparse

from randmin.core import Params
from randmin.montecarlo import bigw_upper_bound, mc_density, mc_gamechanger_density, saturation_window


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigma", type=int, default=2)
    ap.add_argument("-k", type=int, default=5)
    ap.add_argument("-n", type=int, default=10**6)
    ap.add_argument("--reps", type=int, default=32)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--ws", type=int, nargs="*")
    args = ap.parse_args()
    floor = args.sigma**-args.k
    ws = args.ws or [40, 80, 120, saturation_window(args.sigma, args.k, 0.0), saturation_window(args.sigma, args.k)]
    print("     w   markup/floor      gamechanger/floor   bound/floor")
    for w in ws:
        p = Params(args.sigma, args.k, w)
        a = mc_density(p, args.n, args.reps, args.seed)
        b = mc_gamechanger_density(p, args.n, args.reps, args.seed + 1)
        print(
            f"{w:6d}   {a.mean / floor:.4f} ± {a.std_error / floor:.4f}   "
            f"{b.mean / floor:.4f} ± {b.std_error / floor:.4f}   {bigw_upper_bound(p) / floor:.4f}"
        )


if __name__ == "__main__":
    main()
