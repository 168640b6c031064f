"""First w with DFR < 2 and the number of sign changes of the deviation, per alphabet."""

import argparse

from randmin.closed_form import find_crossing


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigma-max", type=int, default=20)
    ap.add_argument("--w-cap", type=int, default=400)
    args = ap.parse_args()
    print("sigma  first_negative  sign_changes")
    for sigma in range(2, args.sigma_max + 1):
        c = find_crossing(sigma, args.w_cap)
        print(f"{sigma:5d}  {str(c.first_negative):>14}  {c.sign_changes:12d}")


if __name__ == "__main__":
    main()
