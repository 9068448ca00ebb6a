"""Sup distance between F_{k:n} and the product cdf, power laws vs controls.

    python scripts/identity_sweep.py --max-n 6
"""

import argparse

from powchar import QuadratureConfig, expshape, power, sinshape, verify_identity_numeric, wiggle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--grid", type=int, default=101)
    ap.add_argument("--abs-tol", type=float, default=1e-10)
    args = ap.parse_args()
    q = QuadratureConfig(abs_tol=args.abs_tol)
    bases = [power(0.5), power(1.0), power(2.0), power(5.0), expshape(), sinshape(), wiggle()]
    pairs = [(k, n) for n in range(2, args.max_n + 1) for k in range(1, n)]
    print("base".ljust(10) + "".join(f"{k}:{n}".rjust(10) for k, n in pairs))
    for base in bases:
        row = [verify_identity_numeric(base, k, n, args.grid, q).sup_distance for k, n in pairs]
        print(base.name.ljust(10) + "".join(f"{d:10.2e}" for d in row))


if __name__ == "__main__":
    main()
