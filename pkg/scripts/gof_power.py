"""Rejection rate of power_gof over seeds, for power laws and the non-power controls.

    python scripts/gof_power.py --sizes 2000 10000 100000 --seeds 50
"""

import argparse

from powchar import McConfig, expshape, power, power_gof, sample, sinshape, wiggle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2000, 10_000, 100_000])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--level", type=float, default=0.05)
    args = ap.parse_args()
    laws = [power(0.5), power(1.7), power(4.0), expshape(), sinshape(), wiggle()]
    print("law".ljust(10) + "".join(f"N={N}".rjust(12) for N in args.sizes))
    for base in laws:
        rates = []
        for N in args.sizes:
            rejected = sum(
                not power_gof(sample(base, McConfig(N, s)), args.k, args.n, McConfig(2**62, s), args.level).consistent
                for s in range(args.seeds))
            rates.append(rejected / args.seeds)
        print(base.name.ljust(10) + "".join(f"{r:12.2f}" for r in rates))


if __name__ == "__main__":
    main()
