"""Brute-force Monte Carlo oracles, independent of the package's samplers.

Checks by literal sorting of numpy uniforms that
  * Beta(k, n-k) * Beta(n, 1) has the law of Beta(k, n-k+1);
  * U * max(V1, V2) * max(W1, W2, W3) has cdf 0.875 at 0.5;
  * X_{k:n} =d Y_{k:n-1} Z_{n:n} for a Pow(alpha) base, at a few points.
"""

import math

import numpy as np
from scipy import special as sps

from powchar import OrderStatisticLaw, os_cdf, power, product_cdf


def main(N=10**6, seed=2024):
    rng = np.random.default_rng(seed)
    k, n = 2, 4
    prod = rng.beta(k, n - k, N) * rng.beta(n, 1, N)
    for t in (0.1, 0.36, 0.7):
        print(f"beta product  t={t:4}: mc={np.mean(prod <= t):.5f}  exact={sps.betainc(k, n - k + 1, t):.5f}")

    chain = rng.random(N) * rng.random((N, 2)).max(axis=1) * rng.random((N, 3)).max(axis=1)
    se = math.sqrt(0.875 * 0.125 / N)
    print(f"chain U*V2*W3 at 0.5: mc={np.mean(chain <= 0.5):.5f} +- {se:.5f}  exact=0.875")

    alpha, k, n = 2.0, 2, 5
    u = lambda shape: rng.random(shape) ** (1 / alpha)
    lhs = np.sort(u((N, n)), axis=1)[:, k - 1]
    rhs = np.sort(u((N, n - 1)), axis=1)[:, k - 1] * u((N, n)).max(axis=1)
    base = power(alpha)
    for y in (0.3, 0.6, 0.9):
        print(f"Pow(2) k=2 n=5 y={y}: lhs={np.mean(lhs <= y):.5f} rhs={np.mean(rhs <= y):.5f} "
              f"F_k:n={os_cdf(OrderStatisticLaw(k, n, base), y):.5f} product={product_cdf(k, n, base, y):.5f}")


if __name__ == "__main__":
    main()
