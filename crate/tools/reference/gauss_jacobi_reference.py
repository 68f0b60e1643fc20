#!/usr/bin/env python3
"""Reference Gauss-Jacobi nodes/weights for the symmetric weight (1-u^2)^a.

The Rust `spectrum` crate builds these rules from scratch via Golub-Welsch on
the Jacobi-matrix recurrence; this script prints scipy's values
(scipy.special.roots_jacobi with alpha = beta = a) for spot-freezing.

The weight exponent a = (d-3)/2 arises when integrating over the latitude of
the unit sphere S^{d-1}.
"""

import numpy as np
from scipy import special


def print_rule(a: float, n: int):
    x, w = special.roots_jacobi(n, a, a)
    print(f"a={a:+.1f} n={n}")
    for xi, wi in zip(x, w):
        print(f"  node {xi:+.15f}   weight {wi:.15f}")
    print(f"  sum(weights) = {w.sum():.15f}")
    # moment checks: int u^2 w(u) du and int u^4 w(u) du
    m2 = float((w * x**2).sum())
    m4 = float((w * x**4).sum())
    print(f"  int u^2 = {m2:.15f}   int u^4 = {m4:.15f}")


def main():
    # d=3 -> a=0 (Legendre), d=5 -> a=1, d=4 -> a=1/2, d=2 -> a=-1/2 (Chebyshev)
    print_rule(0.0, 3)
    print_rule(1.0, 4)
    print_rule(0.5, 4)
    print_rule(-0.5, 4)
    # larger rule used as the default order sanity check
    x, w = special.roots_jacobi(64, 0.0, 0.0)
    val = float((w * np.exp(x - 1.0) * x).sum())
    print(f"\nint_-1^1 u e^(u-1) du  (64-node Legendre) = {val:.15f}")
    print(f"closed form 2 e^-2                         = {2 * np.exp(-2.0):.15f}")


if __name__ == "__main__":
    main()
