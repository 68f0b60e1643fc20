#!/usr/bin/env python3
"""Reference eigenvalues of inner-product kernels on the unit sphere.

Independent oracle for the Rust `spectrum` crate's Funk-Hecke machinery:
computes eigenvalues with scipy's adaptive quadrature and classical
orthogonal-polynomial evaluations, so the Rust Gauss-Jacobi/Gegenbauer
pipeline can be tested against a wholly separate implementation.

The eigenvalue of degree j of the kernel K(z,z') = k(<z,z'>) on S^{d-1} is

    rho_j = (|S^{d-2}| / |S^{d-1}|) * int_{-1}^{1} k(u) P_j(u; d) (1-u^2)^{(d-3)/2} du

with multiplicity N(d,j), where P_j(.; d) is the degree-j Legendre
(Gegenbauer, normalized to P_j(1)=1) polynomial in ambient dimension d.
"""

import math

import numpy as np
from scipy import integrate, special


def sphere_surface(ell: int) -> float:
    """|S^{ell-1}| = 2 pi^{ell/2} / Gamma(ell/2)."""
    return 2.0 * math.pi ** (ell / 2.0) / special.gamma(ell / 2.0)


def legendre_dim(j: int, d: int, u: np.ndarray) -> np.ndarray:
    """Degree-j Legendre polynomial in dimension d, normalized P_j(1;d)=1.

    Three-term recurrence:
        P_{j+1} = ((2j+d-2) u P_j - j P_{j-1}) / (j+d-2)
    """
    p_prev = np.ones_like(u)
    if j == 0:
        return p_prev
    p_cur = u.copy() if isinstance(u, np.ndarray) else np.array(u)
    for k in range(1, j):
        p_next = ((2 * k + d - 2) * u * p_cur - k * p_prev) / (k + d - 2)
        p_prev, p_cur = p_cur, p_next
    return p_cur


def multiplicity(d: int, j: int) -> int:
    """N(d,j) = (2j+d-2) (d+j-3)! / (j! (d-2)!), with N(d,0)=1."""
    if j == 0:
        return 1
    if d == 2:
        return 2
    num = (2 * j + d - 2) * math.factorial(d + j - 3)
    den = math.factorial(j) * math.factorial(d - 2)
    assert num % den == 0
    return num // den


def eigenvalue(kfun, d: int, j: int) -> float:
    ratio = sphere_surface(d - 1) / sphere_surface(d)
    alpha = (d - 3) / 2.0

    def integrand(u):
        return kfun(u) * legendre_dim(j, d, np.asarray(u)) * (1.0 - u * u) ** alpha

    val, err = integrate.quad(integrand, -1.0, 1.0, epsabs=1e-13, epsrel=1e-13)
    assert err < 1e-9, (j, err)
    return ratio * val


def main():
    print("== multiplicities N(d,j) ==")
    for d in (2, 3, 4, 5, 6):
        row = [multiplicity(d, j) for j in range(7)]
        print(f"d={d}: {row}")

    print("\n== quadratic kernel k(u) = (4/d) u^2 ==")
    for d in (3, 4, 5):
        k = lambda u, d=d: (4.0 / d) * u * u
        vals = [eigenvalue(k, d, j) for j in range(6)]
        print(f"d={d}: " + "  ".join(f"rho_{j}={v:.12f}" for j, v in enumerate(vals)))
        total = sum(v * multiplicity(d, j) for j, v in enumerate(vals))
        print(f"      sum_j rho_j N(d,j) = {total:.12f}  (k(1) = {4.0 / d:.12f})")
        nonzero = sum(multiplicity(d, j) for j, v in enumerate(vals) if abs(v) > 1e-9)
        print(f"      nonzero count (with multiplicity) = {nonzero},  d(d+1)/2 = {d * (d + 1) // 2}")

    print("\n== sine-architecture kernel k(u) = u exp(u-1) ==")
    for d in (3, 4):
        k = lambda u: u * np.exp(u - 1.0)
        vals = [eigenvalue(k, d, j) for j in range(8)]
        print(f"d={d}: " + "  ".join(f"rho_{j}={v:.12f}" for j, v in enumerate(vals)))
        total = sum(v * multiplicity(d, j) for j, v in enumerate(vals))
        print(f"      partial sum_j rho_j N(d,j) = {total:.12f}  (k(1) = 1)")

    print("\n== exp kernel k(u) = exp(u-1), d=3 (decay reference) ==")
    k = lambda u: np.exp(u - 1.0)
    vals = [eigenvalue(k, 3, j) for j in range(8)]
    print("d=3: " + "  ".join(f"rho_{j}={v:.12e}" for j, v in enumerate(vals)))


if __name__ == "__main__":
    main()
