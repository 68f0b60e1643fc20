#!/usr/bin/env python3
"""Reference values for the ReLU-power arc-cosine-type kernel on the sphere.

    K_s(u) = (s+1)^2 * E_{w ~ Unif(S^{d-1})} [ (w.z)_+^s (w.z')_+^s ],   u = z.z'

Three independent evaluation routes are compared:
  1. the 1-D rotational reduction
         K_s(u) = (s+1)^2 * C(d,s) * J_s(arccos u),
         C(d,s) = (d-2) * B(s+1, (d-2)/2) / (4*pi),
         J_s(g) = int_{g-pi/2}^{pi/2} cos(phi)^s cos(phi-g)^s dphi
     (this is what the Rust implementation uses, evaluated by quadrature);
  2. closed forms for s=0 (orthant probability) and s=1 (Gaussian arc-cosine
     kernel rescaled from N(0,I) to Unif(S^{d-1}) by the moment factor 1/d);
  3. plain Monte Carlo over w ~ Unif(S^{d-1}).
"""

import math

import numpy as np
from scipy import integrate, special


def reduction(s: int, d: int, u: float) -> float:
    g = math.acos(max(-1.0, min(1.0, u)))
    c = (d - 2) * special.beta(s + 1, (d - 2) / 2.0) / (4.0 * math.pi)
    j, err = integrate.quad(
        lambda phi: math.cos(phi) ** s * math.cos(phi - g) ** s,
        g - math.pi / 2.0,
        math.pi / 2.0,
        epsabs=1e-13,
    )
    assert err < 1e-8
    return (s + 1) ** 2 * c * j


def closed_s0(d: int, u: float) -> float:
    g = math.acos(u)
    return (math.pi - g) / (2.0 * math.pi)


def closed_s1(d: int, u: float) -> float:
    g = math.acos(u)
    return (4.0 / d) * (math.sin(g) + (math.pi - g) * math.cos(g)) / (2.0 * math.pi)


def monte_carlo(s: int, d: int, u: float, n: int = 2_000_000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    w = rng.standard_normal((n, d))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    z = np.zeros(d)
    z[0] = 1.0
    zp = np.zeros(d)
    zp[0] = u
    zp[1] = math.sqrt(max(0.0, 1.0 - u * u))
    a = np.clip(w @ z, 0.0, None) ** s
    b = np.clip(w @ zp, 0.0, None) ** s
    return float((s + 1) ** 2 * (a * b).mean())


def main():
    for s in (0, 1, 2):
        for d in (3, 4, 5):
            print(f"-- s={s} d={d}")
            for u in (-0.8, -0.3, 0.0, 0.5, 0.9, 1.0):
                r = reduction(s, d, u)
                mc = monte_carlo(s, d, u)
                line = f"  u={u:+.2f}  reduction={r:.12f}  mc={mc:.6f}"
                if s == 0:
                    line += f"  closed={closed_s0(d, u):.12f}"
                if s == 1:
                    line += f"  closed={closed_s1(d, u):.12f}"
                print(line)


if __name__ == "__main__":
    main()
