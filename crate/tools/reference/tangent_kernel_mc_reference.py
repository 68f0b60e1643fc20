#!/usr/bin/env python3
"""Monte-Carlo check of the infinite-width tangent kernels used in tests.

Architectures (mirrored pairs so the width-2m net is zero at init):

  quadratic: f(z) = (1/sqrt(2m)) sum_{j=1}^{2m} b_j (w_j.z)^2,
             w_j ~ Unif(S^{d-1});     limit K(u) = (4/d) u^2
  sine:      f(z) = (1/sqrt(m)) sum_{j=1}^{2m} b_j sin(w_j.z + t_j),
             w_j ~ N(0, I_d), t_j ~ Unif[0,2pi);  limit K(u) = u exp(u-1)

Tangent features are gradients w.r.t. the inner weights w only; b is frozen.
"""

import math

import numpy as np


def sphere(rng, m, d):
    w = rng.standard_normal((m, d))
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def pair(u, d):
    z = np.zeros(d)
    z[0] = 1.0
    zp = np.zeros(d)
    zp[0] = u
    zp[1] = math.sqrt(max(0.0, 1.0 - u * u))
    return z, zp


def quad_km(rng, m, d, u):
    # K_m(z,z') = (1/(2m)) * sum_{j=1}^{2m} 4 (w_j.z)(w_j.z') (z.z')
    # mirrored pair repeats each w, so sum = 2 * sum over the m base neurons
    w = sphere(rng, m, d)
    z, zp = pair(u, d)
    return float((4.0 / (2 * m)) * 2.0 * ((w @ z) * (w @ zp)).sum() * u)


def sine_km(rng, m, d, u):
    # K_m(z,z') = (1/m) * sum_{j=1}^{2m} cos(w_j.z+t_j) cos(w_j.z'+t_j) (z.z')
    w = rng.standard_normal((m, d))
    t = rng.uniform(0.0, 2.0 * math.pi, size=m)
    z, zp = pair(u, d)
    s = (np.cos(w @ z + t) * np.cos(w @ zp + t)).sum()
    return float((1.0 / m) * 2.0 * s * u)


def main():
    rng = np.random.default_rng(7)
    m = 400_000
    for d in (3, 5):
        print(f"-- d={d}")
        for u in (-0.7, 0.0, 0.4, 1.0):
            q = quad_km(rng, m, d, u)
            s = sine_km(rng, m, d, u)
            print(
                f"  u={u:+.1f}: quad mc={q:+.6f} limit={(4.0 / d) * u * u:+.6f} | "
                f"sine mc={s:+.6f} limit={u * math.exp(u - 1.0):+.6f}"
            )


if __name__ == "__main__":
    main()
