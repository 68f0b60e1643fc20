/// Degree-`j` Legendre polynomial in ambient dimension `d`, normalized so
/// that `P_j(1; d) = 1`.
///
/// These are the Gegenbauer polynomials `C_j^{(d/2−1)}` rescaled to value one
/// at the endpoint; for `d = 3` they reduce to the classical Legendre
/// polynomials and for `d = 2` to the Chebyshev polynomials `T_j`. They obey
/// the three-term recurrence
///
/// ```text
/// P_{j+1}(u) = ((2j + d − 2) u P_j(u) − j P_{j−1}(u)) / (j + d − 2)
/// ```
///
/// with `P_0 = 1`, `P_1 = u`.
///
/// # Panics
///
/// Panics if `d < 2`.
///
/// # Example
///
/// ```
/// use spectrum::legendre_dim;
/// // d = 3: classical Legendre, P_2(u) = (3u² − 1)/2
/// assert!((legendre_dim(2, 3, 0.5) - (-0.125)).abs() < 1e-15);
/// // d = 2: Chebyshev, P_3(cos θ) = cos 3θ
/// let u = 0.3f64;
/// assert!((legendre_dim(3, 2, u) - (3.0f64 * u.acos()).cos()).abs() < 1e-12);
/// ```
pub fn legendre_dim(j: usize, d: usize, u: f64) -> f64 {
    assert!(d >= 2, "ambient dimension must be at least 2");
    if j == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p_cur = u;
    for k in 1..j {
        let kf = k as f64;
        let df = d as f64;
        let p_next = ((2.0 * kf + df - 2.0) * u * p_cur - kf * p_prev) / (kf + df - 2.0);
        p_prev = p_cur;
        p_cur = p_next;
    }
    p_cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn endpoint_normalization() {
        for d in 2..=7 {
            for j in 0..10 {
                assert_abs_diff_eq!(legendre_dim(j, d, 1.0), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn parity() {
        for d in 2..=6 {
            for j in 0..8 {
                let u = 0.37;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                assert_abs_diff_eq!(
                    legendre_dim(j, d, -u),
                    sign * legendre_dim(j, d, u),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn classical_legendre_at_d3() {
        // P_4(u) = (35u⁴ − 30u² + 3)/8
        let u = 0.6f64;
        let p4 = (35.0 * u.powi(4) - 30.0 * u * u + 3.0) / 8.0;
        assert_abs_diff_eq!(legendre_dim(4, 3, u), p4, epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_at_d2() {
        let theta = 1.1f64;
        let u = theta.cos();
        for j in 0..8 {
            assert_abs_diff_eq!(
                legendre_dim(j, 2, u),
                (j as f64 * theta).cos(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn d4_matches_chebyshev_second_kind_ratio() {
        // For d = 4 the normalized polynomial is U_j(u) / (j + 1).
        let u = 0.25f64;
        let theta = u.acos();
        for j in 1..8 {
            let uj = ((j as f64 + 1.0) * theta).sin() / theta.sin();
            assert_abs_diff_eq!(legendre_dim(j, 4, u), uj / (j as f64 + 1.0), epsilon = 1e-12);
        }
    }
}
