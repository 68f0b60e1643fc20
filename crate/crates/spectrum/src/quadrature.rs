use nalgebra::DMatrix;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// A Gauss–Jacobi quadrature rule for the symmetric weight `(1 − u²)^a` on
/// `[−1, 1]`, built by the Golub–Welsch eigenvalue method.
///
/// The monic orthogonal polynomials for this weight satisfy
/// `p_{k+1} = u p_k − b_k p_{k−1}` with
///
/// ```text
/// b_1 = 1 / (2a + 3),
/// b_k = k (k + 2a) / ((2k + 2a + 1)(2k + 2a − 1)),   k ≥ 2,
/// ```
///
/// so the Jacobi matrix is symmetric tridiagonal with zero diagonal and
/// off-diagonals `√b_k`; its eigenvalues are the nodes and the squared first
/// eigenvector components (times the total mass `μ₀ = √π Γ(a+1)/Γ(a+3/2)`)
/// are the weights.
///
/// Valid for `a > −1`, which covers every sphere dimension `d ≥ 2` through
/// `a = (d − 3)/2`.
///
/// # Example
///
/// ```
/// use spectrum::GaussJacobi;
/// // a = 0 is Gauss–Legendre: ∫ u² du over [−1,1] is 2/3, exact at n = 2
/// let rule = GaussJacobi::new(0.0, 2).unwrap();
/// let v: f64 = rule.integrate(|u| u * u);
/// assert!((v - 2.0 / 3.0).abs() < 1e-14);
/// ```
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    a: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussJacobi {
    /// Build an `n`-point rule for exponent `a > −1`.
    pub fn new(a: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || a <= -1.0 {
            return Err(Error::InvalidParameter(format!(
                "Jacobi exponent must satisfy a > −1, got {a}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("quadrature order must be positive".into()));
        }
        // total mass μ₀ = ∫ (1−u²)^a du = √π Γ(a+1)/Γ(a+3/2)
        let mu0 = (std::f64::consts::PI.ln() * 0.5 + ln_gamma(a + 1.0) - ln_gamma(a + 1.5)).exp();
        if n == 1 {
            return Ok(Self { a, nodes: vec![0.0], weights: vec![mu0] });
        }

        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 1..n {
            let kf = k as f64;
            // b_1 written in cancelled form so a = −1/2 (d = 2) stays finite
            let bk = if k == 1 {
                1.0 / (2.0 * a + 3.0)
            } else {
                kf * (kf + 2.0 * a)
                    / ((2.0 * kf + 2.0 * a + 1.0) * (2.0 * kf + 2.0 * a - 1.0))
            };
            let off = bk.sqrt();
            jac[(k, k - 1)] = off;
            jac[(k - 1, k)] = off;
        }
        let eig = jac.symmetric_eigen();
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let node = eig.eigenvalues[i];
                let first = eig.eigenvectors[(0, i)];
                (node, mu0 * first * first)
            })
            .collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        Ok(Self {
            a,
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn exponent(&self) -> f64 {
        self.a
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_{−1}^{1} f(u) (1−u²)^a du` by the rule.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_three_point_rule() {
        // classical nodes ±√(3/5), 0 and weights 5/9, 8/9
        // (matches scipy.special.roots_jacobi(3, 0, 0))
        let r = GaussJacobi::new(0.0, 3).unwrap();
        assert_abs_diff_eq!(r.nodes()[0], -0.774596669241483, epsilon = 1e-12);
        assert_abs_diff_eq!(r.nodes()[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.nodes()[2], 0.774596669241483, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights()[0], 5.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights()[1], 8.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn a_one_rule_matches_reference() {
        // reference values computed with scipy.special.roots_jacobi(4, 1, 1)
        let r = GaussJacobi::new(1.0, 4).unwrap();
        let nodes = [
            -0.765055323929465,
            -0.285231516480645,
            0.285231516480645,
            0.765055323929465,
        ];
        let weights = [
            0.156949912595694,
            0.509716754070973,
            0.509716754070973,
            0.156949912595694,
        ];
        for i in 0..4 {
            assert_abs_diff_eq!(r.nodes()[i], nodes[i], epsilon = 1e-12);
            assert_abs_diff_eq!(r.weights()[i], weights[i], epsilon = 1e-12);
        }
        // ∫ u² (1−u²) du = 4/15 and ∫ u⁴ (1−u²) du = 4/35
        assert_abs_diff_eq!(r.integrate(|u| u * u), 4.0 / 15.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.integrate(|u| u.powi(4)), 4.0 / 35.0, epsilon = 1e-13);
    }

    #[test]
    fn a_half_rule_matches_reference() {
        // reference values computed with scipy.special.roots_jacobi(4, 0.5, 0.5)
        let r = GaussJacobi::new(0.5, 4).unwrap();
        assert_abs_diff_eq!(r.nodes()[0], -0.809016994374947, epsilon = 1e-12);
        assert_abs_diff_eq!(r.nodes()[1], -0.309016994374947, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights()[0], 0.217078713422706, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights()[1], 0.568319449974742, epsilon = 1e-12);
        // total mass π/2
        let total: f64 = r.weights().iter().sum();
        assert_abs_diff_eq!(total, std::f64::consts::PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn chebyshev_rule_at_a_minus_half() {
        // a = −1/2 (sphere dimension d = 2): nodes cos((2k−1)π/2n), equal
        // weights π/n (matches scipy.special.roots_jacobi(4, -0.5, -0.5))
        let r = GaussJacobi::new(-0.5, 4).unwrap();
        assert_abs_diff_eq!(r.nodes()[0], -0.923879532511287, epsilon = 1e-12);
        assert_abs_diff_eq!(r.nodes()[1], -0.382683432365090, epsilon = 1e-12);
        for w in r.weights() {
            assert_abs_diff_eq!(*w, std::f64::consts::PI / 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn smooth_integrand_reference_value() {
        // ∫_{−1}^{1} u e^{u−1} du = 2 e^{−2}
        let r = GaussJacobi::new(0.0, 64).unwrap();
        let v = r.integrate(|u| u * (u - 1.0).exp());
        assert_abs_diff_eq!(v, 2.0 * (-2.0f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn rejects_bad_exponent_and_order() {
        assert!(GaussJacobi::new(-1.0, 4).is_err());
        assert!(GaussJacobi::new(f64::NAN, 4).is_err());
        assert!(GaussJacobi::new(0.0, 0).is_err());
    }
}
