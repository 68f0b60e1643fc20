use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::gegenbauer::legendre_dim;
use crate::quadrature::GaussJacobi;

/// Surface area `|S^{ℓ−1}| = 2 π^{ℓ/2} / Γ(ℓ/2)` of the unit sphere in `R^ℓ`.
///
/// # Example
///
/// ```
/// use spectrum::sphere_surface;
/// assert!((sphere_surface(2) - 2.0 * std::f64::consts::PI).abs() < 1e-12);
/// assert!((sphere_surface(3) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
/// ```
pub fn sphere_surface(ell: usize) -> f64 {
    assert!(ell >= 1, "sphere must live in at least one dimension");
    let l = ell as f64;
    (std::f64::consts::LN_2 + (l / 2.0) * std::f64::consts::PI.ln() - ln_gamma(l / 2.0)).exp()
}

/// Controls for adaptive quadrature: start at `initial_order` points and
/// double until two consecutive orders agree within `tol` (absolute), up to
/// `max_order`.
#[derive(Debug, Clone)]
pub struct QuadratureSettings {
    pub initial_order: usize,
    pub max_order: usize,
    pub tol: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { initial_order: 64, max_order: 1024, tol: 1e-8 }
    }
}

/// An eigenvalue together with the quadrature order that produced it.
#[derive(Debug, Clone, Copy)]
pub struct Eigenvalue {
    pub value: f64,
    pub order: usize,
}

/// Degree-`j` eigenvalue of the kernel `K(z, z') = k(⟨z, z'⟩)` on `S^{d−1}`:
///
/// ```text
/// ρ_j = (|S^{d−2}| / |S^{d−1}|) ∫_{−1}^{1} k(u) P_j(u; d) (1 − u²)^{(d−3)/2} du
/// ```
///
/// with multiplicity `N(d, j)` (see [`crate::multiplicity`]). The integral is
/// evaluated by Gauss–Jacobi quadrature with order doubling until two
/// consecutive orders agree within `settings.tol`.
///
/// # Example
///
/// ```
/// use spectrum::{eigenvalue, QuadratureSettings};
/// // k(u) = u on S²: only the degree-1 harmonic survives, ρ₁ = 1/3
/// let s = QuadratureSettings::default();
/// let rho1 = eigenvalue(&|u| u, 3, 1, &s).unwrap();
/// assert!((rho1.value - 1.0 / 3.0).abs() < 1e-12);
/// ```
pub fn eigenvalue(
    k: &dyn Fn(f64) -> f64,
    d: usize,
    j: usize,
    settings: &QuadratureSettings,
) -> Result<Eigenvalue> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "ambient dimension must be at least 2, got {d}"
        )));
    }
    let a = (d as f64 - 3.0) / 2.0;
    let ratio = sphere_surface(d - 1) / sphere_surface(d);
    let f = |u: f64| k(u) * legendre_dim(j, d, u);
    let integral = adaptive_integral(&f, a, settings)?;
    Ok(Eigenvalue { value: ratio * integral.0, order: integral.1 })
}

/// Same eigenvalue through the derivative (Rodrigues) route:
///
/// ```text
/// ∫ k(u) P_j(u; d) (1−u²)^{(d−3)/2} du
///   = R_j(d) ∫ k⁽ʲ⁾(u) (1−u²)^{(2j+d−3)/2} du,
/// R_j(d) = 2^{−j} Γ((d−1)/2) / Γ((2j+d−1)/2),
/// ```
///
/// which trades the oscillatory polynomial factor for the `j`-th derivative
/// of the kernel profile. Useful as an independent cross-check whenever that
/// derivative is available in closed form.
pub fn eigenvalue_via_derivative(
    k_deriv_j: &dyn Fn(f64) -> f64,
    d: usize,
    j: usize,
    settings: &QuadratureSettings,
) -> Result<Eigenvalue> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "ambient dimension must be at least 2, got {d}"
        )));
    }
    let df = d as f64;
    let jf = j as f64;
    let log_r = -jf * std::f64::consts::LN_2 + ln_gamma((df - 1.0) / 2.0)
        - ln_gamma((2.0 * jf + df - 1.0) / 2.0);
    let r = log_r.exp();
    let a = jf + (df - 3.0) / 2.0;
    let ratio = sphere_surface(d - 1) / sphere_surface(d);
    let integral = adaptive_integral(k_deriv_j, a, settings)?;
    Ok(Eigenvalue { value: ratio * r * integral.0, order: integral.1 })
}

/// `∫ f(u) (1−u²)^a du` with order doubling; returns `(value, order)`.
fn adaptive_integral(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    settings: &QuadratureSettings,
) -> Result<(f64, usize)> {
    let mut order = settings.initial_order.max(2);
    let mut prev = GaussJacobi::new(a, order)?.integrate(f);
    let mut last_diff = f64::INFINITY;
    while order * 2 <= settings.max_order {
        let next_order = order * 2;
        let cur = GaussJacobi::new(a, next_order)?.integrate(f);
        last_diff = (cur - prev).abs();
        if last_diff <= settings.tol {
            return Ok((cur, next_order));
        }
        prev = cur;
        order = next_order;
    }
    if last_diff.is_infinite() {
        // a single order fit under the cap; compare against half the order
        // so the agreement claim is still evidence-based
        let half = GaussJacobi::new(a, (order / 2).max(1))?.integrate(f);
        last_diff = (prev - half).abs();
        if last_diff <= settings.tol {
            return Ok((prev, order));
        }
    }
    Err(Error::QuadratureNotConverged { achieved: last_diff, order, target: settings.tol })
}
