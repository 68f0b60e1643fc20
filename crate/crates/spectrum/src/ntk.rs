use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use statrs::function::beta::beta;

use crate::decay::DecayClass;
use crate::error::{Error, Result};
use crate::quadrature::GaussJacobi;

/// Closed-form infinite-width tangent kernels of two-layer networks on the
/// unit sphere `S^{d−1}`, as scalar profiles `k(u)` of the inner product.
///
/// | Activation | Profile `k(u)` |
/// |------------|----------------|
/// | squared, `act(v) = v²`, inner rows uniform on the sphere | `(4/d) u²` |
/// | sine with random phase, `act(v) = sin(v + θ)`, Gaussian rows | `u e^{u−1}` |
/// | powered rectifier, `act(v) = max(v,0)^{s+1}`, sphere rows | `(s+1)² C(d,s) J_s(arccos u)` |
///
/// with `C(d,s) = (d−2) B(s+1, (d−2)/2) / 4π` (and `1/2π` at `d = 2`) and
/// `J_s(γ) = ∫_{γ−π/2}^{π/2} cosˢφ · cosˢ(φ−γ) dφ`, the reduction of the
/// sphere average to the plane spanned by the two inputs.
///
/// # Example
///
/// ```
/// use spectrum::ClosedFormKernel;
/// let k = ClosedFormKernel::Quadratic { d: 3 };
/// assert!((k.eval(0.5) - (4.0 / 3.0) * 0.25).abs() < 1e-14);
/// let r = ClosedFormKernel::ReluPower { s: 1, d: 3 };
/// assert!((r.eval(1.0) - 2.0 / 3.0).abs() < 1e-10);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormKernel {
    /// Squared activation in ambient dimension `d`.
    Quadratic { d: usize },
    /// Sine activation with uniform random phase (profile is dimension-free).
    Sine,
    /// Rectifier power `max(v, 0)^{s+1}` in ambient dimension `d`.
    ReluPower { s: u32, d: usize },
}

impl ClosedFormKernel {
    /// Identifier used in manifests and CLI output (`quadratic`, `sine`,
    /// `relu_power:s`).
    pub fn name(&self) -> String {
        match self {
            Self::Quadratic { .. } => "quadratic".to_string(),
            Self::Sine => "sine".to_string(),
            Self::ReluPower { s, .. } => format!("relu_power:{s}"),
        }
    }

    /// Parse a CLI identifier (inverse of [`ClosedFormKernel::name`]),
    /// attaching the ambient dimension where the profile needs it.
    pub fn parse(name: &str, d: usize) -> Result<Self> {
        if name == "quadratic" {
            return Ok(Self::Quadratic { d });
        }
        if name == "sine" {
            return Ok(Self::Sine);
        }
        if let Some(s) = name.strip_prefix("relu_power:") {
            let s: u32 = s
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad rectifier power in {name:?}")))?;
            return Ok(Self::ReluPower { s, d });
        }
        Err(Error::InvalidParameter(format!(
            "unknown activation {name:?} (expected quadratic, sine, or relu_power:s)"
        )))
    }

    /// Evaluate the profile at `u = ⟨z, z'⟩ ∈ [−1, 1]`.
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Self::Quadratic { d } => (4.0 / *d as f64) * u * u,
            Self::Sine => u * (u - 1.0).exp(),
            Self::ReluPower { s, d } => relu_profile(*s, *d, u),
        }
    }

    /// The profile as a shared closure (convenient for kernel constructors).
    pub fn profile(&self) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
        let k = self.clone();
        Arc::new(move |u| k.eval(u))
    }

    /// The eigenvalue-decay class this kernel is known to inhabit.
    ///
    /// * squared activation: a finite spectrum of `d(d+1)/2` harmonics;
    /// * sine activation: exponential decay with exponent `1/d` in the
    ///   sorted eigenvalue index;
    /// * rectifier power `s`: polynomial decay with exponent
    ///   `γ = 1 + (1+2s)/(d−1)` and eigenfunction growth `τ = (d−2)/(2d+4s)`.
    pub fn canonical_decay(&self) -> Result<DecayClass> {
        match self {
            Self::Quadratic { d } => DecayClass::finite((*d as u64) * (*d as u64 + 1) / 2),
            Self::Sine => {
                Err(Error::InvalidParameter(
                    "sine decay exponent depends on the ambient dimension; use canonical_decay_in"
                        .into(),
                ))
            }
            Self::ReluPower { s, d } => DecayClass::relu_tangent(*s, *d),
        }
    }

    /// Like [`ClosedFormKernel::canonical_decay`], with the ambient dimension
    /// supplied for profiles that do not carry one.
    pub fn canonical_decay_in(&self, d: usize) -> Result<DecayClass> {
        match self {
            Self::Sine => DecayClass::exponential(1.0 / d as f64),
            other => other.canonical_decay(),
        }
    }
}

/// `C(d, s)`: the constant of the planar reduction of the sphere average.
fn plane_constant(s: u32, d: usize) -> f64 {
    use std::f64::consts::PI;
    if d == 2 {
        1.0 / (2.0 * PI)
    } else {
        (d as f64 - 2.0) * beta(s as f64 + 1.0, (d as f64 - 2.0) / 2.0) / (4.0 * PI)
    }
}

/// `J_s(γ) = ∫_{γ−π/2}^{π/2} cosˢφ cosˢ(φ−γ) dφ` by 128-node Gauss–Legendre
/// (the integrand is smooth on the interval).
fn j_integral(s: u32, gamma: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    let lo = gamma - FRAC_PI_2;
    let hi = FRAC_PI_2;
    if hi <= lo {
        return 0.0;
    }
    let rule = GaussJacobi::new(0.0, 128).expect("fixed Legendre rule");
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let s = s as i32;
    half * rule.integrate(|x| {
        let phi = mid + half * x;
        phi.cos().powi(s) * (phi - gamma).cos().powi(s)
    })
}

fn relu_profile(s: u32, d: usize, u: f64) -> f64 {
    let gamma = u.clamp(-1.0, 1.0).acos();
    let sp1 = (s as f64 + 1.0).powi(2);
    sp1 * plane_constant(s, d) * j_integral(s, gamma)
}

/// Monte-Carlo estimate of the rectifier-power kernel
/// `(s+1)² E_w[(w·z)₊ˢ (w·z')₊ˢ]`, `w` uniform on `S^{d−1}`; returns
/// `(mean, standard_error)`. Deterministic in the seed.
///
/// This is the brute-force fallback and cross-check for [`ClosedFormKernel::ReluPower`].
pub fn relu_kernel_mc(s: u32, d: usize, u: f64, samples: usize, seed: u64) -> (f64, f64) {
    assert!(d >= 2, "need at least two dimensions");
    assert!(samples >= 2, "need at least two samples");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let u = u.clamp(-1.0, 1.0);
    let v = (1.0 - u * u).sqrt();
    let sp1 = (s as f64 + 1.0).powi(2);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        // standard normal direction, normalized
        let w: Vec<f64> = (0..d)
            .map(|_| {
                // Box–Muller from uniform pairs
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        // z = e₁, z' = u e₁ + v e₂; (x)₊ˢ with the s = 0 case an indicator
        let proj_a = w[0] / norm;
        let proj_b = (u * w[0] + v * w[1]) / norm;
        let a = if proj_a > 0.0 { proj_a.powi(s as i32) } else { 0.0 };
        let b = if proj_b > 0.0 { proj_b.powi(s as i32) } else { 0.0 };
        let val = sp1 * a * b;
        sum += val;
        sum_sq += val * val;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) / (n - 1.0);
    (mean, var.sqrt())
}
