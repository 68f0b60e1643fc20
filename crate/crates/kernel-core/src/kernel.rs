use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

type EvalFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;
type FeatureFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A positive-definite kernel `k(x, y)` as a shared closure.
///
/// Kernels are cheap to clone (the closure is behind an [`Arc`]) and may
/// optionally expose an explicit feature map `φ` with `k(x,y) = ⟨φ(x),φ(y)⟩`,
/// which unlocks the primal (feature-space) regression route.
///
/// # Example
///
/// ```
/// use kernel_core::Kernel;
/// let k = Kernel::linear();
/// assert_eq!(k.eval(&[1.0, 2.0], &[3.0, 4.0]), 11.0);
/// assert_eq!(k.features(&[1.0, 2.0]).unwrap(), vec![1.0, 2.0]);
/// ```
#[derive(Clone)]
pub struct Kernel {
    name: String,
    eval: Arc<EvalFn>,
    features: Option<Arc<FeatureFn>>,
    feature_dim: Option<usize>,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("name", &self.name)
            .field("feature_dim", &self.feature_dim)
            .finish()
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len(), "kernel arguments must share a dimension");
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl Kernel {
    /// Build a kernel from an arbitrary evaluator closure.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            features: None,
            feature_dim: None,
        }
    }

    /// Attach an explicit feature map `φ` of output dimension `dim` with
    /// `k(x,y) = ⟨φ(x), φ(y)⟩`. Enables the primal regression route.
    pub fn with_features(
        mut self,
        dim: usize,
        features: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.features = Some(Arc::new(features));
        self.feature_dim = Some(dim);
        self
    }

    /// The plain inner-product kernel `k(x,y) = ⟨x,y⟩` with the identity
    /// feature map.
    pub fn linear() -> Self {
        Kernel::new("linear", dot).with_features_identity()
    }

    fn with_features_identity(mut self) -> Self {
        self.features = Some(Arc::new(|x: &[f64]| x.to_vec()));
        self.feature_dim = None; // dimension follows the input
        self
    }

    /// Squared-exponential kernel `exp(−‖x−y‖² / (2ℓ²))`.
    pub fn squared_exponential(lengthscale: f64) -> Self {
        assert!(lengthscale > 0.0, "lengthscale must be positive");
        let inv = 1.0 / (2.0 * lengthscale * lengthscale);
        Kernel::new(format!("squared_exponential(l={lengthscale})"), move |x, y| {
            let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
            (-d2 * inv).exp()
        })
    }

    /// Matérn kernel with smoothness `ν ∈ {1/2, 3/2, 5/2}` (the closed-form
    /// members) and the given lengthscale.
    pub fn matern(nu_times_two: u32, lengthscale: f64) -> Result<Self> {
        assert!(lengthscale > 0.0, "lengthscale must be positive");
        let l = lengthscale;
        let eval: Arc<EvalFn> = match nu_times_two {
            1 => Arc::new(move |x: &[f64], y: &[f64]| {
                let r = dist(x, y) / l;
                (-r).exp()
            }),
            3 => Arc::new(move |x: &[f64], y: &[f64]| {
                let r = 3.0_f64.sqrt() * dist(x, y) / l;
                (1.0 + r) * (-r).exp()
            }),
            5 => Arc::new(move |x: &[f64], y: &[f64]| {
                let r = 5.0_f64.sqrt() * dist(x, y) / l;
                (1.0 + r + r * r / 3.0) * (-r).exp()
            }),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "matern smoothness 2ν must be 1, 3 or 5, got {other}"
                )))
            }
        };
        Ok(Self {
            name: format!("matern(2nu={nu_times_two},l={lengthscale})"),
            eval,
            features: None,
            feature_dim: None,
        })
    }

    /// A dot-product kernel `k(x,y) = g(⟨x,y⟩)`.
    ///
    /// This is the natural family on the unit sphere, where every rotation-
    /// invariant kernel has this form.
    pub fn from_dot_product(
        name: impl Into<String>,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Kernel::new(name, move |x, y| g(dot(x, y)))
    }

    /// The tangent kernel of an infinitely wide two-layer network with a
    /// squared activation on inputs in `R^d`: `k(x,y) = (4/d) ⟨x,y⟩²`.
    ///
    /// Carries the minimal explicit feature map of dimension `d(d+1)/2`
    /// (scaled upper triangle of `x xᵀ`), so both regression routes apply.
    pub fn quadratic_tangent(d: usize) -> Self {
        assert!(d > 0, "input dimension must be positive");
        let scale = 2.0 / (d as f64).sqrt();
        let p = d * (d + 1) / 2;
        Kernel::new(format!("quadratic_tangent(d={d})"), move |x, y| {
            let u = dot(x, y);
            (4.0 / d as f64) * u * u
        })
        .with_features(p, move |x: &[f64]| {
            assert_eq!(x.len(), d, "point dimension must match kernel dimension");
            let mut phi = Vec::with_capacity(p);
            for i in 0..d {
                phi.push(scale * x[i] * x[i]);
                for j in (i + 1)..d {
                    phi.push(scale * std::f64::consts::SQRT_2 * x[i] * x[j]);
                }
            }
            phi
        })
    }

    /// Human-readable kernel name (used in run manifests).
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluate `k(x, y)`.
    #[inline]
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        (self.eval)(x, y)
    }

    /// Explicit features `φ(x)` if this kernel carries a feature map.
    pub fn features(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.features.as_ref().map(|f| f(x))
    }

    /// Whether an explicit feature map is available.
    pub fn has_features(&self) -> bool {
        self.features.is_some()
    }

    /// Declared feature dimension, when fixed. The identity map of
    /// [`Kernel::linear`] reports `None` (it follows the input dimension).
    pub fn feature_dim(&self) -> Option<usize> {
        self.feature_dim
    }

    /// Dense Gram matrix `[k(xᵢ, xⱼ)]` of a point set.
    pub fn gram(&self, points: &[Vec<f64>]) -> DMatrix<f64> {
        let n = points.len();
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = self.eval(&points[i], &points[j]);
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn linear_kernel_is_dot_product() {
        let k = Kernel::linear();
        assert_abs_diff_eq!(k.eval(&[1.0, -2.0, 3.0], &[4.0, 5.0, -6.0]), -24.0);
    }

    #[test]
    fn squared_exponential_is_one_on_diagonal_and_symmetric() {
        let k = Kernel::squared_exponential(0.7);
        let x = [0.3, -1.2];
        let y = [1.0, 0.4];
        assert_abs_diff_eq!(k.eval(&x, &x), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.eval(&x, &y), k.eval(&y, &x), epsilon = 1e-15);
        assert!(k.eval(&x, &y) < 1.0);
    }

    #[test]
    fn matern_half_is_exponential() {
        let k = Kernel::matern(1, 2.0).unwrap();
        assert_abs_diff_eq!(k.eval(&[0.0], &[1.0]), (-0.5f64).exp(), epsilon = 1e-15);
        assert!(Kernel::matern(4, 1.0).is_err());
    }

    #[test]
    fn quadratic_tangent_features_reproduce_kernel() {
        let d = 4;
        let k = Kernel::quadratic_tangent(d);
        let x = [0.1, -0.4, 0.8, 0.43];
        let y = [-0.3, 0.5, 0.2, -0.78];
        let fx = k.features(&x).unwrap();
        let fy = k.features(&y).unwrap();
        assert_eq!(fx.len(), d * (d + 1) / 2);
        let via_features: f64 = fx.iter().zip(&fy).map(|(a, b)| a * b).sum();
        assert_abs_diff_eq!(via_features, k.eval(&x, &y), epsilon = 1e-14);
    }

    #[test]
    fn gram_matrix_is_symmetric() {
        let k = Kernel::squared_exponential(1.0);
        let pts = vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![-1.0, 0.5]];
        let g = k.gram(&pts);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(g[(i, j)], g[(j, i)], epsilon = 1e-15);
            }
        }
    }
}
