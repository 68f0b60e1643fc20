use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Feature-space ridge regression: `Λ = λI + Σ φᵢφᵢᵀ` maintained through a
/// rank-one-updated Cholesky factor.
///
/// This is the primal twin of [`crate::DataBlock`]: wherever a kernel has an
/// explicit feature map `φ` the two routes must agree,
///
/// * predictions: `φ(z)ᵀ Λ⁻¹ Φᵀ y  =  k(z)ᵀ (K + λI)⁻¹ y`,
/// * squared bonuses: `φ(z)ᵀ Λ⁻¹ φ(z) = (k(z,z) − k(z)ᵀ(K+λI)⁻¹k(z))/λ`,
/// * information gain: `½ log det(Λ/λ) = ½ log det(I + K/λ)`,
///
/// which make the small-feature route a fast drop-in for finite-rank kernels
/// (appends and queries are O(p²) in the feature dimension `p`, independent
/// of the dataset size).
///
/// # Example
///
/// ```
/// use kernel_core::PrimalRidge;
///
/// let mut pr = PrimalRidge::new(2, 1.0).unwrap();
/// pr.append(&[1.0, 0.0]);
/// pr.append(&[0.0, 1.0]);
/// let w = pr.weights(&[1.0, -1.0]); // ridge fit of the two targets
/// assert!((pr.predict(&w, &[1.0, 0.0]) - 0.5).abs() < 1e-14);
/// ```
#[derive(Debug, Clone)]
pub struct PrimalRidge {
    dim: usize,
    lam: f64,
    /// Lower Cholesky factor of `Λ`.
    l: DMatrix<f64>,
    /// Stored feature rows (needed because regression targets change between
    /// fits, so `Φᵀy` cannot be folded incrementally).
    rows: Vec<DVector<f64>>,
}

impl PrimalRidge {
    /// New accumulator over feature dimension `dim` with ridge `λ > 0`.
    pub fn new(dim: usize, lam: f64) -> Result<Self> {
        if !(lam > 0.0 && lam.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ridge must be positive and finite, got {lam}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("feature dimension must be positive".into()));
        }
        Ok(Self {
            dim,
            lam,
            l: DMatrix::identity(dim, dim) * lam.sqrt(),
            rows: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.lam
    }

    /// Squared bonus of a feature vector *before* it is absorbed, then the
    /// rank-one Cholesky update `Λ ← Λ + φφᵀ`.
    ///
    /// Returns `(pre_bonus_sq, info_gain_increment)`; the increment obeys the
    /// same ledger identity as the dual route, `ΔΓ = ½ ln(1 + b²_pre)`.
    ///
    /// # Panics
    ///
    /// Panics if `phi.len() != self.dim()`.
    pub fn append(&mut self, phi: &[f64]) -> (f64, f64) {
        assert_eq!(phi.len(), self.dim, "feature vector has wrong dimension");
        let pre = self.bonus_sq(phi);
        self.rank_one_update(phi);
        self.rows.push(DVector::from_row_slice(phi));
        (pre, 0.5 * (1.0 + pre).ln())
    }

    /// Ridge weights `w = Λ⁻¹ Φᵀ y` for the current dataset and targets `y`.
    ///
    /// # Panics
    ///
    /// Panics if `y.len() != self.len()`.
    pub fn weights(&self, y: &[f64]) -> DVector<f64> {
        assert_eq!(y.len(), self.rows.len(), "target vector must match dataset size");
        let mut xty = DVector::zeros(self.dim);
        for (row, &yi) in self.rows.iter().zip(y) {
            xty.axpy(yi, row, 1.0);
        }
        self.solve(&xty)
    }

    /// Prediction `φ(z)ᵀ w`.
    pub fn predict(&self, weights: &DVector<f64>, phi: &[f64]) -> f64 {
        debug_assert_eq!(phi.len(), self.dim);
        weights.iter().zip(phi).map(|(w, p)| w * p).sum()
    }

    /// Squared bonus `φᵀ Λ⁻¹ φ` (no ridge division — the primal form already
    /// carries it), clamped at zero.
    pub fn bonus_sq(&self, phi: &[f64]) -> f64 {
        debug_assert_eq!(phi.len(), self.dim);
        // φᵀΛ⁻¹φ = ‖L⁻¹φ‖²
        let v = self.forward_sub(phi);
        v.iter().map(|x| x * x).sum::<f64>().max(0.0)
    }

    /// Bonus `√(φᵀ Λ⁻¹ φ)`.
    pub fn bonus(&self, phi: &[f64]) -> f64 {
        self.bonus_sq(phi).sqrt()
    }

    /// Information gain `½ log det(Λ / λ)`, equal to the dual
    /// `½ log det(I + K/λ)` of the same data.
    pub fn info_gain(&self) -> f64 {
        let logdet: f64 = (0..self.dim).map(|i| self.l[(i, i)].ln()).sum::<f64>() * 2.0;
        0.5 * (logdet - self.dim as f64 * self.lam.ln())
    }

    /// Solve `Λ x = rhs` through the factor.
    pub fn solve(&self, rhs: &DVector<f64>) -> DVector<f64> {
        let mut x = self.forward_sub(rhs.as_slice());
        // back substitution with Lᵀ
        for i in (0..self.dim).rev() {
            for j in (i + 1)..self.dim {
                let lji = self.l[(j, i)];
                x[i] -= lji * x[j];
            }
            x[i] /= self.l[(i, i)];
        }
        DVector::from_vec(x)
    }

    fn forward_sub(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut x = rhs.to_vec();
        for i in 0..n {
            for j in 0..i {
                let lij = self.l[(i, j)];
                x[i] -= lij * x[j];
            }
            x[i] /= self.l[(i, i)];
        }
        x
    }

    /// Rank-one Cholesky update `L Lᵀ + φφᵀ → L' L'ᵀ`, rotating the update
    /// vector into the factor column by column (hyperbolic-rotation-free
    /// formulation that stays stable for positive updates).
    #[allow(clippy::needless_range_loop)] // index loops mirror the factorization algebra
    fn rank_one_update(&mut self, phi: &[f64]) {
        let n = self.dim;
        let mut w = phi.to_vec();
        let mut b = 1.0f64;
        for j in 0..n {
            let ljj = self.l[(j, j)];
            let ljj2 = ljj * ljj;
            let wj = w[j];
            let wj2 = wj * wj;
            let nljj = (ljj2 + wj2 / b).sqrt();
            let gamma = ljj2 * b + wj2;
            for k in (j + 1)..n {
                let lkj = self.l[(k, j)];
                let wk = w[k] - wj * lkj / ljj;
                self.l[(k, j)] = nljj * (lkj / ljj + wj * wk / gamma);
                w[k] = wk;
            }
            b += wj2 / ljj2;
            self.l[(j, j)] = nljj;
        }
    }
}
