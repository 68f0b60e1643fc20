use crate::chol::LowerTriangular;
use crate::error::{Error, Result};
use crate::kernel::Kernel;

/// Jitter ladder relative to the mean kernel diagonal: start small, escalate
/// by one decade per rung, give up after `1e-6 × trace/n`.
const JITTER_LADDER: [f64; 5] = [1e-10, 1e-9, 1e-8, 1e-7, 1e-6];

/// Bookkeeping returned by [`DataBlock::append`].
///
/// All quantities are consistent with the factor *after* the append, so the
/// ledger identity `info_gain_increment = ½ ln(1 + pre_bonus_sq)` holds to
/// machine precision by construction, and `post_bonus_sq` is the squared
/// bonus the block would report for the same point once it is inside the
/// dataset (`pre/(1+pre)` by the rank-one update formula).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendStats {
    /// Index the point received in the dataset (0-based).
    pub index: usize,
    /// Squared UCB bonus of the point measured against the dataset *before*
    /// the append.
    pub pre_bonus_sq: f64,
    /// Squared UCB bonus of the same point *after* the append.
    pub post_bonus_sq: f64,
    /// Change in `½ log det(I + K/λ)` caused by this append.
    pub info_gain_increment: f64,
    /// Diagonal jitter that had to be added to make the pivot positive
    /// (0.0 in the overwhelmingly common healthy case).
    pub jitter: f64,
}

/// A growing dataset with an incrementally factored ridge Gram matrix.
///
/// Holds the points `z₁…zₙ`, the Cholesky factor of `K + λI`, and a ledger
/// of per-append statistics. Appending costs O(n²), ridge solves and bonus
/// queries O(n²), predictions O(n·cost(k)).
///
/// # Example
///
/// ```
/// use kernel_core::{DataBlock, Kernel};
///
/// let mut block = DataBlock::new(Kernel::linear(), 1.0).unwrap();
/// let stats = block.append(&[1.0]).unwrap();
/// // unit point, unit ridge: squared bonus before seeing it is 1.0
/// assert!((stats.pre_bonus_sq - 1.0).abs() < 1e-15);
/// // and the information gain is ½ ln 2
/// assert!((block.info_gain() - 0.5 * 2.0f64.ln()).abs() < 1e-15);
/// ```
#[derive(Debug, Clone)]
pub struct DataBlock {
    kernel: Kernel,
    lam: f64,
    points: Vec<Vec<f64>>,
    factor: LowerTriangular,
    diag_trace: f64,
    ledger: Vec<AppendStats>,
}

impl DataBlock {
    /// Create an empty block. The ridge `λ` must be strictly positive.
    pub fn new(kernel: Kernel, lam: f64) -> Result<Self> {
        if !(lam > 0.0 && lam.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ridge must be positive and finite, got {lam}"
            )));
        }
        Ok(Self {
            kernel,
            lam,
            points: Vec::new(),
            factor: LowerTriangular::new(),
            diag_trace: 0.0,
            ledger: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lambda(&self) -> f64 {
        self.lam
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Per-append statistics, in append order.
    pub fn ledger(&self) -> &[AppendStats] {
        &self.ledger
    }

    /// Kernel values of a query against every stored point.
    pub fn cross_vector(&self, query: &[f64]) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| self.kernel.eval(p, query))
            .collect()
    }

    /// Append a point, extending the factor by one bordered row.
    ///
    /// If the pivot `k(z,z) + λ − ‖l‖²` is not positive (the kernel is not
    /// PSD, or floating point lost the battle), a diagonal jitter ladder is
    /// walked from `1e-10` to `1e-6` times the mean kernel diagonal; failure
    /// past the last rung returns [`Error::IllConditioned`] and leaves the
    /// block unchanged.
    pub fn append(&mut self, point: &[f64]) -> Result<AppendStats> {
        if let Some(first) = self.points.first() {
            if first.len() != point.len() {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    got: point.len(),
                });
            }
        }
        let cross = self.cross_vector(point);
        let kzz = self.kernel.eval(point, point);
        let trace = self.diag_trace + kzz;
        let n = (self.points.len() + 1) as f64;
        let scale = (trace / n).abs().max(f64::MIN_POSITIVE);

        let mut jitter = 0.0;
        let mut rung = 0usize;
        let pivot = loop {
            match self.factor.push_row(&cross, kzz + self.lam + jitter) {
                Ok(p) => break p,
                Err(p) => {
                    if rung >= JITTER_LADDER.len() {
                        return Err(Error::IllConditioned {
                            pivot: p,
                            max_jitter: JITTER_LADDER[JITTER_LADDER.len() - 1] * scale,
                        });
                    }
                    jitter = JITTER_LADDER[rung] * scale;
                    rung += 1;
                }
            }
        };

        // pivot = λ(1 + b²_pre) with b²_pre measured against the pre-append
        // dataset — the ledger identity reads the same number off the factor.
        let pre = (pivot / self.lam - 1.0).max(0.0);
        let stats = AppendStats {
            index: self.points.len(),
            pre_bonus_sq: pre,
            post_bonus_sq: pre / (1.0 + pre),
            info_gain_increment: 0.5 * (1.0 + pre).ln(),
            jitter,
        };
        self.points.push(point.to_vec());
        self.diag_trace = trace;
        self.ledger.push(stats);
        Ok(stats)
    }

    /// Ridge solve `α = (K + λI)⁻¹ y`.
    ///
    /// # Panics
    ///
    /// Panics if `y.len() != self.len()`.
    pub fn solve(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.len(), "target vector must match dataset size");
        self.factor.solve(y)
    }

    /// Prediction `k(z)ᵀ α` of a ridge fit at a query point.
    pub fn predict(&self, alpha: &[f64], query: &[f64]) -> f64 {
        debug_assert_eq!(alpha.len(), self.len());
        self.cross_vector(query)
            .iter()
            .zip(alpha)
            .map(|(k, a)| k * a)
            .sum()
    }

    /// Squared UCB bonus `b²(z) = (k(z,z) − k(z)ᵀ(K+λI)⁻¹k(z)) / λ`,
    /// clamped at zero before any square root is taken.
    pub fn bonus_sq(&self, query: &[f64]) -> f64 {
        let kzz = self.kernel.eval(query, query);
        let cross = self.cross_vector(query);
        let l = self.factor.solve_lower(&cross);
        let explained: f64 = l.iter().map(|v| v * v).sum();
        ((kzz - explained) / self.lam).max(0.0)
    }

    /// UCB bonus `b(z)`, the square root of [`DataBlock::bonus_sq`].
    pub fn bonus(&self, query: &[f64]) -> f64 {
        self.bonus_sq(query).sqrt()
    }

    /// Information gain `Γ = ½ log det(I + K/λ)` of the current dataset,
    /// read from the factor diagonal.
    pub fn info_gain(&self) -> f64 {
        self.factor.log_diag_sum() - 0.5 * self.len() as f64 * self.lam.ln()
    }

    /// Borrow the underlying factor (read-only).
    pub fn factor(&self) -> &LowerTriangular {
        &self.factor
    }
}
