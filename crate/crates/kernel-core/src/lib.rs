//! Kernel ridge regression with incremental Cholesky factors, confidence
//! bonuses, and information-gain bookkeeping.
//!
//! # Why
//!
//! Optimistic least-squares value iteration repeatedly fits a regressor to a
//! growing dataset and queries an upper-confidence bonus at many points. The
//! cost profile is unusual: one point is appended per episode per stage, the
//! regression targets change every episode, and the bonus must be consistent
//! with the regressor to machine precision so that structural identities
//! (information-gain ledgers, telescoping potential sums) can be audited at
//! tight tolerances. This crate provides exactly that substrate:
//!
//! * [`Kernel`] — a positive-definite kernel as a shared closure, optionally
//!   carrying an explicit finite-dimensional feature map;
//! * [`DataBlock`] — a dataset with an incrementally maintained Cholesky
//!   factor of `K + λI` (O(n²) per append), ridge solves, UCB bonuses, and an
//!   append ledger tying each bonus to the information-gain increment;
//! * [`PrimalRidge`] — the feature-space twin (`Λ = λI + ΦᵀΦ` with rank-one
//!   Cholesky updates) that must agree with the dual route wherever an
//!   explicit feature map exists.
//!
//! # Key identities maintained here
//!
//! | Identity | Where |
//! |----------|-------|
//! | `α = (K + λI)⁻¹ y`, prediction `k(z)ᵀα` | [`DataBlock::solve`], [`DataBlock::predict`] |
//! | `b²(z) = (k(z,z) − k(z)ᵀ(K+λI)⁻¹k(z))/λ = φ(z)ᵀΛ⁻¹φ(z)` | [`DataBlock::bonus_sq`], [`PrimalRidge::bonus_sq`] |
//! | `Γ = ½ log det(I + K/λ) = Σᵢ ln Lᵢᵢ − (n/2) ln λ` | [`DataBlock::info_gain`] |
//! | `ΔΓ on append = ½ ln(1 + b²_pre)` | [`AppendStats::info_gain_increment`] |
//! | `b²_post = b²_pre / (1 + b²_pre)` | [`AppendStats::post_bonus_sq`] |
//!
//! The append ledger identity is not approximate: the new Cholesky diagonal
//! satisfies `L²ₙₙ = λ(1 + b²_pre)`, so the increment is read off the same
//! factor that defines the bonus.
//!
//! # Quick start
//!
//! ```
//! use kernel_core::{DataBlock, Kernel};
//!
//! let kernel = Kernel::squared_exponential(1.0);
//! let mut block = DataBlock::new(kernel, 1.0).unwrap();
//! block.append(&[0.0, 0.0]).unwrap();
//! block.append(&[1.0, 0.0]).unwrap();
//!
//! let alpha = block.solve(&[0.5, -0.5]);
//! let pred = block.predict(&alpha, &[0.2, 0.0]);
//! let bonus = block.bonus(&[0.2, 0.0]);
//! assert!(pred.abs() < 1.0 && bonus > 0.0);
//! ```
//!
//! # What can go wrong
//!
//! * A kernel that is not positive semi-definite (or a dataset that defeats
//!   floating point) makes an append pivot non-positive. The block then walks
//!   a bounded jitter ladder (`1e-10 … 1e-6` × mean kernel diagonal) and
//!   reports [`Error::IllConditioned`] if even the largest jitter fails.
//! * Querying a bonus at a point extremely close to the dataset can yield a
//!   tiny negative variance from cancellation; [`DataBlock::bonus_sq`] clamps
//!   at zero *before* the square root.
//! * Mismatched point dimensions return [`Error::DimensionMismatch`] rather
//!   than panicking.

mod block;
mod chol;
mod error;
mod kernel;
mod primal;

pub use block::{AppendStats, DataBlock};
pub use chol::LowerTriangular;
pub use error::{Error, Result};
pub use kernel::Kernel;
pub use primal::PrimalRidge;

/// Information gain `½ log det(I + K/λ)` of a point set under a kernel,
/// computed through a fresh factorization (no incremental state).
///
/// This is the quantity the incremental ledger in [`DataBlock`] tracks; the
/// standalone form is convenient for audits over recorded trajectories.
///
/// # Example
///
/// ```
/// use kernel_core::{empirical_info_gain, Kernel};
/// let g = empirical_info_gain(&Kernel::linear(), &[vec![1.0]], 1.0).unwrap();
/// assert!((g - 0.5 * 2.0f64.ln()).abs() < 1e-12);
/// ```
pub fn empirical_info_gain(kernel: &Kernel, points: &[Vec<f64>], lam: f64) -> Result<f64> {
    let mut block = DataBlock::new(kernel.clone(), lam)?;
    for p in points {
        block.append(p)?;
    }
    Ok(block.info_gain())
}
