//! Spectra of dot-product kernels on the unit sphere, eigenvalue-decay
//! classes, and the growth quantities derived from them.
//!
//! # Why
//!
//! The sample efficiency of kernel-based optimistic value iteration is
//! governed by how fast the kernel's eigenvalues decay. For kernels of the
//! form `K(z, z') = k(⟨z, z'⟩)` on `S^{d−1}` the eigenfunctions are spherical
//! harmonics and the eigenvalues are one-dimensional weighted integrals of
//! `k` against Legendre polynomials — so the whole spectral story reduces to
//! classical quadrature. This crate computes those spectra from scratch and
//! turns decay assumptions into the derived quantities an experiment needs:
//! information-gain growth, covering numbers of the optimistic value class,
//! and the exploration-bonus multiplier `β`.
//!
//! # Key functions
//!
//! | What | Where |
//! |------|-------|
//! | Legendre polynomial `P_j(u; d)` (normalized `P_j(1) = 1`) | [`legendre_dim`] |
//! | Gauss–Jacobi rule for `(1−u²)^{(d−3)/2}` | [`GaussJacobi`] |
//! | Harmonic multiplicity `N(d, j)` | [`multiplicity`] |
//! | Eigenvalue `ρ_j` of `k(⟨·,·⟩)` | [`eigenvalue`], [`SpectrumTable::compute`] |
//! | Closed-form wide-network tangent kernels | [`ClosedFormKernel`] |
//! | Decay classes and their known members | [`DecayClass`] |
//! | Information-gain growth bound | [`info_gain_bound`] |
//! | Log-covering-number bound | [`covering_bound`] |
//! | Bonus multiplier schedule | [`beta_schedule`] |
//!
//! # Quick start
//!
//! ```
//! use spectrum::{eigenvalue, multiplicity, QuadratureSettings};
//!
//! // eigenvalues of k(u) = (4/3) u² on S², degree 0 and 2
//! let s = QuadratureSettings::default();
//! let rho0 = eigenvalue(&|u| (4.0 / 3.0) * u * u, 3, 0, &s).unwrap().value;
//! let rho2 = eigenvalue(&|u| (4.0 / 3.0) * u * u, 3, 2, &s).unwrap().value;
//! assert!((rho0 - 4.0 / 9.0).abs() < 1e-10);
//! assert!((rho2 - 8.0 / 45.0).abs() < 1e-10);
//! assert_eq!(multiplicity(3, 2).unwrap(), 5);
//! ```
//!
//! # What can go wrong
//!
//! * Quadrature that fails to stabilize under order doubling (kernels with
//!   low smoothness) reports [`Error::QuadratureNotConverged`] with the
//!   achieved agreement instead of returning a silently bad number.
//! * Decay parameters outside a bound's region of validity return
//!   [`Error::Infeasible`] (value undefined) or set an explicit
//!   `guarantee_applies = false` flag (value defined, guarantee void).
//! * Multiplicities are computed in 128-bit integers and error out on
//!   overflow rather than wrapping.

mod bounds;
mod decay;
mod error;
mod funk_hecke;
mod gegenbauer;
mod multiplicity;
mod ntk;
mod quadrature;
mod schedule;
mod table;

pub use bounds::{covering_bound, info_gain_bound, BoundReport};
pub use decay::DecayClass;
pub use error::{Error, Result};
pub use funk_hecke::{eigenvalue, eigenvalue_via_derivative, sphere_surface, Eigenvalue, QuadratureSettings};
pub use gegenbauer::legendre_dim;
pub use multiplicity::multiplicity;
pub use ntk::{relu_kernel_mc, ClosedFormKernel};
pub use quadrature::GaussJacobi;
pub use schedule::{beta_schedule, fixed_point, implicit_beta, BetaReport, FixedPointReport};
pub use table::{SpectrumEntry, SpectrumTable};
