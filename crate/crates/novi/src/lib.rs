//! Optimistic value iteration with wide two-layer networks.
//!
//! # Why
//!
//! The kernel learner in the `kovi` crate needs its kernel handed to it.
//! This crate replaces the kernel with a finite-width two-layer network
//! trained by gradient descent from a mirrored initialization, while keeping
//! the optimism machinery: the exploration bonus is the elliptic width of
//! the network's *tangent features* against a design of previously frozen
//! tangent rows. At large width the tangent features barely move during
//! training — the lazy regime — and the whole learner collapses to the
//! kernel one under the empirical tangent kernel. The crate makes that
//! collapse measurable: a frozen-feature mode that *is* the kernel learner,
//! a per-episode linearization gap, and a width certificate `ι`.
//!
//! # Key pieces
//!
//! | Item | Role |
//! |------|------|
//! | [`TwoLayerNet`] | mirrored nets, tangent features, empirical kernels |
//! | [`fit_ridge_gd`] | full-batch GD on the ridge-anchored square loss |
//! | [`run_novi`] | the episode loop with exact regret accounting |
//! | [`NoviConfig`] | run parameters, frozen-feature switch |
//! | [`tangent_fd_check`] | finite-difference audit of the tangent map |
//! | [`empirical_kernel`] | the width-`2m` tangent kernel as a [`kernel_core::Kernel`] |
//!
//! # Quick start
//!
//! ```
//! use mdp_sim::make_linear_mdp;
//! use novi::{run_novi, Activation, NoviConfig};
//!
//! let (mdp, _) = make_linear_mdp(3, 4, 2, 2, 5).unwrap();
//! let config = NoviConfig::new(4, Activation::Quadratic, 32).with_constant_beta(0.5);
//! let run = run_novi(&mdp, &config, 7).unwrap();
//!
//! assert_eq!(run.records.len(), 4);
//! assert!(run.iota > 0.0);
//! // trained weights stay inside the analysis ball T·H²/λ
//! assert!(run.param_ball_ok);
//! ```
//!
//! # What can go wrong
//!
//! Width and dimension caps ([`MAX_HALF_WIDTH`], [`MAX_EMBED_DIM`]) and
//! malformed settings surface as [`Error::InvalidParameter`]; a diverging
//! gradient descent aborts with [`Error::Numerical`] instead of silently
//! producing NaN values.

mod config;
mod error;
mod fd;
mod net;
mod run;
mod train;

pub use config::{NoviConfig, MAX_EMBED_DIM, MAX_HALF_WIDTH};
pub use error::{Error, Result};
pub use fd::{tangent_fd_check, FdReport};
pub use net::{empirical_kernel, Activation, InitScheme, TwoLayerNet};
pub use run::{iota, run_novi, NoviEpisode, NoviRun};
pub use train::{fit_ridge_gd, FitReport, GdSettings};
