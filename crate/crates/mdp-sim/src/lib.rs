//! Finite episodic MDPs with exact dynamic programming.
//!
//! # Why
//!
//! Evaluating an online decision-making algorithm honestly requires knowing
//! the quantities the algorithm itself never sees: optimal values, exact
//! policy values, state-visitation distributions. This crate keeps
//! environments small and fully enumerable so all of those are available in
//! closed form — per-episode regret is then an exact number, not a Monte
//! Carlo estimate, and structural audits can distinguish genuine violations
//! from estimator noise.
//!
//! Every state-action pair carries an embedding vector. Function
//! approximators operate on embeddings; the environment itself stays
//! tabular. [`make_linear_mdp`] constructs environments whose rewards and
//! transition rows are *exactly* linear in those embeddings, so value
//! iteration with the matching linear kernel incurs zero approximation error
//! — [`closure_certificate`] verifies this numerically on any instance.
//!
//! # Key pieces
//!
//! | Item | Role |
//! |------|------|
//! | [`EpisodicMdp`] | validated rewards/transitions/embeddings, start rule |
//! | [`exact_optimal_values`] / [`policy_values`] | backward induction / exact policy evaluation |
//! | [`apply_bellman`] | one backward optimality step on a supplied table |
//! | [`occupancy`] | state-visitation distribution under a policy |
//! | [`rollout`] | seeded trajectory sampling |
//! | [`make_linear_mdp`] | low-rank environment generator + [`KernelSpec`] |
//! | [`MdpFixture`] | JSON snapshot of an environment |
//!
//! # Quick start
//!
//! ```
//! use mdp_sim::{exact_optimal_values, make_linear_mdp, policy_values, rollout, Policy};
//! use rand::SeedableRng;
//!
//! let (mdp, kernel) = make_linear_mdp(4, 6, 3, 2, 7).unwrap();
//! assert_eq!(kernel.feature_dim, 4);
//!
//! let optimal = exact_optimal_values(&mdp);
//! let greedy = optimal.greedy_policy();
//! // An optimal policy achieves the optimal value — the gap below is zero.
//! let eval = policy_values(&mdp, &greedy).unwrap();
//! let x1 = mdp.initial_state(0);
//! assert!((optimal.v[0][x1] - eval.v[0][x1]).abs() < 1e-12);
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! let traj = rollout(&mdp, &greedy, 0, &mut rng).unwrap();
//! assert_eq!(traj.steps.len(), mdp.horizon());
//! ```
//!
//! # What can go wrong
//!
//! Constructors validate everything up front ([`Error::InvalidParameter`],
//! [`Error::ShapeMismatch`]); rollouts surface uncovered states as
//! [`Error::PolicyUndefined`]; generators report retry exhaustion as
//! [`Error::Construction`].

// Dynamic programming walks (h, x, a) grids indexing several tables at once;
// index loops are clearer than zipped iterators there.
#![allow(clippy::needless_range_loop)]

mod dp;
mod error;
mod fixture;
mod linear;
mod mdp;
mod policy;
mod rollout;

pub use dp::{apply_bellman, argmax_first, exact_optimal_values, occupancy, policy_values, ValueTables};
pub use error::{Error, Result};
pub use fixture::{MdpFixture, StateFixture};
pub use linear::{
    closure_certificate, make_linear_mdp, make_linear_mdp_with, ClosureCertificate, KernelSpec,
    LinearMdpOptions,
};
pub use mdp::{one_hot_embeddings, EpisodicMdp, InitialStateRule, ROW_SUM_TOL};
pub use policy::Policy;
pub use rollout::{rollout, Step, Trajectory};
