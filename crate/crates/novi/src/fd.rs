use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::net::TwoLayerNet;

/// One directional-derivative comparison: the analytic tangent against a
/// central finite difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdReport {
    /// `⟨∇_W f(z; W), U⟩` from the tangent features.
    pub analytic: f64,
    /// `[f(z; W + tU) − f(z; W − tU)] / (2t)`.
    pub numeric: f64,
    /// `|analytic − numeric| / max(1, |analytic|)`.
    pub rel_err: f64,
}

/// Check the analytic tangent map of `net` at `z` against a central finite
/// difference along a random unit direction (Frobenius-normalized, drawn
/// from `seed`) with half-step `t`.
///
/// The derivative is taken at the network's current weights; the network is
/// restored before returning.
pub fn tangent_fd_check(net: &TwoLayerNet, z: &[f64], seed: u64, t: f64) -> FdReport {
    assert!(t > 0.0 && t.is_finite(), "half-step must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut direction: Vec<f64> = (0..net.weights().len())
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    direction.iter_mut().for_each(|v| *v /= norm);

    let phi = net.tangent_features(z);
    let analytic: f64 = phi.iter().zip(&direction).map(|(p, u)| p * u).sum();

    let mut probe = net.clone();
    probe.perturb(&direction, t);
    let plus = probe.forward(z);
    probe.perturb(&direction, -2.0 * t);
    let minus = probe.forward(z);
    let numeric = (plus - minus) / (2.0 * t);

    FdReport {
        analytic,
        numeric,
        rel_err: (analytic - numeric).abs() / analytic.abs().max(1.0),
    }
}
