use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::TwoLayerNet;

/// Gradient-descent settings for one ridge fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GdSettings {
    /// Step size; `None` means the default `0.01 / (1 + λ)`.
    #[serde(default)]
    pub step: Option<f64>,
    /// Iteration budget per fit.
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    /// Stop when the full-gradient Frobenius norm falls below this.
    #[serde(default = "default_grad_tol")]
    pub grad_tol: f64,
}

fn default_max_iters() -> usize {
    5000
}

fn default_grad_tol() -> f64 {
    1e-6
}

impl Default for GdSettings {
    fn default() -> Self {
        Self {
            step: None,
            max_iters: default_max_iters(),
            grad_tol: default_grad_tol(),
        }
    }
}

impl GdSettings {
    pub fn resolved_step(&self, lambda: f64) -> f64 {
        self.step.unwrap_or(0.01 / (1.0 + lambda))
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter(
                "gradient descent needs at least one iteration".into(),
            ));
        }
        if !self.grad_tol.is_finite() || self.grad_tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gradient tolerance must be a positive finite number, got {}",
                self.grad_tol
            )));
        }
        if let Some(s) = self.step {
            if !s.is_finite() || s <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "step size must be a positive finite number, got {s}"
                )));
            }
        }
        Ok(())
    }
}

/// What one fit ended with. `grad_norm` and `loss` are evaluated at the
/// returned weights, not at the point before the last step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub iterations: usize,
    pub grad_norm: f64,
    pub loss: f64,
    pub converged: bool,
}

/// Minimize `L(W) = Σ_τ (y_τ − f(z_τ; W))² + λ‖W − W₀‖²_F` by full-batch
/// gradient descent starting from the network's current weights.
///
/// Stops when the gradient norm drops below `settings.grad_tol` or the
/// iteration budget runs out; a non-finite loss or gradient aborts with
/// [`Error::Numerical`] and leaves the weights where they diverged.
pub fn fit_ridge_gd(
    net: &mut TwoLayerNet,
    inputs: &[&[f64]],
    targets: &[f64],
    lambda: f64,
    settings: &GdSettings,
) -> Result<FitReport> {
    settings.validate()?;
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must be a positive finite number, got {lambda}"
        )));
    }
    if inputs.len() != targets.len() {
        return Err(Error::InvalidParameter(format!(
            "{} inputs vs {} targets",
            inputs.len(),
            targets.len()
        )));
    }
    let d = net.input_dim();
    for z in inputs {
        if z.len() != d {
            return Err(Error::InvalidParameter(format!(
                "input of length {} fed to a d={d} network",
                z.len()
            )));
        }
    }
    let n = inputs.len();
    let width = net.width();
    let c = net.prefactor();
    // pre-activations, unit-major: pre[j*n + τ] = w_jᵀ z_τ
    let mut pre = vec![0.0; width * n];
    let mut outputs = vec![0.0; n];
    let mut residuals = vec![0.0; n];
    let mut grad = vec![0.0; width * d];

    let step = settings.resolved_step(lambda);
    let mut iterations = 0;
    loop {
        // forward: fill `pre` and accumulate outputs
        outputs.iter_mut().for_each(|o| *o = 0.0);
        for j in 0..width {
            let row = &net.w[j * d..(j + 1) * d];
            let sign = net.signs[j];
            for (tau, z) in inputs.iter().enumerate() {
                let mut v = 0.0;
                for i in 0..d {
                    v += row[i] * z[i];
                }
                pre[j * n + tau] = v;
                outputs[tau] += sign * net.sigma(j, v).0;
            }
        }
        let mut loss = 0.0;
        for tau in 0..n {
            let r = c * outputs[tau] - targets[tau];
            residuals[tau] = r;
            loss += r * r;
        }
        // gradient: data term 2 Σ_τ r_τ · c·b_j·σ'(pre)·z_τ, ridge term
        // 2λ(w − w₀)
        let mut grad_norm_sq = 0.0;
        for j in 0..width {
            let gj = &mut grad[j * d..(j + 1) * d];
            gj.iter_mut().for_each(|g| *g = 0.0);
            let scale = 2.0 * c * net.signs[j];
            for (tau, z) in inputs.iter().enumerate() {
                let coeff = scale * residuals[tau] * net.sigma(j, pre[j * n + tau]).1;
                for (g, &zi) in gj.iter_mut().zip(*z) {
                    *g += coeff * zi;
                }
            }
            let wj = &net.w[j * d..(j + 1) * d];
            let wj0 = &net.w0[j * d..(j + 1) * d];
            for ((g, &w), &w0) in gj.iter_mut().zip(wj).zip(wj0) {
                *g += 2.0 * lambda * (w - w0);
                grad_norm_sq += *g * *g;
            }
        }
        // ridge part of the loss, in one pass
        let ridge: f64 = net
            .w
            .iter()
            .zip(&net.w0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        loss += lambda * ridge;
        let grad_norm = grad_norm_sq.sqrt();
        if !loss.is_finite() || !grad_norm.is_finite() {
            return Err(Error::Numerical(format!(
                "gradient descent diverged after {iterations} iterations \
                 (loss {loss}, grad {grad_norm}); reduce the step size"
            )));
        }
        if grad_norm <= settings.grad_tol {
            return Ok(FitReport {
                iterations,
                grad_norm,
                loss,
                converged: true,
            });
        }
        if iterations == settings.max_iters {
            return Ok(FitReport {
                iterations,
                grad_norm,
                loss,
                converged: false,
            });
        }
        for (w, g) in net.w.iter_mut().zip(&grad) {
            *w -= step * g;
        }
        iterations += 1;
    }
}
