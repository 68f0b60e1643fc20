use kernel_core::Kernel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First-layer activation of the two-layer network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    /// `σ(v) = v²`.
    Quadratic,
    /// `σ(v) = sin(v + θ)` with a per-unit phase `θ`.
    Sine,
}

/// How the first-layer weights are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitScheme {
    /// Per-activation distributions whose infinite-width tangent kernels
    /// have closed forms on the unit sphere: rows uniform on `S^{d−1}` for
    /// the quadratic activation (kernel `(4/d)⟨x,y⟩²`), rows `N(0, I_d)`
    /// with phases uniform on `[0, 2π)` for the sine activation (kernel
    /// `u·e^{u−1}`, `u = ⟨x,y⟩`).
    #[default]
    Canonical,
    /// Rows `N(0, I_d/d)` for either activation (sine keeps its phases).
    /// The limiting kernel then depends on `d` differently and has no
    /// closed form matched by the spectral tooling; kept for comparisons.
    GenericGaussian,
}

/// A width-`2m` two-layer network `f(z) = c · Σ_j b_j σ(w_jᵀ z + θ_j)` with
/// frozen signs `b_j = ±1`, trainable first layer `W`, and mirrored
/// initialization: unit `j+m` starts as an exact copy of unit `j` with the
/// opposite sign, so `f(·; W₀) = 0` identically (up to rounding).
///
/// The prefactor `c` is `1/√(2m)` for the quadratic activation and `1/√m`
/// for the sine activation; these are exactly the scalings under which the
/// tangent kernel at initialization converges to the closed forms above.
#[derive(Debug, Clone)]
pub struct TwoLayerNet {
    activation: Activation,
    d: usize,
    half_width: usize,
    prefactor: f64,
    /// Current first layer, `2m × d` row-major.
    pub(crate) w: Vec<f64>,
    /// The initialization `W₀`, kept for the ridge anchor and the tangent
    /// map at init.
    pub(crate) w0: Vec<f64>,
    /// Frozen output signs `b_j`.
    pub(crate) signs: Vec<f64>,
    /// Frozen phases `θ_j` (empty for the quadratic activation).
    pub(crate) phases: Vec<f64>,
}

impl TwoLayerNet {
    /// Draw a fresh network. `half_width` is `m`: the network has `2m`
    /// units, mirrored in pairs.
    pub fn new(
        activation: Activation,
        d: usize,
        half_width: usize,
        init: InitScheme,
        seed: u64,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "input dimension must be positive".into(),
            ));
        }
        if half_width == 0 {
            return Err(Error::InvalidParameter(
                "network half-width must be positive".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = half_width;
        let width = 2 * m;
        let mut w0 = vec![0.0; width * d];
        let mut signs = vec![0.0; width];
        let mut phases = match activation {
            Activation::Quadratic => Vec::new(),
            Activation::Sine => vec![0.0; width],
        };
        for j in 0..m {
            let row = draw_row(activation, init, d, &mut rng);
            w0[j * d..(j + 1) * d].copy_from_slice(&row);
            w0[(j + m) * d..(j + m + 1) * d].copy_from_slice(&row);
            signs[j] = 1.0;
            signs[j + m] = -1.0;
            if activation == Activation::Sine {
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                phases[j] = theta;
                phases[j + m] = theta;
            }
        }
        let prefactor = match activation {
            Activation::Quadratic => 1.0 / (2.0 * m as f64).sqrt(),
            Activation::Sine => 1.0 / (m as f64).sqrt(),
        };
        Ok(Self {
            activation,
            d,
            half_width: m,
            prefactor,
            w: w0.clone(),
            w0,
            signs,
            phases,
        })
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn input_dim(&self) -> usize {
        self.d
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Total number of units, `2m`.
    pub fn width(&self) -> usize {
        2 * self.half_width
    }

    /// Dimension of the tangent-feature vector, `2m·d`.
    pub fn tangent_dim(&self) -> usize {
        self.width() * self.d
    }

    pub(crate) fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// Unit activation and its derivative at pre-activation `v` of unit `j`.
    #[inline]
    pub(crate) fn sigma(&self, j: usize, v: f64) -> (f64, f64) {
        match self.activation {
            Activation::Quadratic => (v * v, 2.0 * v),
            Activation::Sine => {
                let arg = v + self.phases[j];
                (arg.sin(), arg.cos())
            }
        }
    }

    /// Network output at the current weights.
    pub fn forward(&self, z: &[f64]) -> f64 {
        self.forward_with(&self.w, z)
    }

    /// Network output at the initialization (zero up to rounding).
    pub fn forward_at_init(&self, z: &[f64]) -> f64 {
        self.forward_with(&self.w0, z)
    }

    fn forward_with(&self, weights: &[f64], z: &[f64]) -> f64 {
        assert_eq!(z.len(), self.d, "input dimension mismatch");
        let mut sum = 0.0;
        for j in 0..self.width() {
            let pre = dot(&weights[j * self.d..(j + 1) * self.d], z);
            sum += self.signs[j] * self.sigma(j, pre).0;
        }
        self.prefactor * sum
    }

    /// Gradient of the output with respect to the first layer, flattened in
    /// the same `2m × d` row-major layout as the weights: block `j` is
    /// `c·b_j·σ'(w_jᵀz + θ_j)·z`, evaluated at the **current** weights.
    pub fn tangent_features(&self, z: &[f64]) -> Vec<f64> {
        self.tangent_with(&self.w, z)
    }

    /// Tangent features at the initialization `W₀`.
    pub fn tangent_at_init(&self, z: &[f64]) -> Vec<f64> {
        self.tangent_with(&self.w0, z)
    }

    fn tangent_with(&self, weights: &[f64], z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.d, "input dimension mismatch");
        let mut phi = vec![0.0; self.tangent_dim()];
        for j in 0..self.width() {
            let row = &weights[j * self.d..(j + 1) * self.d];
            let scale = self.prefactor * self.signs[j] * self.sigma(j, dot(row, z)).1;
            for (out, &zi) in phi[j * self.d..(j + 1) * self.d].iter_mut().zip(z) {
                *out = scale * zi;
            }
        }
        phi
    }

    /// `‖W − W₀‖²_F`.
    pub fn param_distance_sq(&self) -> f64 {
        self.w
            .iter()
            .zip(&self.w0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// Restore the initialization.
    pub fn reset(&mut self) {
        self.w.copy_from_slice(&self.w0);
    }

    /// `|f(z; W) − f_lin(z; W)|` where `f_lin` is the first-order expansion
    /// of the network around `W₀`. Shrinks with width in the lazy-training
    /// regime; large values mean the linear (kernel) picture has broken.
    pub fn linearization_gap(&self, z: &[f64]) -> f64 {
        let mut lin = self.forward_at_init(z);
        for j in 0..self.width() {
            let row0 = &self.w0[j * self.d..(j + 1) * self.d];
            let row = &self.w[j * self.d..(j + 1) * self.d];
            let slope = self.prefactor * self.signs[j] * self.sigma(j, dot(row0, z)).1;
            let mut moved = 0.0;
            for i in 0..self.d {
                moved += (row[i] - row0[i]) * z[i];
            }
            lin += slope * moved;
        }
        (self.forward(z) - lin).abs()
    }

    /// Add `scale · direction` to the weights (`direction` in the same
    /// flattened layout). Used by the finite-difference audit.
    pub fn perturb(&mut self, direction: &[f64], scale: f64) {
        assert_eq!(direction.len(), self.w.len(), "direction length mismatch");
        for (w, &u) in self.w.iter_mut().zip(direction) {
            *w += scale * u;
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }
}

/// The width-`2m` tangent kernel at this network's **current** weights:
/// `K_m(x, y) = ⟨∇_W f(x), ∇_W f(y)⟩`. Pass a freshly initialized network
/// for the empirical kernel at `W₀` — the one the frozen-feature learner
/// uses, and the one that converges to the closed forms as `m → ∞`.
pub fn empirical_kernel(net: &TwoLayerNet) -> Kernel {
    let owner = net.clone();
    let query = net.clone();
    let name = format!(
        "empirical_tangent({:?}, width={})",
        net.activation(),
        net.width()
    );
    let p = net.tangent_dim();
    Kernel::new(name, move |x: &[f64], y: &[f64]| {
        dot(&owner.tangent_features(x), &owner.tangent_features(y))
    })
    .with_features(p, move |x: &[f64]| query.tangent_features(x))
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn draw_row(
    activation: Activation,
    init: InitScheme,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    match (init, activation) {
        (InitScheme::Canonical, Activation::Quadratic) => loop {
            let row: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let norm = dot(&row, &row).sqrt();
            if norm > 1e-12 {
                return row.into_iter().map(|v| v / norm).collect();
            }
        },
        (InitScheme::Canonical, Activation::Sine) => {
            (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
        }
        (InitScheme::GenericGaussian, _) => {
            let scale = 1.0 / (d as f64).sqrt();
            (0..d)
                .map(|_| rng.sample::<f64, _>(StandardNormal) * scale)
                .collect()
        }
    }
}
