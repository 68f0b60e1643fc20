use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::funk_hecke::{eigenvalue, QuadratureSettings};
use crate::multiplicity::multiplicity;
use crate::ntk::ClosedFormKernel;

/// One degree of a sphere-harmonic spectrum: the eigenvalue `ρ_j` and its
/// multiplicity `N(d, j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub degree: usize,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

/// The spectrum of a dot-product kernel on `S^{d−1}` up to a maximum degree,
/// with the quadrature order that produced it. Serializes to the JSON shape
/// emitted by the command-line `spectrum` subcommand.
///
/// # Example
///
/// ```
/// use spectrum::{ClosedFormKernel, QuadratureSettings, SpectrumTable};
/// let table = SpectrumTable::compute_closed_form(
///     &ClosedFormKernel::Quadratic { d: 3 },
///     5,
///     &QuadratureSettings::default(),
/// ).unwrap();
/// assert_eq!(table.nonzero_count(1e-6), 6); // d(d+1)/2 on S²
/// assert!((table.mercer_diagonal_sum() - 4.0 / 3.0).abs() < 1e-8);
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    /// Ambient dimension (`d`, sphere `S^{d−1}`).
    pub d: usize,
    /// Kernel identifier (e.g. `quadratic`, `sine`, `relu_power:1`).
    pub kernel: String,
    pub entries: Vec<SpectrumEntry>,
    /// Largest quadrature order used across degrees.
    pub quadrature_order: usize,
}

impl SpectrumTable {
    /// Compute the spectrum of an arbitrary profile `k(u)` on `S^{d−1}` for
    /// degrees `0..=jmax`.
    pub fn compute(
        profile: &dyn Fn(f64) -> f64,
        kernel_name: &str,
        d: usize,
        jmax: usize,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(jmax + 1);
        let mut max_order = 0;
        for j in 0..=jmax {
            let eig = eigenvalue(profile, d, j, settings)?;
            max_order = max_order.max(eig.order);
            entries.push(SpectrumEntry {
                degree: j,
                eigenvalue: eig.value,
                multiplicity: multiplicity(d, j)?,
            });
        }
        Ok(Self { d, kernel: kernel_name.to_string(), entries, quadrature_order: max_order })
    }

    /// Compute the spectrum of a closed-form tangent kernel.
    pub fn compute_closed_form(
        kernel: &ClosedFormKernel,
        jmax: usize,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let d = match kernel {
            ClosedFormKernel::Quadratic { d } => *d,
            ClosedFormKernel::ReluPower { d, .. } => *d,
            ClosedFormKernel::Sine => {
                return Err(crate::error::Error::InvalidParameter(
                    "sine profile needs an ambient dimension; use compute_closed_form_in".into(),
                ))
            }
        };
        Self::compute_closed_form_in(kernel, d, jmax, settings)
    }

    /// Like [`SpectrumTable::compute_closed_form`] with the sphere dimension
    /// given explicitly (needed for dimension-free profiles).
    pub fn compute_closed_form_in(
        kernel: &ClosedFormKernel,
        d: usize,
        jmax: usize,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let profile = kernel.profile();
        Self::compute(&*profile, &kernel.name(), d, jmax, settings)
    }

    /// `Σ_j ρ_j N(d, j)`: the Mercer diagonal, which must equal `k(1)` once
    /// the truncation degree captures the whole spectrum.
    pub fn mercer_diagonal_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.eigenvalue * e.multiplicity as f64)
            .sum()
    }

    /// Number of eigenfunctions (counted with multiplicity) whose eigenvalue
    /// exceeds `tol` in absolute value.
    pub fn nonzero_count(&self, tol: f64) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.eigenvalue.abs() > tol)
            .map(|e| e.multiplicity)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quadratic_table_counts() {
        for d in [3usize, 4, 5] {
            let t = SpectrumTable::compute_closed_form(
                &ClosedFormKernel::Quadratic { d },
                6,
                &QuadratureSettings::default(),
            )
            .unwrap();
            assert_eq!(t.nonzero_count(1e-6), (d * (d + 1) / 2) as u64, "d={d}");
            assert_abs_diff_eq!(t.mercer_diagonal_sum(), 4.0 / d as f64, epsilon = 1e-8);
            // odd degrees and degrees ≥ 3 vanish
            for e in &t.entries {
                if e.degree == 1 || e.degree >= 3 {
                    assert!(e.eigenvalue.abs() < 1e-10, "degree {} should vanish", e.degree);
                }
            }
        }
    }

    #[test]
    fn sine_table_mercer_sum_converges_to_one() {
        let t = SpectrumTable::compute_closed_form_in(
            &ClosedFormKernel::Sine,
            3,
            10,
            &QuadratureSettings::default(),
        )
        .unwrap();
        // k(1) = 1; degrees ≤ 10 capture it to ~1e-6
        assert_abs_diff_eq!(t.mercer_diagonal_sum(), 1.0, epsilon = 1e-5);
    }

    #[test]
    fn json_shape_round_trips() {
        let t = SpectrumTable::compute_closed_form(
            &ClosedFormKernel::Quadratic { d: 3 },
            3,
            &QuadratureSettings::default(),
        )
        .unwrap();
        let js = serde_json::to_string_pretty(&t).unwrap();
        assert!(js.contains("\"kernel\": \"quadratic\""));
        assert!(js.contains("\"quadrature_order\""));
        let back: SpectrumTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back.d, t.d);
        assert_eq!(back.kernel, t.kernel);
        assert_eq!(back.quadrature_order, t.quadrature_order);
        assert_eq!(back.entries.len(), t.entries.len());
        for (a, b) in back.entries.iter().zip(&t.entries) {
            assert_eq!(a.degree, b.degree);
            assert_eq!(a.multiplicity, b.multiplicity);
            assert_abs_diff_eq!(a.eigenvalue, b.eigenvalue, epsilon = 1e-12);
        }
    }
}
