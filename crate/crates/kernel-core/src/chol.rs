/// A growing lower-triangular Cholesky factor stored as packed rows.
///
/// Row `i` holds the `i + 1` entries `L[i][0..=i]`. The factor is extended one
/// bordered row at a time in O(n²) (one forward substitution), which is the
/// natural cost profile when a dataset gains one point per episode.
///
/// # Example
///
/// ```
/// use kernel_core::LowerTriangular;
/// let mut l = LowerTriangular::new();
/// // factor of [[4, 2], [2, 5]]
/// l.push_row(&[], 4.0).unwrap();
/// l.push_row(&[2.0], 5.0).unwrap();
/// assert_eq!(l.diag(0), 2.0);
/// assert_eq!(l.diag(1), 2.0); // sqrt(5 - 1)
/// let x = l.solve_lower(&[2.0, 3.0]); // L x = rhs
/// assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
/// ```
#[derive(Debug, Clone, Default)]
pub struct LowerTriangular {
    rows: Vec<Vec<f64>>,
}

impl LowerTriangular {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Diagonal entry `L[i][i]`.
    pub fn diag(&self, i: usize) -> f64 {
        self.rows[i][i]
    }

    /// Append the bordered row for a new symmetric matrix row whose
    /// off-diagonal part is `cross` and diagonal is `diag`.
    ///
    /// Returns the new pivot `diag − ‖l‖²` (with `l = L⁻¹ cross`) through
    /// `Ok(pivot)` on success. Fails with the non-positive pivot value if the
    /// extended matrix is not numerically positive definite.
    pub fn push_row(&mut self, cross: &[f64], diag: f64) -> Result<f64, f64> {
        debug_assert_eq!(cross.len(), self.rows.len());
        let mut l = self.solve_lower(cross);
        let pivot = diag - l.iter().map(|v| v * v).sum::<f64>();
        if pivot > 0.0 && pivot.is_finite() {
            l.push(pivot.sqrt());
            self.rows.push(l);
            Ok(pivot)
        } else {
            Err(pivot)
        }
    }

    /// Solve `L x = rhs` by forward substitution.
    pub fn solve_lower(&self, rhs: &[f64]) -> Vec<f64> {
        debug_assert!(rhs.len() <= self.rows.len());
        let mut x = vec![0.0; rhs.len()];
        for i in 0..rhs.len() {
            let row = &self.rows[i];
            let mut s = rhs[i];
            for j in 0..i {
                s -= row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        x
    }

    /// Solve `Lᵀ x = rhs` by backward substitution.
    pub fn solve_upper(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        debug_assert!(n <= self.rows.len());
        let mut x = rhs.to_vec();
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.rows[j][i] * x[j];
            }
            x[i] /= self.rows[i][i];
        }
        x
    }

    /// Solve `L Lᵀ x = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        self.solve_upper(&self.solve_lower(rhs))
    }

    /// Sum of log-diagonal entries, `½ log det(L Lᵀ)`.
    pub fn log_diag_sum(&self) -> f64 {
        self.rows.iter().enumerate().map(|(i, r)| r[i].ln()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Factor a dense SPD matrix row by row and check `L Lᵀ = A`.
    #[test]
    #[allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
    fn reconstructs_spd_matrix() {
        // A = B Bᵀ + I for a fixed 4×4 B
        let b = [
            [0.6, -0.2, 0.0, 0.3],
            [0.1, 0.8, -0.5, 0.0],
            [-0.7, 0.2, 0.4, 0.1],
            [0.0, -0.3, 0.9, 0.5],
        ];
        let mut a = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = (0..4).map(|k| b[i][k] * b[j][k]).sum::<f64>();
                if i == j {
                    a[i][j] += 1.0;
                }
            }
        }
        let mut l = LowerTriangular::new();
        for i in 0..4 {
            let cross: Vec<f64> = (0..i).map(|j| a[i][j]).collect();
            l.push_row(&cross, a[i][i]).expect("SPD matrix must factor");
        }
        // reconstruct
        for i in 0..4 {
            for j in 0..4 {
                let lij: f64 = (0..=i.min(j))
                    .map(|k| l.rows[i].get(k).copied().unwrap_or(0.0) * l.rows[j].get(k).copied().unwrap_or(0.0))
                    .sum();
                assert_abs_diff_eq!(lij, a[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn solve_inverts_the_factored_matrix() {
        let mut l = LowerTriangular::new();
        l.push_row(&[], 2.0).unwrap();
        l.push_row(&[0.5], 3.0).unwrap();
        l.push_row(&[-0.3, 1.0], 4.0).unwrap();
        // A x = rhs  =>  x = solve(rhs); verify by multiplying back.
        let rhs = [1.0, -2.0, 0.5];
        let x = l.solve(&rhs);
        let a = [[2.0, 0.5, -0.3], [0.5, 3.0, 1.0], [-0.3, 1.0, 4.0]];
        for i in 0..3 {
            let got: f64 = (0..3).map(|j| a[i][j] * x[j]).sum();
            assert_abs_diff_eq!(got, rhs[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_indefinite_extension() {
        let mut l = LowerTriangular::new();
        l.push_row(&[], 1.0).unwrap();
        // second row makes the matrix [[1, 2], [2, 1]] with eigenvalues 3, −1
        let err = l.push_row(&[2.0], 1.0).unwrap_err();
        assert!(err <= 0.0);
        assert_eq!(l.len(), 1, "failed append must not modify the factor");
    }
}
