//! Property tests for the regression substrate: the incremental factor must
//! agree with batch factorizations, the dual and primal routes must agree
//! wherever both exist, and the append ledger must tie bonuses to
//! information-gain increments.

use kernel_core::{empirical_info_gain, DataBlock, Kernel, PrimalRidge};
use nalgebra::DVector;
use proptest::prelude::*;

fn point_strategy(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, dim)
}

fn points_strategy(dim: usize, max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(point_strategy(dim), 1..max_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Incrementally built factor reproduces `K + λI` (checked through the
    /// batch Cholesky of the dense Gram matrix).
    #[test]
    fn incremental_factor_matches_batch(pts in points_strategy(3, 12), lam in 0.05f64..2.0) {
        let kernel = Kernel::squared_exponential(0.8);
        let mut block = DataBlock::new(kernel.clone(), lam).unwrap();
        for p in &pts {
            block.append(p).unwrap();
        }
        let n = pts.len();
        let mut g = kernel.gram(&pts);
        for i in 0..n {
            g[(i, i)] += lam;
        }
        let batch = g.cholesky().expect("ridge Gram is SPD");
        let lb = batch.l();
        for i in 0..n {
            for j in 0..=i {
                let inc = block.factor();
                // read through solve: compare rows via diag + solve consistency
                let _ = inc;
                prop_assert!((lb[(i, j)] - factor_entry(&block, i, j)).abs() < 1e-9,
                    "factor entry ({},{}) diverged", i, j);
            }
        }
    }

    /// Ridge solve satisfies `(K + λI) α = y` to high accuracy.
    #[test]
    fn solve_residual_is_small(pts in points_strategy(3, 12), lam in 0.05f64..2.0) {
        let kernel = Kernel::squared_exponential(1.2);
        let mut block = DataBlock::new(kernel.clone(), lam).unwrap();
        for p in &pts {
            block.append(p).unwrap();
        }
        let n = pts.len();
        let y: Vec<f64> = (0..n).map(|i| ((i * 7919 % 13) as f64) / 13.0 - 0.5).collect();
        let alpha = block.solve(&y);
        let mut g = kernel.gram(&pts);
        for i in 0..n {
            g[(i, i)] += lam;
        }
        let resid = &g * DVector::from_vec(alpha) - DVector::from_vec(y);
        prop_assert!(resid.amax() < 1e-9, "solve residual {}", resid.amax());
    }

    /// Ledger identity through the public API: the squared bonus queried
    /// *before* an append determines the information-gain increment.
    #[test]
    fn ledger_ties_bonus_to_info_gain(pts in points_strategy(2, 16), lam in 0.05f64..2.0) {
        let kernel = Kernel::squared_exponential(0.6);
        let mut block = DataBlock::new(kernel, lam).unwrap();
        for p in &pts {
            let pre_sq = block.bonus_sq(p);
            let before = block.info_gain();
            let stats = block.append(p).unwrap();
            let after = block.info_gain();
            prop_assert!(stats.jitter == 0.0);
            prop_assert!((stats.pre_bonus_sq - pre_sq).abs() < 1e-10,
                "ledger pre-bonus {} vs queried {}", stats.pre_bonus_sq, pre_sq);
            prop_assert!(((after - before) - 0.5 * (1.0 + pre_sq).ln()).abs() < 1e-10,
                "increment {} vs ½ln(1+b²) {}", after - before, 0.5 * (1.0 + pre_sq).ln());
            // post-append bonus at the same point matches the rank-one formula
            let post_sq = block.bonus_sq(p);
            prop_assert!((post_sq - pre_sq / (1.0 + pre_sq)).abs() < 1e-9,
                "post bonus {} vs pre/(1+pre) {}", post_sq, pre_sq / (1.0 + pre_sq));
        }
    }

    /// Information gain from the factor equals the eigenvalue formula
    /// `½ Σ ln(1 + μᵢ/λ)` on the dense Gram matrix.
    #[test]
    fn info_gain_matches_eigenvalues(pts in points_strategy(3, 10), lam in 0.1f64..2.0) {
        let kernel = Kernel::squared_exponential(0.9);
        let gamma = empirical_info_gain(&kernel, &pts, lam).unwrap();
        let g = kernel.gram(&pts);
        let eig = g.symmetric_eigen();
        let direct: f64 = eig.eigenvalues.iter()
            .map(|&mu| 0.5 * (1.0 + mu.max(0.0) / lam).ln())
            .sum();
        prop_assert!((gamma - direct).abs() < 1e-9, "{gamma} vs {direct}");
    }

    /// More data never increases the bonus at a fixed query point.
    #[test]
    fn bonus_is_monotone_in_data(pts in points_strategy(2, 10), q in point_strategy(2)) {
        let mut block = DataBlock::new(Kernel::squared_exponential(0.7), 0.5).unwrap();
        let mut prev = block.bonus_sq(&q);
        for p in &pts {
            block.append(p).unwrap();
            let cur = block.bonus_sq(&q);
            prop_assert!(cur <= prev + 1e-10, "bonus grew from {prev} to {cur}");
            prev = cur;
        }
    }

    /// Dual and primal routes agree on predictions, bonuses, and information
    /// gain for a kernel with an explicit feature map.
    #[test]
    fn primal_and_dual_routes_agree(pts in points_strategy(3, 12), lam in 0.1f64..2.0) {
        let kernel = Kernel::quadratic_tangent(3);
        let p_dim = 6; // 3·4/2
        let mut dual = DataBlock::new(kernel.clone(), lam).unwrap();
        let mut primal = PrimalRidge::new(p_dim, lam).unwrap();
        for p in &pts {
            dual.append(p).unwrap();
            primal.append(&kernel.features(p).unwrap());
        }
        let n = pts.len();
        let y: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let alpha = dual.solve(&y);
        let w = primal.weights(&y);
        let queries = [vec![0.5, -0.5, 1.0], vec![1.5, 0.0, -0.3], vec![0.0, 0.0, 2.0]];
        for q in &queries {
            let phi = kernel.features(q).unwrap();
            let pd = dual.predict(&alpha, q);
            let pp = primal.predict(&w, &phi);
            prop_assert!((pd - pp).abs() < 1e-8, "prediction dual {pd} vs primal {pp}");
            let bd = dual.bonus_sq(q);
            let bp = primal.bonus_sq(&phi);
            prop_assert!((bd - bp).abs() < 1e-8, "bonus² dual {bd} vs primal {bp}");
        }
        prop_assert!((dual.info_gain() - primal.info_gain()).abs() < 1e-8,
            "info gain dual {} vs primal {}", dual.info_gain(), primal.info_gain());
    }
}

/// Row `i` of the incremental factor, recovered through the public API:
/// forward-solving column `i` of `K + λI` yields `Lᵀ eᵢ`, whose entry `j`
/// is `L[i][j]`.
fn factor_entry(block: &DataBlock, i: usize, j: usize) -> f64 {
    let n = block.len();
    let kernel = block.kernel();
    let pts = block.points();
    let mut col = vec![0.0; n];
    for r in 0..n {
        col[r] = kernel.eval(&pts[r], &pts[i]);
    }
    col[i] += block.lambda();
    let w = block.factor().solve_lower(&col);
    w[j]
}

/// Dual/primal agreement with the identity feature map (linear kernel),
/// pinned at a handful of deterministic datasets.
#[test]
fn linear_kernel_primal_dual_pinned() {
    let kernel = Kernel::linear();
    let pts = vec![
        vec![1.0, 0.0, 0.0, 0.5],
        vec![0.0, 1.0, -0.5, 0.0],
        vec![0.3, 0.3, 0.3, 0.3],
        vec![-0.2, 0.8, 0.1, -0.6],
    ];
    let lam = 0.7;
    let mut dual = DataBlock::new(kernel.clone(), lam).unwrap();
    let mut primal = PrimalRidge::new(4, lam).unwrap();
    for p in &pts {
        dual.append(p).unwrap();
        primal.append(p);
    }
    let y = [1.0, -1.0, 0.25, 0.5];
    let alpha = dual.solve(&y);
    let w = primal.weights(&y);
    for q in &pts {
        assert!((dual.predict(&alpha, q) - primal.predict(&w, q)).abs() < 1e-12);
        assert!((dual.bonus_sq(q) - primal.bonus_sq(q)).abs() < 1e-12);
    }
    assert!((dual.info_gain() - primal.info_gain()).abs() < 1e-12);
}
