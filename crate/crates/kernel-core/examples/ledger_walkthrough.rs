//! Streaming ridge-regression walkthrough: append points one at a time,
//! watch the exploration bonus shrink, and check that the per-append
//! ledger reproduces the batch information gain.
//!
//! Run with: `cargo run -p kernel-core --example ledger_walkthrough`

use kernel_core::{DataBlock, Kernel, PrimalRidge};

fn main() -> kernel_core::Result<()> {
    // --- Dual route: squared-exponential kernel, streaming appends. -------
    let lam = 1.0;
    let mut block = DataBlock::new(Kernel::squared_exponential(0.8), lam)?;

    let points = [
        vec![0.0, 0.0],
        vec![0.3, -0.2],
        vec![0.9, 0.4],
        vec![0.31, -0.19], // near-duplicate of the second point
    ];

    println!("appending {} points (lambda = {lam}):", points.len());
    for p in &points {
        let s = block.append(p)?;
        println!(
            "  #{}  pre-bonus^2 = {:.6}  post-bonus^2 = {:.6}  dGamma = {:.6}  jitter = {:.1e}",
            s.index, s.pre_bonus_sq, s.post_bonus_sq, s.info_gain_increment, s.jitter
        );
    }

    let ledger_sum: f64 = block.ledger().iter().map(|s| s.info_gain_increment).sum();
    println!("ledger sum        = {:.12}", ledger_sum);
    println!("direct info gain  = {:.12}", block.info_gain());

    // Posterior mean and bonus at a query point.
    let y = [0.5, 0.1, -0.4, 0.12];
    let alpha = block.solve(&y);
    let q = [0.5, 0.0];
    println!(
        "query {q:?}: mean = {:+.6}, bonus = {:.6}",
        block.predict(&alpha, &q),
        block.bonus(&q)
    );

    // --- Primal route agrees with the dual route. --------------------------
    // The quadratic tangent kernel has an explicit finite feature map, so the
    // same posterior can be maintained as a d(d+1)/2-dimensional ridge.
    let quad = Kernel::quadratic_tangent(3);
    let p = quad.feature_dim().expect("quadratic tangent kernel has explicit features");
    let mut primal = PrimalRidge::new(p, lam)?;
    let mut dual = DataBlock::new(quad.clone(), lam)?;
    let sphere3 = [
        vec![1.0, 0.0, 0.0],
        vec![0.0, 0.6, 0.8],
        vec![-0.48, 0.6, 0.64],
    ];
    for x in &sphere3 {
        primal.append(&quad.features(x).unwrap());
        dual.append(x)?;
    }
    let q3 = [0.36, -0.48, 0.8];
    let d_bonus = dual.bonus(&q3);
    let p_bonus = primal.bonus(&quad.features(&q3).unwrap());
    println!(
        "dual bonus = {d_bonus:.12}, primal bonus = {p_bonus:.12}, |diff| = {:.2e}",
        (d_bonus - p_bonus).abs()
    );
    println!(
        "dual info gain = {:.12}, primal info gain = {:.12}",
        dual.info_gain(),
        primal.info_gain()
    );

    // --- What invalid configuration looks like. ----------------------------
    println!("\nerror displays:");
    println!("  {}", Kernel::matern(4, 1.0).unwrap_err());
    println!("  {}", DataBlock::new(Kernel::linear(), 0.0).unwrap_err());
    let mut b = DataBlock::new(Kernel::linear(), 1.0)?;
    b.append(&[1.0, 2.0])?;
    println!("  {}", b.append(&[1.0]).unwrap_err());

    Ok(())
}
