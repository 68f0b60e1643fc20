//! Spectral profile of a rotation-invariant kernel on the sphere, and the
//! growth/confidence schedules its eigenvalue decay implies.
//!
//! Run with: `cargo run -p spectrum --example spectrum_report`

use spectrum::{
    beta_schedule, info_gain_bound, ClosedFormKernel, DecayClass, QuadratureSettings,
    SpectrumTable,
};

fn main() -> spectrum::Result<()> {
    // --- Eigenvalues of the sine tangent kernel on S^2. --------------------
    let d = 3;
    let settings = QuadratureSettings::default();
    let table = SpectrumTable::compute_closed_form_in(&ClosedFormKernel::Sine, d, 8, &settings)?;
    println!("{} on S^{} (quadrature order {}):", table.kernel, d - 1, table.quadrature_order);
    for e in &table.entries {
        println!("  j = {}  rho_j = {:+.9e}  N(d,j) = {}", e.degree, e.eigenvalue, e.multiplicity);
    }
    println!(
        "Mercer diagonal sum = {:.9}  (profile at u=1: {:.9})",
        table.mercer_diagonal_sum(),
        ClosedFormKernel::Sine.eval(1.0)
    );

    // --- The decay class drives information-gain and confidence schedules. -
    let decay = ClosedFormKernel::Sine.canonical_decay_in(d)?;
    println!("\ncanonical decay class: {decay:?}");
    let (t, h) = (2000.0, 3.0);
    let gain = info_gain_bound(&decay, t, 1.0)?;
    println!("info-gain bound at T = {t}: {:.3} (guarantee applies: {})", gain.value, gain.guarantee_applies);
    let beta = beta_schedule(&decay, t, h, 0.05)?;
    println!("confidence width at T = {t}, H = {h}: beta = {:.4}", beta.beta);

    // A slowly-decaying polynomial spectrum by contrast: the schedule either
    // carries an exponent certificate or reports that no guarantee applies.
    let poly = DecayClass::polynomial(10.0, 1)?;
    let report = beta_schedule(&poly, t, h, 0.05)?;
    println!(
        "polynomial(gamma = 10, d = 1): beta = {:.4}, kappa* = {:?}, sublinear guarantee: {}",
        report.beta, report.kappa_star, report.sublinear_guarantee
    );

    // --- What infeasible inputs look like. ----------------------------------
    println!("\nerror displays:");
    println!("  {}", beta_schedule(&DecayClass::polynomial(2.5, 1)?, t, h, 0.05).unwrap_err());
    let tight = QuadratureSettings { initial_order: 2, max_order: 2, tol: 1e-14 };
    println!(
        "  {}",
        SpectrumTable::compute_closed_form_in(&ClosedFormKernel::Sine, 3, 6, &tight).unwrap_err()
    );

    Ok(())
}
