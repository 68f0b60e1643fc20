//! Property tests tying the quadrature, polynomial, and eigenvalue layers
//! together: exactness on polynomials, positivity for PSD profiles, and the
//! Mercer diagonal identity.

use proptest::prelude::*;
use spectrum::{eigenvalue, multiplicity, GaussJacobi, QuadratureSettings};
use statrs::function::gamma::ln_gamma;

/// ∫_{−1}^{1} u^{2k} (1−u²)^a du = Γ(k+½)Γ(a+1)/Γ(k+a+3/2) (Beta moment).
fn even_moment(k: usize, a: f64) -> f64 {
    (ln_gamma(k as f64 + 0.5) + ln_gamma(a + 1.0) - ln_gamma(k as f64 + a + 1.5)).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Gauss–Jacobi with n nodes integrates monomials up to degree 2n−1
    /// exactly (odd ones vanish by symmetry).
    #[test]
    fn quadrature_is_exact_on_polynomials(
        n in 2usize..12,
        k in 0usize..8,
        a_idx in 0usize..4,
    ) {
        let a = [-0.5, 0.0, 0.5, 1.5][a_idx];
        prop_assume!(k < n);
        let rule = GaussJacobi::new(a, n).unwrap();
        let got = rule.integrate(|u| u.powi(2 * k as i32));
        let want = even_moment(k, a);
        prop_assert!((got - want).abs() < 1e-12 * want.max(1.0),
            "n={n} k={k} a={a}: {got} vs {want}");
        let odd = rule.integrate(|u| u.powi(2 * k as i32 + 1));
        prop_assert!(odd.abs() < 1e-12, "odd moment {odd}");
    }

    /// Profiles that are positive combinations of inner-product powers are
    /// positive definite on the sphere, so every eigenvalue is ≥ −ε.
    #[test]
    fn psd_profiles_have_nonnegative_eigenvalues(
        c in prop::collection::vec(0.0f64..1.0, 1..5),
        d in 3usize..6,
        j in 0usize..8,
    ) {
        let profile = move |u: f64| -> f64 {
            c.iter().enumerate().map(|(p, ci)| ci * u.powi(p as i32)).sum()
        };
        let rho = eigenvalue(&profile, d, j, &QuadratureSettings::default()).unwrap();
        prop_assert!(rho.value >= -1e-10, "ρ_{j} = {} < 0 in d={d}", rho.value);
    }

    /// Mercer diagonal: for a polynomial profile of degree p, the spectrum is
    /// supported on degrees ≤ p and Σ_j ρ_j N(d,j) = k(1).
    #[test]
    fn mercer_diagonal_matches_profile_at_one(
        c in prop::collection::vec(0.0f64..1.0, 1..5),
        d in 3usize..6,
    ) {
        let deg = c.len() - 1;
        let c2 = c.clone();
        let profile = move |u: f64| -> f64 {
            c2.iter().enumerate().map(|(p, ci)| ci * u.powi(p as i32)).sum()
        };
        let mut total = 0.0;
        for j in 0..=deg {
            let rho = eigenvalue(&profile, d, j, &QuadratureSettings::default()).unwrap();
            total += rho.value * multiplicity(d, j).unwrap() as f64;
        }
        let at_one: f64 = c.iter().sum();
        prop_assert!((total - at_one).abs() < 1e-8,
            "Σ ρ N = {total} vs k(1) = {at_one}");
    }

    /// Degrees above the polynomial degree carry no spectrum.
    #[test]
    fn high_degrees_vanish_for_polynomials(
        p in 0usize..4,
        d in 3usize..6,
        extra in 1usize..4,
    ) {
        let profile = move |u: f64| u.powi(p as i32);
        let rho = eigenvalue(&profile, d, p + extra, &QuadratureSettings::default()).unwrap();
        prop_assert!(rho.value.abs() < 1e-12, "ρ_{} = {}", p + extra, rho.value);
    }
}
