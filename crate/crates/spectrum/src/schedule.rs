use crate::bounds::{covering_bound, info_gain_bound};
use crate::decay::DecayClass;
use crate::error::{Error, Result};

/// An exploration-bonus multiplier and the context needed to interpret it.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaReport {
    /// The multiplier `β` itself (constant across a run).
    pub beta: f64,
    /// The `T`-exponent `κ*` of the polynomial branch (`None` elsewhere).
    pub kappa_star: Option<f64>,
    /// Whether these decay parameters come with a sublinear-regret guarantee
    /// (`κ* + ξ* < ½` in the polynomial branch, always true otherwise).
    pub sublinear_guarantee: bool,
    pub note: Option<String>,
}

/// The bonus-multiplier schedule as a function of the decay class, episode
/// budget `T`, horizon `H`, and calibration constant `c_b`:
///
/// * finite spectrum `D`: `β = c_b · D · H · √(ln(D·T·H))`;
/// * exponential decay `γ`: `β = c_b · H · √(ln(T·H)) · (ln T)^{1/γ}`;
/// * polynomial decay `γ, τ` in dimension `d`:
///   `β = c_b · H · ln(T·H) · T^{κ*}` with
///
///   ```text
///   κ* = max{ ξ*,  (2d+γ+1) / ((d+γ)(γ(1−2τ)−1)),  2 / (γ(1−2τ)−3) },
///   ξ* = (d+1) / (2(γ+d)),
///   ```
///
///   defined only when `γ(1−2τ) > 3`; the regret guarantee additionally
///   needs `κ* + ξ* < ½`, reported through `sublinear_guarantee`.
///
/// # Example
///
/// ```
/// use spectrum::{beta_schedule, DecayClass};
/// let decay = DecayClass::finite(4).unwrap();
/// let report = beta_schedule(&decay, 100.0, 2.0, 1.0).unwrap();
/// assert!((report.beta - 8.0 * 800.0f64.ln().sqrt()).abs() < 1e-10);
/// ```
pub fn beta_schedule(decay: &DecayClass, t: f64, h: f64, c_b: f64) -> Result<BetaReport> {
    if !(t > 1.0 && h >= 1.0 && c_b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need T > 1, H ≥ 1, c_b > 0; got T={t}, H={h}, c_b={c_b}"
        )));
    }
    match decay {
        DecayClass::Finite { count } => {
            let dd = *count as f64;
            Ok(BetaReport {
                beta: c_b * dd * h * (dd * t * h).ln().sqrt(),
                kappa_star: None,
                sublinear_guarantee: true,
                note: None,
            })
        }
        DecayClass::Exponential { gamma, .. } => Ok(BetaReport {
            beta: c_b * h * (t * h).ln().sqrt() * t.ln().powf(1.0 / gamma),
            kappa_star: None,
            sublinear_guarantee: true,
            note: None,
        }),
        DecayClass::Polynomial { gamma, d, tau, .. } => {
            let kappa = gamma * (1.0 - 2.0 * tau);
            if kappa <= 3.0 {
                return Err(Error::Infeasible(format!(
                    "polynomial bonus schedule needs γ(1−2τ) > 3, got {kappa}"
                )));
            }
            let df = *d as f64;
            let xi = (df + 1.0) / (2.0 * (gamma + df));
            let k2 = (2.0 * df + gamma + 1.0) / ((df + gamma) * (kappa - 1.0));
            let k3 = 2.0 / (kappa - 3.0);
            let kappa_star = xi.max(k2).max(k3);
            let sublinear = kappa_star + xi < 0.5;
            Ok(BetaReport {
                beta: c_b * h * (t * h).ln() * t.powf(kappa_star),
                kappa_star: Some(kappa_star),
                sublinear_guarantee: sublinear,
                note: (!sublinear).then(|| {
                    format!(
                        "κ* + ξ* = {:.4} ≥ ½: schedule defined, no sublinear-regret guarantee",
                        kappa_star + xi
                    )
                }),
            })
        }
    }
}

/// Outcome of a damped fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointReport {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Solve `x = map(x)` by damped iteration `x ← ½(x + map(x))` from `init`,
/// stopping when the relative step drops below `tol`.
///
/// The bonus multiplier's self-consistent form — `β` appears inside the
/// covering radius that `β` is computed from — is the intended use; see
/// [`implicit_beta`]. Exploratory: no convergence guarantee is claimed for
/// arbitrary maps, and the report says whether the tolerance was reached.
///
/// # Example
///
/// ```
/// use spectrum::fixed_point;
/// let r = fixed_point(|x| 0.5 * x + 1.0, 0.0, 100, 1e-12);
/// assert!(r.converged && (r.value - 2.0).abs() < 1e-9);
/// ```
pub fn fixed_point(
    map: impl Fn(f64) -> f64,
    init: f64,
    max_iters: usize,
    tol: f64,
) -> FixedPointReport {
    let mut x = init;
    for it in 1..=max_iters {
        let next = 0.5 * (x + map(x));
        let step = (next - x).abs();
        x = next;
        if !x.is_finite() {
            return FixedPointReport { value: x, converged: false, iterations: it };
        }
        if step <= tol * x.abs().max(1.0) {
            return FixedPointReport { value: x, converged: true, iterations: it };
        }
    }
    FixedPointReport { value: x, converged: false, iterations: max_iters }
}

/// Self-consistent bonus multiplier: the smallest `B` with
///
/// ```text
/// B = c_b · H · √( Γ̄(T) + ln N(ε*; R_T, 2B) + 2 ln(2TH/p) + 1 )
/// ```
///
/// where `Γ̄` is the information-gain bound for the decay class,
/// `ε* = min(1/T, 1/(2e))`, and `R_T = 2H√(T/λ)` is the natural radius of
/// the regression ball. Solved by damped fixed-point iteration from
/// `B₀ = H`.
///
/// Exploratory utility: the shape follows the standard self-bounding
/// construction, but no claim is made about the constants; use
/// [`beta_schedule`] for the closed-form branches.
pub fn implicit_beta(
    decay: &DecayClass,
    t: f64,
    h: f64,
    lambda: f64,
    prob: f64,
    c_b: f64,
) -> Result<FixedPointReport> {
    if !(lambda > 0.0 && prob > 0.0 && prob < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need λ > 0 and p ∈ (0,1); got λ={lambda}, p={prob}"
        )));
    }
    let gain = info_gain_bound(decay, t, 1.0)?.value;
    let eps = (1.0 / t).min(0.5 * (-1.0f64).exp());
    let r_t = 2.0 * h * (t / lambda).sqrt();
    let tail = 2.0 * (2.0 * t * h / prob).ln();
    // probe the map once so parameter problems surface as errors, not NaNs
    covering_bound(decay, eps, r_t, 2.0 * h.max(1.0), 1.0)?;
    let map = |b: f64| {
        let cover = covering_bound(decay, eps, r_t, (2.0 * b).max(eps * 2.0), 1.0)
            .unwrap_or(f64::INFINITY);
        c_b * h * (gain + cover + tail + 1.0).max(0.0).sqrt()
    };
    Ok(fixed_point(map, h, 200, 1e-10))
}
