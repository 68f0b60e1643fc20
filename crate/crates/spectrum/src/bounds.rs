use crate::decay::DecayClass;
use crate::error::{Error, Result};

/// A bound value together with whether its guarantee's preconditions hold.
///
/// Some growth bounds remain computable outside their guarantee region; the
/// flag records the distinction so downstream reports never claim more than
/// the theory supports.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub guarantee_applies: bool,
    pub note: Option<String>,
}

/// Growth bound on the maximal information gain `Γ(T)` after `T` points,
/// scaled by the calibration constant `c_k`:
///
/// * finite spectrum of size `D`: `c_k · D · ln T`;
/// * exponential decay `γ`: `c_k · (ln T)^{1 + 1/γ}`;
/// * polynomial decay `γ` in dimension `d`: `c_k · T^{(d+1)/(γ+d)} · ln T`,
///   whose guarantee needs `γ ≥ 2 + 1/d`.
///
/// # Example
///
/// ```
/// use spectrum::{info_gain_bound, DecayClass};
/// let decay = DecayClass::finite(6).unwrap();
/// let b = info_gain_bound(&decay, 100.0, 1.0).unwrap();
/// assert!((b.value - 6.0 * 100.0f64.ln()).abs() < 1e-12);
/// assert!(b.guarantee_applies);
/// ```
pub fn info_gain_bound(decay: &DecayClass, t: f64, c_k: f64) -> Result<BoundReport> {
    if !t.is_finite() || t <= 1.0 {
        return Err(Error::InvalidParameter(format!("need T > 1, got {t}")));
    }
    if !c_k.is_finite() || c_k <= 0.0 {
        return Err(Error::InvalidParameter(format!("need c_k > 0, got {c_k}")));
    }
    let log_t = t.ln();
    match decay {
        DecayClass::Finite { count } => Ok(BoundReport {
            value: c_k * *count as f64 * log_t,
            guarantee_applies: true,
            note: None,
        }),
        DecayClass::Exponential { gamma, .. } => Ok(BoundReport {
            value: c_k * log_t.powf(1.0 + 1.0 / gamma),
            guarantee_applies: true,
            note: None,
        }),
        DecayClass::Polynomial { gamma, d, .. } => {
            let df = *d as f64;
            let exponent = (df + 1.0) / (gamma + df);
            let ok = *gamma >= 2.0 + 1.0 / df;
            Ok(BoundReport {
                value: c_k * t.powf(exponent) * log_t,
                guarantee_applies: ok,
                note: (!ok).then(|| {
                    format!("polynomial info-gain growth needs γ ≥ 2 + 1/d = {}", 2.0 + 1.0 / df)
                }),
            })
        }
    }
}

/// Log-covering-number bound `ln N(ε)` of the optimistic value class with
/// regression-ball radius `R` and bonus-multiplier range `B`, scaled by
/// `c_n`. Requires `ε ∈ (0, 1/e)` so every logarithm is positive.
///
/// Branches:
///
/// * finite `D`: `c_n D [1 + ln(R/ε)] + c_n D² [1 + ln(B/ε)]`;
/// * exponential `γ`: `c_n [1 + ln(R/ε)]^{1+1/γ} + c_n [1 + ln(B/ε)]^{1+2/γ}`;
/// * polynomial `γ, τ`: `c_n (R/ε)^{2/(γ(1−2τ)−1)} [1 + ln(R/ε)] +
///   c_n (B/ε)^{4/(γ(1−2τ)−1)} [1 + ln(B/ε)]`, defined only when
///   `γ(1−2τ) > 1`.
///
/// # Example
///
/// ```
/// use spectrum::{covering_bound, DecayClass};
/// // γ = 1, R/ε = B/ε = e: 2² + 2³ = 12
/// let decay = DecayClass::exponential(1.0).unwrap();
/// let eps = 0.1;
/// let v = covering_bound(&decay, eps, eps * 1.0f64.exp(), eps * 1.0f64.exp(), 1.0).unwrap();
/// assert!((v - 12.0).abs() < 1e-9);
/// ```
pub fn covering_bound(decay: &DecayClass, eps: f64, r: f64, b: f64, c_n: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 || eps >= (-1.0f64).exp() {
        return Err(Error::InvalidParameter(format!(
            "covering scale must lie in (0, 1/e), got {eps}"
        )));
    }
    if !r.is_finite() || !b.is_finite() || r <= 0.0 || b <= 0.0 {
        return Err(Error::InvalidParameter("radii R and B must be positive".into()));
    }
    if !c_n.is_finite() || c_n <= 0.0 {
        return Err(Error::InvalidParameter(format!("need c_n > 0, got {c_n}")));
    }
    let lr = 1.0 + (r / eps).ln();
    let lb = 1.0 + (b / eps).ln();
    match decay {
        DecayClass::Finite { count } => {
            let dd = *count as f64;
            Ok(c_n * dd * lr + c_n * dd * dd * lb)
        }
        DecayClass::Exponential { gamma, .. } => {
            Ok(c_n * lr.powf(1.0 + 1.0 / gamma) + c_n * lb.powf(1.0 + 2.0 / gamma))
        }
        DecayClass::Polynomial { gamma, tau, .. } => {
            let kappa = gamma * (1.0 - 2.0 * tau);
            if kappa <= 1.0 {
                return Err(Error::Infeasible(format!(
                    "polynomial covering bound needs γ(1−2τ) > 1, got {kappa}"
                )));
            }
            let e1 = 2.0 / (kappa - 1.0);
            let e2 = 4.0 / (kappa - 1.0);
            Ok(c_n * (r / eps).powf(e1) * lr + c_n * (b / eps).powf(e2) * lb)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finite_info_gain() {
        let d = DecayClass::finite(4).unwrap();
        let b = info_gain_bound(&d, 1000.0, 2.0).unwrap();
        assert_abs_diff_eq!(b.value, 2.0 * 4.0 * 1000.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn exponential_info_gain() {
        let d = DecayClass::exponential(0.5).unwrap();
        let b = info_gain_bound(&d, 100.0, 1.0).unwrap();
        assert_abs_diff_eq!(b.value, 100.0f64.ln().powi(3), epsilon = 1e-10);
        assert!(b.guarantee_applies);
    }

    #[test]
    fn polynomial_info_gain_flags_precondition() {
        // γ = 4 ≥ 2 + 1/3: fine
        let good = DecayClass::polynomial(4.0, 3).unwrap();
        let b = info_gain_bound(&good, 100.0, 1.0).unwrap();
        assert!(b.guarantee_applies);
        assert_abs_diff_eq!(b.value, 100.0f64.powf(4.0 / 7.0) * 100.0f64.ln(), epsilon = 1e-10);
        // γ = 2 < 2 + 1/3: computable, not guaranteed
        let edge = DecayClass::polynomial(2.0, 3).unwrap();
        let b = info_gain_bound(&edge, 100.0, 1.0).unwrap();
        assert!(!b.guarantee_applies);
        assert!(b.note.is_some());
    }

    #[test]
    fn covering_branches() {
        // finite: D = 2, R/ε = B/ε = e: 2·2 + 4·2 = 12
        let fin = DecayClass::finite(2).unwrap();
        let eps = 0.05;
        let e = 1.0f64.exp();
        assert_abs_diff_eq!(
            covering_bound(&fin, eps, eps * e, eps * e, 1.0).unwrap(),
            12.0,
            epsilon = 1e-9
        );
        // polynomial infeasible when γ(1−2τ) ≤ 1
        let poly = DecayClass::polynomial_with_tau(1.2, 3, 0.2).unwrap(); // κ = 0.72
        assert!(matches!(
            covering_bound(&poly, eps, 1.0, 1.0, 1.0),
            Err(Error::Infeasible(_))
        ));
        // polynomial feasible spot value: γ = 3, τ = 0 → exponents 1 and 2
        let poly = DecayClass::polynomial(3.0, 3).unwrap();
        let v = covering_bound(&poly, eps, eps * e, eps * e, 1.0).unwrap();
        assert_abs_diff_eq!(v, e * 2.0 + e * e * 2.0, epsilon = 1e-9);
    }

    #[test]
    fn covering_rejects_bad_scale() {
        let d = DecayClass::finite(2).unwrap();
        assert!(covering_bound(&d, 0.5, 1.0, 1.0, 1.0).is_err()); // 0.5 > 1/e
        assert!(covering_bound(&d, 0.0, 1.0, 1.0, 1.0).is_err());
    }
}
