use kernel_core::Kernel;
use spectrum::{ClosedFormKernel, DecayClass};

use crate::error::{Error, Result};

/// A kernel together with the eigenvalue-decay class that calibrates its
/// bonus schedule (`None` when no canonical class applies, e.g. smoothed-ReLU
/// tangent kernels below three dimensions).
#[derive(Clone)]
pub struct NamedKernel {
    pub kernel: Kernel,
    pub decay: Option<DecayClass>,
}

/// Build a kernel from its textual id, given the embedding dimension `d`.
///
/// Recognized ids (parameters after `:`):
///
/// * `linear` — `k(x,z) = xᵀz`; finite spectrum of size `d`;
/// * `quadratic` — wide two-layer quadratic-activation tangent kernel
///   `(4/d)⟨x,z⟩²`; finite spectrum of size `d(d+1)/2`;
/// * `sine` — wide two-layer sine-activation tangent kernel `u·e^{u−1}`
///   with `u = ⟨x,z⟩`; exponential decay with `γ = 1/d`;
/// * `relu_power:<s>` — smoothed-ReLU tangent kernel of smoothness `s ≥ 1`;
///   polynomial decay (only defined for `d ≥ 3`);
/// * `se:<ℓ>` — squared-exponential with length scale `ℓ`;
/// * `matern:<2ν>:<ℓ>` — Matérn with `2ν ∈ {1, 3, 5}` and length scale `ℓ`.
///
/// The tangent-kernel profiles are exact on the unit sphere; the smoothed-
/// ReLU profile clamps `⟨x,z⟩` into `[−1, 1]` so slightly off-sphere inputs
/// stay inside its domain.
///
/// # Example
///
/// ```
/// use kovi::kernel_by_name;
/// let named = kernel_by_name("quadratic", 3).unwrap();
/// assert_eq!(named.kernel.feature_dim(), Some(6)); // d(d+1)/2
/// assert!(named.decay.is_some());
/// ```
pub fn kernel_by_name(name: &str, d: usize) -> Result<NamedKernel> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "embedding dimension must be positive".into(),
        ));
    }
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let expect_args = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "kernel '{head}' takes {n} parameter(s), got {}",
                args.len()
            )))
        }
    };
    let parse_f64 = |s: &str| -> Result<f64> {
        s.parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("'{s}' is not a number in kernel id '{name}'"))
        })
    };
    match head {
        "linear" => {
            expect_args(0)?;
            Ok(NamedKernel {
                kernel: Kernel::linear(),
                decay: Some(DecayClass::finite(d as u64)?),
            })
        }
        "quadratic" => {
            expect_args(0)?;
            Ok(NamedKernel {
                kernel: Kernel::quadratic_tangent(d),
                decay: Some(ClosedFormKernel::Quadratic { d }.canonical_decay_in(d)?),
            })
        }
        "sine" => {
            expect_args(0)?;
            let profile = ClosedFormKernel::Sine.profile();
            Ok(NamedKernel {
                kernel: Kernel::from_dot_product("sine_tangent", move |u| profile(u)),
                decay: Some(ClosedFormKernel::Sine.canonical_decay_in(d)?),
            })
        }
        "relu_power" => {
            expect_args(1)?;
            let s: u32 = args[0].parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "'{}' is not a valid smoothness in kernel id '{name}'",
                    args[0]
                ))
            })?;
            if s == 0 {
                return Err(Error::InvalidParameter(
                    "relu_power smoothness must be at least 1".into(),
                ));
            }
            let profile = ClosedFormKernel::ReluPower { s, d }.profile();
            Ok(NamedKernel {
                kernel: Kernel::from_dot_product(format!("relu_power_tangent(s={s})"), move |u| {
                    profile(u.clamp(-1.0, 1.0))
                }),
                decay: DecayClass::relu_tangent(s, d).ok(),
            })
        }
        "se" => {
            expect_args(1)?;
            let ls = parse_f64(args[0])?;
            if !ls.is_finite() || ls <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "length scale must be positive, got {ls}"
                )));
            }
            Ok(NamedKernel {
                kernel: Kernel::squared_exponential(ls),
                decay: Some(DecayClass::squared_exponential(d)?),
            })
        }
        "matern" => {
            expect_args(2)?;
            let nu2: u32 = args[0].parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "'{}' is not a valid 2ν in kernel id '{name}'",
                    args[0]
                ))
            })?;
            let ls = parse_f64(args[1])?;
            Ok(NamedKernel {
                kernel: Kernel::matern(nu2, ls)?,
                decay: Some(DecayClass::matern(nu2, d)?),
            })
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown kernel id '{other}'; expected one of linear, quadratic, sine, \
             relu_power:<s>, se:<l>, matern:<2v>:<l>"
        ))),
    }
}
