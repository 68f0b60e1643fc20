use crate::error::{Error, Result};

/// Dimension `N(d, j)` of the space of degree-`j` spherical harmonics on
/// `S^{d−1}`:
///
/// ```text
/// N(d, 0) = 1,
/// N(d, j) = (2j + d − 2) (d + j − 3)! / (j! (d − 2)!)   for j ≥ 1, d ≥ 3,
/// N(2, j) = 2                                            for j ≥ 1.
/// ```
///
/// Computed with 128-bit intermediate products and an explicit overflow
/// error instead of wrapping.
///
/// # Example
///
/// ```
/// use spectrum::multiplicity;
/// assert_eq!(multiplicity(3, 4).unwrap(), 9);      // 2j + 1 on S²
/// assert_eq!(multiplicity(4, 3).unwrap(), 16);     // (j + 1)² on S³
/// assert_eq!(multiplicity(5, 2).unwrap(), 14);
/// ```
pub fn multiplicity(d: usize, j: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "ambient dimension must be at least 2, got {d}"
        )));
    }
    if j == 0 {
        return Ok(1);
    }
    if d == 2 {
        return Ok(2);
    }
    // (2j + d − 2) · C(d + j − 3, j) / (d − 2), computed as binomial first
    let binom = binomial_u128(d + j - 3, j).ok_or_else(|| Error::Overflow(format!("N({d},{j})")))?;
    let lead = (2 * j + d - 2) as u128;
    let num = lead.checked_mul(binom).ok_or_else(|| Error::Overflow(format!("N({d},{j})")))?;
    let den = (d - 2) as u128;
    debug_assert_eq!(num % den, 0, "multiplicity must be an integer");
    let val = num / den;
    u64::try_from(val).map_err(|_| Error::Overflow(format!("N({d},{j})")))
}

/// Binomial coefficient with 128-bit accumulation; `None` on overflow.
fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}
