//! Up-front cost estimates, so oversized requests fail before any heavy
//! computation starts.

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;

/// Maximum number of monomials of a single degree in the polynomials a
/// computation is predicted to touch.
pub const MONOMIAL_LIMIT: u64 = 100_000;

/// Largest single exponent allowed anywhere.
pub const EXPONENT_LIMIT: u64 = 1 << 20;

/// Number of monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u64) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    // C(d + n - 1, n - 1), saturating
    let k = (n - 1) as u64;
    let mut acc: u128 = 1;
    for j in 1..=k {
        acc = acc * u128::from(d + j) / u128::from(j);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

fn pow_checked(p: u64, e: u64) -> Option<u64> {
    u32::try_from(e).ok().and_then(|e| p.checked_pow(e))
}

/// Degree of the largest determinant built for the frame, `p + p^2 + ... + p^n`.
pub fn frame_degree(field: PrimeField, n: usize) -> Option<u64> {
    let p = u64::from(field.characteristic());
    (1..=n as u64).try_fold(0u64, |acc, k| acc.checked_add(pow_checked(p, k)?))
}

pub fn check_frame(field: PrimeField, n: usize) -> Result<()> {
    let what = format!("Dickson frame for p={}, n={n}", field.characteristic());
    let degree = frame_degree(field, n).ok_or_else(|| AlgebraError::Budget {
        what: what.clone(),
        estimate: u64::MAX,
        limit: MONOMIAL_LIMIT,
    })?;
    if degree > EXPONENT_LIMIT {
        return Err(AlgebraError::Budget {
            what: format!("{what}: degree"),
            estimate: degree,
            limit: EXPONENT_LIMIT,
        });
    }
    let estimate = monomials_of_degree(n, degree);
    if estimate > MONOMIAL_LIMIT {
        return Err(AlgebraError::Budget {
            what: format!("{what}: monomials of degree {degree}"),
            estimate,
            limit: MONOMIAL_LIMIT,
        });
    }
    Ok(())
}

/// Checks that iterating the `i`-th primitive `max_m` times on `Q_{n,0}` stays
/// within budget.
pub fn check_cell(field: PrimeField, n: usize, i: u32, max_m: u32) -> Result<()> {
    check_frame(field, n)?;
    let p = u64::from(field.characteristic());
    let what = format!("cell p={p}, n={n}, i={i}, m<={max_m}");
    let over = || AlgebraError::Budget {
        what: what.clone(),
        estimate: u64::MAX,
        limit: MONOMIAL_LIMIT,
    };
    let shift = pow_checked(p, u64::from(i)).ok_or_else(over)? - 1;
    let top = pow_checked(p, n as u64).ok_or_else(over)? - 1;
    // iterates reach degree deg Q0 + m (p^i - 1); the kernel family reaches
    // roughly p * deg Q0 + p^i
    let degree = shift
        .checked_mul(u64::from(max_m.max(1)))
        .and_then(|d| d.checked_add(top * (p + 1)))
        .ok_or_else(over)?;
    if degree > EXPONENT_LIMIT {
        return Err(AlgebraError::Budget {
            what: format!("{what}: degree"),
            estimate: degree,
            limit: EXPONENT_LIMIT,
        });
    }
    let estimate = monomials_of_degree(n, degree);
    if estimate > MONOMIAL_LIMIT {
        return Err(AlgebraError::Budget {
            what: format!("{what}: monomials of degree {degree}"),
            estimate,
            limit: MONOMIAL_LIMIT,
        });
    }
    Ok(())
}
