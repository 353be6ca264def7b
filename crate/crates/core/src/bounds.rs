//! Moore-type order bound and diagonal Ramsey values.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Result};
use crate::matrix::Rat;

/// `f(d, r) = (1 + ((r-1)^d - 1) r) / (r - 2)`, the upper bound on the
/// order of a graph with diameter `d` and maximum degree `r`.
///
/// The formula has a pole at `r = 2`; callers handle `r <= 2` (paths and
/// cycles) separately.
pub fn moore_bound(d: u32, r: u64) -> Result<Rat> {
    if r < 3 {
        return Err(domain(format!("moore_bound requires r >= 3, got {r}")));
    }
    if d < 1 {
        return Err(domain("moore_bound requires d >= 1".to_string()));
    }
    let rb = BigInt::from(r);
    let num = BigInt::one() + ((&rb - BigInt::one()).pow(d) - BigInt::one()) * &rb;
    Ok(Rat::new(num, &rb - 2))
}

/// Diagonal Ramsey number `R(k, k)`: the known values 2, 6, 18 for
/// `k in {2,3,4}` with `exact = true`, otherwise the binomial upper bound
/// `C(2k-2, k-1)` with `exact = false`.
pub fn ramsey_value(k: u64) -> Result<(u128, bool)> {
    if k < 2 {
        return Err(domain(format!("ramsey_value requires k >= 2, got {k}")));
    }
    match k {
        2 => Ok((2, true)),
        3 => Ok((6, true)),
        4 => Ok((18, true)),
        _ => Ok((binomial(2 * k - 2, k - 1)?, false)),
    }
}

fn binomial(n: u64, k: u64) -> Result<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or_else(|| domain("binomial bound exceeds u128".to_string()))?
            / i as u128;
    }
    Ok(acc)
}
