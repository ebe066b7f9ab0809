use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{log2_count, BigCount};
use crate::error::{domain, Error, Result};

/// Whether weights exactly at the unbalance limit are admitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `|w/n - 1/2| < a`
    #[default]
    Strict,
    /// `|w/n - 1/2| <= a`
    Inclusive,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "inclusive" => Ok(Self::Inclusive),
            other => Err(domain(format!("unknown boundary mode {other:?}"))),
        }
    }
}

/// Decides `|w/n - 1/2| < a` (or `<=`) on the integer-scaled form
/// `|2w - n|` versus `2an`.
///
/// Values within a relative `1e-9` of the limit are treated as ties, so a
/// decimal bound such as `a = 0.1` behaves as written rather than as its
/// binary approximation.
pub fn admits_weight(w: usize, n: usize, a: f64, boundary: Boundary) -> bool {
    let dev = (2.0 * w as f64 - n as f64).abs();
    let lim = 2.0 * a * n as f64;
    if (dev - lim).abs() <= 1e-9 * lim.max(1.0) {
        return boundary == Boundary::Inclusive;
    }
    dev < lim
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `N(w, n) = C(n, w) 2^n`: strands of length `n` with exactly `w` A/T.
pub fn binomial_weight_count(n: usize, w: usize) -> Result<BigCount> {
    if n < 1 {
        return Err(domain("strand length must be at least 1"));
    }
    if w > n {
        return Err(domain(format!("weight {w} exceeds length {n}")));
    }
    Ok(binomial(n, w) << n)
}

/// `N_a(n)`: strands of length `n` whose relative unbalance is within `a`.
pub fn near_balanced_count(n: usize, a: f64, boundary: Boundary) -> Result<BigCount> {
    if n < 1 {
        return Err(domain("strand length must be at least 1"));
    }
    if a.is_nan() || a < 0.0 {
        return Err(domain(format!("unbalance bound {a} must be non-negative")));
    }
    let mut row = BigUint::one();
    let mut sum = BigUint::zero();
    for w in 0..=n {
        if admits_weight(w, n, a, boundary) {
            sum += &row;
        }
        row = row * (n - w) / (w + 1);
    }
    Ok(sum << n)
}

/// `r(a, n) = 2n - log2 N_a(n)` in bits.
pub fn balance_redundancy(n: usize, a: f64, boundary: Boundary) -> Result<f64> {
    let count = near_balanced_count(n, a, boundary)?;
    if count.is_zero() {
        return Err(Error::UndefinedRedundancy(format!(
            "no strand of length {n} has relative unbalance within {a}"
        )));
    }
    Ok(2.0 * n as f64 - log2_count(&count))
}
