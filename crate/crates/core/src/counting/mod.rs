//! Exact enumeration of balance- and runlength-constrained sequences.
//!
//! Every count is an arbitrary-precision integer; nothing in this module
//! touches floating point except the final `log2` used for redundancies.

mod balance;
mod rll;
pub mod series;
pub mod transfer;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use balance::{
    admits_weight, balance_redundancy, binomial, binomial_weight_count, near_balanced_count,
    Boundary,
};
pub use rll::{
    rll_count, rll_count_gf, rll_counts, rll_weight_count_binary, rll_weight_count_quaternary,
    weight_profile, Alphabet, WeightProfile,
};
pub use series::{BiSeries, TruncatedSeries};
pub use transfer::TransferMatrix;

/// Exact non-negative sequence count.
pub type BigCount = BigUint;

/// `log2(v)` for an arbitrarily large count; `-inf` for zero.
pub fn log2_count(v: &BigCount) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return v.to_u64().map_or(f64::NAN, |x| (x as f64).log2());
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}
