//! Capacities, leading coefficients, Gaussian weight models and the
//! redundancy/efficiency figures built on them.
//!
//! All quantities here are `f64`. Comparisons against exact counts go through
//! [`crate::counting::log2_count`] so nothing overflows for long words.

mod capacity;
mod gamma;
mod gaussian;
mod rates;
mod redundancy;

pub use capacity::{
    capacity, characteristic_polynomial, leading_coefficient, rll_count_approx, CapacityResult,
};
pub use gamma::{
    binary_runlengths, gamma_binary, gamma_quaternary, quaternary_runlengths,
    RunlengthDistribution,
};
pub use gaussian::{
    gaussian_model, gaussian_weight_approx, near_balanced_approx, q_function, GaussianApprox,
    VarianceModel, WeightFamily,
};
pub use rates::{
    floor_log2, state_dependent_rate, state_independent_rate, state_table_size, two_mode_rate,
    BlockRate,
};
pub use redundancy::{balance_penalty, combined_redundancy, efficiency_eta, rll_redundancy, Mode};
