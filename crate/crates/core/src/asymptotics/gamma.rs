//! Variance factors of the weight distribution of maxentropic runlength
//! limited sequences.
//!
//! For a sequence of alternating runs with length distribution `P(k)` and
//! mean `l`, the weight of a length-`n` word is asymptotically Gaussian with
//! variance `gamma * n / 4`, where `gamma = (1/l) sum (k - l)^2 P(k)`.

use super::capacity::capacity;
use crate::error::{domain, Error, Result};

const MASS_TOL: f64 = 1e-12;
const TERM_FLOOR: f64 = 1e-15;
const MAX_RUN_TERMS: usize = 100_000;

/// Runlength probabilities `P(k)` truncated at `truncation_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunlengthDistribution {
    pub probs: Vec<(usize, f64)>,
    pub truncation_k: usize,
    pub mean_runlength: f64,
}

impl RunlengthDistribution {
    fn from_probs(probs: Vec<(usize, f64)>) -> Result<Self> {
        let mass: f64 = probs.iter().map(|&(_, p)| p).sum();
        if (mass - 1.0).abs() > MASS_TOL || probs.iter().any(|&(_, p)| p < 0.0) {
            return Err(Error::Numeric(format!(
                "runlength probabilities sum to {mass}, expected 1"
            )));
        }
        let truncation_k = probs.last().map_or(0, |&(k, _)| k);
        let mean_runlength = probs.iter().map(|&(k, p)| k as f64 * p).sum();
        Ok(Self {
            probs,
            truncation_k,
            mean_runlength,
        })
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().map(|&(_, p)| p).sum()
    }

    pub fn variance(&self) -> f64 {
        let l = self.mean_runlength;
        self.probs
            .iter()
            .map(|&(k, p)| (k as f64 - l).powi(2) * p)
            .sum()
    }

    /// `gamma = variance / mean`.
    pub fn gamma(&self) -> f64 {
        self.variance() / self.mean_runlength
    }
}

/// Run lengths of a maxentropic binary sequence: `P(k) = lambda_2^{-k}`,
/// `1 <= k <= m`.
pub fn binary_runlengths(m: usize) -> Result<RunlengthDistribution> {
    if m < 2 {
        return Err(domain("binary run distribution needs m >= 2"));
    }
    let lambda = capacity(2, m)?.lambda;
    let mut probs = Vec::new();
    let mut p = 1.0;
    for k in 1..=m {
        p /= lambda;
        probs.push((k, p));
        // Only reachable for very large m, where lambda is essentially 2.
        if p < TERM_FLOOR * 1e-3 && k > 64 {
            break;
        }
    }
    RunlengthDistribution::from_probs(probs)
}

/// `gamma_2(m)`.
pub fn gamma_binary(m: usize) -> Result<f64> {
    Ok(binary_runlengths(m)?.gamma())
}

/// Lengths of maximal A/T (equivalently G/C) stretches in a maxentropic
/// quaternary sequence with runs at most `m`:
/// `P(k) = c N_2(m, k) lambda_4^{-k}`.
///
/// The terms `N_2(m, k) lambda_4^{-k}` are generated by the scaled binary
/// recurrence, so nothing overflows. Because `N_2(m, k+1) <= 2 N_2(m, k)`,
/// the tail after term `k` is at most `t_k rho / (1 - rho)` with
/// `rho = 2 / lambda_4 < 1`, which fixes the truncation point.
pub fn quaternary_runlengths(m: usize) -> Result<RunlengthDistribution> {
    if m < 1 {
        return Err(domain("maximum run must be at least 1"));
    }
    let lambda = capacity(4, m)?.lambda;
    let rho = 2.0 / lambda;
    let inv: Vec<f64> = (1..=m.min(MAX_RUN_TERMS))
        .map(|j| lambda.powi(-(j as i32)))
        .collect();
    // terms[k] = N_2(m, k) lambda^{-k}, terms[0] = 1 for the empty word.
    let mut terms = vec![1.0];
    let mut tail_ok = false;
    for k in 1..=MAX_RUN_TERMS {
        let t = if k <= m {
            rho.powi(k as i32)
        } else {
            (1..=m).map(|j| terms[k - j] * inv[j - 1]).sum()
        };
        terms.push(t);
        if t < TERM_FLOOR && t * rho / (1.0 - rho) < MASS_TOL {
            tail_ok = true;
            break;
        }
    }
    if !tail_ok {
        return Err(Error::Numeric(format!(
            "runlength tail for m={m} not below {MASS_TOL:e} after {MAX_RUN_TERMS} terms"
        )));
    }
    let sum: f64 = terms[1..].iter().sum();
    let c = 1.0 / sum;
    // The normalisation is exactly 1 for the maxentropic source; a drift here
    // means the root or the recurrence is off.
    if (c - 1.0).abs() > 1e-9 {
        return Err(Error::Numeric(format!("normalisation constant {c} differs from 1")));
    }
    let probs = terms[1..]
        .iter()
        .enumerate()
        .map(|(i, &t)| (i + 1, c * t))
        .collect();
    RunlengthDistribution::from_probs(probs)
}

/// `gamma_4(m)`.
pub fn gamma_quaternary(m: usize) -> Result<f64> {
    Ok(quaternary_runlengths(m)?.gamma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UNBOUNDED;

    #[test]
    fn binary_values() {
        assert!((gamma_binary(2).unwrap() - 0.1708).abs() < 5e-5);
        assert!((gamma_binary(10).unwrap() - 0.9565).abs() < 5e-5);
        assert!((gamma_binary(80).unwrap() - 1.0).abs() < 1e-9);
        assert!(gamma_binary(1).is_err());
    }

    #[test]
    fn quaternary_values() {
        assert!((gamma_quaternary(1).unwrap() - 0.5).abs() < 1e-12);
        assert!((gamma_quaternary(3).unwrap() - 0.8796).abs() < 5e-5);
        assert!((gamma_quaternary(10).unwrap() - 0.9999).abs() < 5e-5);
        assert!((gamma_quaternary(UNBOUNDED).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quaternary_m1_is_geometric() {
        // P(k) = 2 / 3^k: mean 3/2, variance 3/4.
        let d = quaternary_runlengths(1).unwrap();
        assert!((d.mean_runlength - 1.5).abs() < 1e-12);
        assert!((d.variance() - 0.75).abs() < 1e-12);
        assert!((d.probs[2].1 - 2.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn distributions_are_normalised() {
        for m in 1..=10 {
            let d = quaternary_runlengths(m).unwrap();
            assert!((d.mass() - 1.0).abs() <= 1e-12);
            assert!(d.mean_runlength.is_finite() && d.variance().is_finite());
            if m >= 2 {
                let b = binary_runlengths(m).unwrap();
                assert!((b.mass() - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn quaternary_gamma_increases_with_m() {
        let g: Vec<f64> = (1..=10).map(|m| gamma_quaternary(m).unwrap()).collect();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.iter().all(|&v| v < 1.0));
    }
}
