use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::series::{BiSeries, TruncatedSeries};
use super::transfer::{divide_by_three, TransferMatrix};
use super::BigCount;
use crate::error::{domain, Error, Result};

fn check_rll(q: u32, m: usize) -> Result<()> {
    if q < 2 {
        return Err(domain(format!("alphabet size {q} must be at least 2")));
    }
    if m < 1 {
        return Err(domain("maximum run must be at least 1"));
    }
    Ok(())
}

/// `N_q(m, k)` for `k = 0..=n_max` by the runlength recurrence, with
/// `N_q(m, 0) = 1` for the empty word.
pub fn rll_counts(q: u32, m: usize, n_max: usize) -> Result<Vec<BigCount>> {
    check_rll(q, m)?;
    let mut out: Vec<BigCount> = Vec::with_capacity(n_max + 1);
    out.push(BigUint::one());
    let mut power = BigUint::one();
    for n in 1..=n_max {
        power *= q;
        if n <= m {
            out.push(power.clone());
        } else {
            let s: BigUint = out[n - m..n].iter().sum();
            out.push(s * (q - 1));
        }
    }
    Ok(out)
}

/// `N_q(m, n)`: q-ary words of length `n` with no run longer than `m`.
pub fn rll_count(q: u32, m: usize, n: usize) -> Result<BigCount> {
    let mut v = rll_counts(q, m, n)?;
    Ok(v.swap_remove(n))
}

/// `N_q(m, n)` as `[x^n] qT(x) / (1 - (q-1)T(x))`.
pub fn rll_count_gf(q: u32, m: usize, n: usize) -> Result<BigCount> {
    check_rll(q, m)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    let t = TruncatedSeries::run_polynomial(m, n);
    let inv = t.scale(u64::from(q - 1)).quasi_inverse()?;
    let h = &t.scale(u64::from(q)) * &inv;
    Ok(h.coeff(n)?.clone())
}

fn binary_weight_series(m: usize, n: usize) -> Result<BiSeries> {
    let t = BiSeries::run_polynomial_x(m, n);
    let t1 = BiSeries::run_polynomial_xy(m, n);
    let cross = &t1 * &t;
    let numerator = &(&t1 + &t) + &cross.scale(2);
    Ok(&numerator * &cross.quasi_inverse()?)
}

fn check_weighted(m: usize, w: usize, n: usize) -> Result<()> {
    if m < 1 {
        return Err(domain("maximum run must be at least 1"));
    }
    if n < 1 {
        return Err(domain("length must be at least 1"));
    }
    if w > n {
        return Err(domain(format!("weight {w} exceeds length {n}")));
    }
    Ok(())
}

/// `N_2(m, w, n)`: binary words of length `n`, weight `w`, runs at most `m`,
/// extracted from the bivariate generating function
/// `(T1 + T + 2 T1 T) / (1 - T1 T)`.
pub fn rll_weight_count_binary(m: usize, w: usize, n: usize) -> Result<BigCount> {
    check_weighted(m, w, n)?;
    binary_weight_series(m, n)?.coeff(n, w)
}

/// `N_4(m, w, n)`: quaternary strands of length `n` with `w` A/T symbols and
/// no homopolymer run longer than `m`, read off the skeleton matrix.
pub fn rll_weight_count_quaternary(m: usize, w: usize, n: usize) -> Result<BigCount> {
    check_weighted(m, w, n)?;
    let walks = TransferMatrix::homopolymer(m, n)?.walk_series()?;
    divide_by_three(walks.coeff(n, w)?)
}

/// Binary (`w_2`) or quaternary AT-content (`w_4`) weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Binary,
    Quaternary,
}

impl Alphabet {
    pub fn size(self) -> u32 {
        match self {
            Self::Binary => 2,
            Self::Quaternary => 4,
        }
    }
}

/// Counts of constrained words of one length, indexed by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub n: usize,
    pub counts: Vec<BigCount>,
}

impl WeightProfile {
    pub fn total(&self) -> BigCount {
        self.counts.iter().sum()
    }

    pub fn get(&self, w: usize) -> Option<&BigCount> {
        self.counts.get(w)
    }

    /// Sum of the counts whose weight satisfies `keep`.
    pub fn sum_where(&self, mut keep: impl FnMut(usize) -> bool) -> BigCount {
        self.counts
            .iter()
            .enumerate()
            .filter(|(w, _)| keep(*w))
            .map(|(_, c)| c)
            .sum()
    }
}

/// All weights `0..=n` at once. Pass [`crate::UNBOUNDED`] as `m` for no run
/// constraint.
pub fn weight_profile(kind: Alphabet, m: usize, n: usize) -> Result<WeightProfile> {
    check_weighted(m, 0, n)?;
    let m = m.min(n);
    let mut counts = match kind {
        Alphabet::Binary => binary_weight_series(m, n)?.row_dense(n)?,
        Alphabet::Quaternary => {
            let row = TransferMatrix::homopolymer(m, n)?.walk_series()?.row_dense(n)?;
            row.into_iter().map(divide_by_three).collect::<Result<_>>()?
        }
    };
    if counts.len() > n + 1 {
        if counts[n + 1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("weight exceeds word length".into()));
        }
        counts.truncate(n + 1);
    }
    Ok(WeightProfile { n, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UNBOUNDED;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Exhaustive binary count by weight, independent of the series code.
    fn brute_binary(m: usize, n: usize) -> Vec<u64> {
        let mut out = vec![0; n + 1];
        for x in 0u32..(1 << n) {
            let bits: Vec<u32> = (0..n).map(|i| (x >> i) & 1).collect();
            let ok = bits.windows(m + 1).all(|w| w.iter().any(|&b| b != w[0]));
            if ok {
                out[x.count_ones() as usize] += 1;
            }
        }
        out
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(rll_count(4, 2, 10).unwrap(), big(676_836));
        assert_eq!(rll_count(4, 3, 5).unwrap(), big(996));
        assert_eq!(rll_count(2, 1, 7).unwrap(), big(2));
        assert_eq!(rll_count(4, 1, 6).unwrap(), big(972));
        assert_eq!(rll_count(3, 2, 0).unwrap(), big(1));
        assert!(rll_count(4, 0, 3).is_err());
        assert!(rll_count(1, 2, 3).is_err());
    }

    #[test]
    fn generating_function_examples() {
        assert_eq!(rll_count_gf(4, 3, 5).unwrap(), big(996));
        assert_eq!(rll_count_gf(2, 2, 3).unwrap(), big(6));
        assert_eq!(rll_count_gf(4, 2, 10).unwrap(), big(676_836));
    }

    #[test]
    fn recurrence_and_series_agree_on_long_words() {
        for (q, m) in [(2, 3), (4, 2), (3, 4), (4, 7)] {
            assert_eq!(rll_count(q, m, 300).unwrap(), rll_count_gf(q, m, 300).unwrap());
        }
    }

    #[test]
    fn unbounded_run_is_unconstrained() {
        assert_eq!(rll_count(4, UNBOUNDED, 9).unwrap(), big(4u64.pow(9)));
    }

    #[test]
    fn binary_weighted_examples() {
        assert_eq!(rll_weight_count_binary(1, 2, 4).unwrap(), big(2));
        assert_eq!(rll_weight_count_binary(2, 1, 2).unwrap(), big(2));
        let brute = brute_binary(3, 5);
        assert_eq!(rll_weight_count_binary(3, 2, 5).unwrap(), big(brute[2]));
        assert!(rll_weight_count_binary(2, 6, 5).is_err());
    }

    #[test]
    fn binary_weighted_matches_brute_force() {
        for m in 1..=4 {
            for n in 1..=12 {
                let brute = brute_binary(m, n);
                let p = weight_profile(Alphabet::Binary, m, n).unwrap();
                let got: Vec<BigUint> = brute.iter().map(|&v| big(v)).collect();
                assert_eq!(p.counts, got, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn quaternary_weighted_examples() {
        assert_eq!(rll_weight_count_quaternary(1, 0, 2).unwrap(), big(2));
        let total: BigUint = (0..=5).map(|w| rll_weight_count_quaternary(3, w, 5).unwrap()).sum();
        assert_eq!(total, big(996));
        assert_eq!(rll_weight_count_quaternary(2, 3, 3).unwrap(), rll_count(2, 2, 3).unwrap());
    }

    #[test]
    fn profiles() {
        let p = weight_profile(Alphabet::Binary, UNBOUNDED, 4).unwrap();
        assert_eq!(p.counts, vec![big(1), big(4), big(6), big(4), big(1)]);
        assert_eq!(weight_profile(Alphabet::Quaternary, 3, 5).unwrap().total(), big(996));
        assert_eq!(weight_profile(Alphabet::Binary, 2, 3).unwrap().total(), big(6));
        let p = weight_profile(Alphabet::Quaternary, 2, 7).unwrap();
        assert_eq!(p.counts.len(), 8);
        assert_eq!(p.sum_where(|w| w == 3), rll_weight_count_quaternary(2, 3, 7).unwrap());
    }

    #[test]
    fn unconstrained_quaternary_profile_is_binomial() {
        let n = 6;
        let p = weight_profile(Alphabet::Quaternary, UNBOUNDED, n).unwrap();
        for w in 0..=n {
            assert_eq!(p.counts[w], crate::counting::binomial_weight_count(n, w).unwrap());
        }
    }
}
