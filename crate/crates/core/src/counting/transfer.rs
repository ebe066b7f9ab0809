//! Four-state skeleton matrix of the homopolymer-limited quaternary source.
//!
//! State `i` emits a run of symbol `i` of length `1..=m` and then moves to a
//! different state. Runs of `G`/`C` (states 0 and 1) contribute `T(x)`; runs
//! of `A`/`T` (states 2 and 3) contribute `T1(x, y)` so that `y` tracks the
//! AT-content.

use std::array;
use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::series::BiSeries;
use super::BigCount;
use crate::error::{domain, Error, Result};

/// A 4x4 matrix of bivariate series, truncated at a common x-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    entries: [[BiSeries; 4]; 4],
    n_max: usize,
}

impl TransferMatrix {
    /// The one-step matrix `D(x, y)` for maximum run `m`.
    pub fn homopolymer(m: usize, n_max: usize) -> Result<Self> {
        if m < 1 {
            return Err(domain("maximum run must be at least 1"));
        }
        let gc = BiSeries::run_polynomial_x(m, n_max);
        let at = BiSeries::run_polynomial_xy(m, n_max);
        let entries = array::from_fn(|i| {
            array::from_fn(|j| {
                if i == j {
                    BiSeries::zero(n_max)
                } else if i < 2 {
                    gc.clone()
                } else {
                    at.clone()
                }
            })
        });
        Ok(Self { entries, n_max })
    }

    pub fn identity(n_max: usize) -> Self {
        let entries = array::from_fn(|i| {
            array::from_fn(|j| {
                if i == j {
                    BiSeries::one(n_max)
                } else {
                    BiSeries::zero(n_max)
                }
            })
        });
        Self { entries, n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiSeries {
        &self.entries[i][j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n_max = self.n_max.min(rhs.n_max);
        let entries = array::from_fn(|i| {
            array::from_fn(|j| {
                let mut acc = BiSeries::zero(n_max);
                for k in 0..4 {
                    let (a, b) = (&self.entries[i][k], &rhs.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
        });
        Self { entries, n_max }
    }

    /// `D^k` by binary powering.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut result = Self::identity(self.n_max);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `sum_{i,j} d_ij`.
    pub fn entry_sum(&self) -> BiSeries {
        let mut acc = BiSeries::zero(self.n_max);
        for row in &self.entries {
            for e in row {
                acc = &acc + e;
            }
        }
        acc
    }

    /// `sum_{k >= 1} sum_{i,j} d_ij^[k]`, the generating function of all
    /// state paths with any number of runs.
    ///
    /// A path of `k` steps emits `k` runs, so a strand of length `n` may use
    /// anywhere between `ceil(n / m)` and `n` steps; only the sum over all
    /// powers counts every strand. It is evaluated through the row recurrence
    /// `F_i = sum_j d_ij (1 + F_j)` rather than by summing explicit powers.
    pub fn walk_series(&self) -> Result<BiSeries> {
        let n_max = self.n_max;
        for row in &self.entries {
            for e in row {
                if e.row(0).next().is_some() {
                    return Err(domain("transfer entries must not have x-degree zero terms"));
                }
            }
        }
        let mut walks: [BiSeries; 4] = array::from_fn(|_| BiSeries::zero(n_max));
        for d in 1..=n_max {
            let mut rows: [BTreeMap<usize, BigCount>; 4] = Default::default();
            for (i, row) in rows.iter_mut().enumerate() {
                for (entry, walk) in self.entries[i].iter().zip(&walks) {
                    for (ex, ey, c) in entry.terms() {
                        if ex > d {
                            break;
                        }
                        if ex == d {
                            *row.entry(ey).or_default() += c;
                        }
                        for (fy, fc) in walk.row(d - ex) {
                            *row.entry(fy + ey).or_default() += c * fc;
                        }
                    }
                }
            }
            for (walk, row) in walks.iter_mut().zip(rows) {
                for (y, c) in row {
                    walk.add_term(d, y, c);
                }
            }
        }
        let mut total = BiSeries::zero(n_max);
        for w in &walks {
            total = &total + w;
        }
        Ok(total)
    }
}

/// Exact division by three of a transfer-matrix path count.
pub(crate) fn divide_by_three(v: BigCount) -> Result<BigCount> {
    let three = BigUint::from(3u8);
    if (&v % &three) != BigUint::default() {
        return Err(Error::Internal(format!(
            "transfer-matrix path count {v} is not divisible by 3"
        )));
    }
    Ok(v / three)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_has_zero_diagonal_and_row_structure() {
        let d = TransferMatrix::homopolymer(3, 6).unwrap();
        for i in 0..4 {
            assert!(d.entry(i, i).is_zero());
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let weighted = d.entry(i, j).terms().any(|(_, y, _)| y > 0);
                assert_eq!(weighted, i >= 2, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn binary_powering_matches_repeated_products() {
        let d = TransferMatrix::homopolymer(2, 7).unwrap();
        let mut slow = TransferMatrix::identity(7);
        for _ in 0..5 {
            slow = slow.mul(&d);
        }
        assert_eq!(d.pow(5), slow);
        assert_eq!(d.pow(0), TransferMatrix::identity(7));
    }

    #[test]
    fn single_power_counts_unit_runs_only() {
        // [x^n] of D^n only sees paths of n runs of length one, which is
        // exactly the m = 1 count 4 * 3^(n-1) once the free end state is
        // divided out.
        for m in 1..=3 {
            let n = 5;
            let d = TransferMatrix::homopolymer(m, n).unwrap();
            let s = d.pow(n).entry_sum();
            let total: BigUint = s.row(n).map(|(_, c)| c.clone()).sum();
            assert_eq!(divide_by_three(total).unwrap(), BigUint::from(4u32 * 81));
        }
    }

    #[test]
    fn walk_series_equals_sum_of_powers() {
        let n = 6;
        let d = TransferMatrix::homopolymer(2, n).unwrap();
        let mut acc = BiSeries::zero(n);
        for k in 1..=n {
            acc = &acc + &d.pow(k).entry_sum();
        }
        assert_eq!(d.walk_series().unwrap(), acc);
    }

    #[test]
    fn division_by_three_is_checked() {
        assert!(divide_by_three(BigUint::from(10u8)).is_err());
        assert_eq!(divide_by_three(BigUint::from(12u8)).unwrap(), BigUint::from(4u8));
    }
}
