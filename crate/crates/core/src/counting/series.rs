//! Truncated formal power series with exact big-integer coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::counting::BigCount;
use crate::error::{domain, Result};

/// Univariate power series `sum g_i x^i`, exact up to degree `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigCount>,
}

impl TruncatedSeries {
    pub fn zero(n_max: usize) -> Self {
        Self {
            coeffs: vec![BigUint::zero(); n_max + 1],
        }
    }

    pub fn one(n_max: usize) -> Self {
        Self::monomial(0, BigUint::one(), n_max)
    }

    /// `coeff * x^degree`; vanishes if `degree > n_max`.
    pub fn monomial(degree: usize, coeff: BigCount, n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        if degree <= n_max {
            s.coeffs[degree] = coeff;
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything beyond `n_max` is dropped.
    pub fn from_coeffs(mut coeffs: Vec<BigCount>, n_max: usize) -> Self {
        coeffs.resize(n_max + 1, BigUint::zero());
        Self { coeffs }
    }

    /// The run polynomial `T(x) = x + x^2 + ... + x^m`.
    pub fn run_polynomial(m: usize, n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        for c in s.coeffs.iter_mut().take(m.saturating_add(1)).skip(1) {
            *c = BigUint::one();
        }
        s
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigCount] {
        &self.coeffs
    }

    /// Coefficient extraction `[x^n]`.
    pub fn coeff(&self, n: usize) -> Result<&BigCount> {
        self.coeffs.get(n).ok_or_else(|| {
            domain(format!(
                "coefficient x^{n} requested beyond truncation degree {}",
                self.n_max()
            ))
        })
    }

    pub fn scale(&self, k: u64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `1 / (1 - f)` for a series with `f(0) = 0`.
    pub fn quasi_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(domain("quasi-inverse needs a vanishing constant term"));
        }
        let n_max = self.n_max();
        let mut g: Vec<BigCount> = Vec::with_capacity(n_max + 1);
        g.push(BigUint::one());
        for n in 1..=n_max {
            let mut acc = BigUint::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[n - k];
                }
            }
            g.push(acc);
        }
        Ok(Self { coeffs: g })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n_max = self.n_max().min(rhs.n_max());
        let coeffs = (0..=n_max)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n_max = self.n_max().min(rhs.n_max());
        let mut out = TruncatedSeries::zero(n_max);
        for (i, a) in self.coeffs.iter().enumerate().take(n_max + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n_max + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Sparse bivariate series `sum h_ij x^i y^j`, exact up to x-degree `n_max`.
///
/// The y-degree is never truncated. Terms are keyed by `(deg_x, deg_y)` so a
/// full x-row can be read back in y order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    terms: BTreeMap<(usize, usize), BigCount>,
    n_max: usize,
}

impl BiSeries {
    pub fn zero(n_max: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            n_max,
        }
    }

    pub fn one(n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        s.add_term(0, 0, BigUint::one());
        s
    }

    /// `T(x)`: runs that carry no weight.
    pub fn run_polynomial_x(m: usize, n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        for i in 1..=m.min(n_max) {
            s.add_term(i, 0, BigUint::one());
        }
        s
    }

    /// `T1(x, y) = sum_{i=1}^{m} x^i y^i`: runs whose length adds to the weight.
    pub fn run_polynomial_xy(m: usize, n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        for i in 1..=m.min(n_max) {
            s.add_term(i, i, BigUint::one());
        }
        s
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * x^dx y^dy`, ignoring terms beyond the truncation.
    pub fn add_term(&mut self, dx: usize, dy: usize, coeff: BigCount) {
        if dx > self.n_max || coeff.is_zero() {
            return;
        }
        *self.terms.entry((dx, dy)).or_default() += coeff;
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigCount)> + '_ {
        self.terms.iter().map(|(&(x, y), c)| (x, y, c))
    }

    /// Non-zero terms of x-degree `dx` as `(deg_y, coeff)` in increasing `deg_y`.
    pub fn row(&self, dx: usize) -> impl Iterator<Item = (usize, &BigCount)> + '_ {
        self.terms
            .range((dx, 0)..=(dx, usize::MAX))
            .map(|(&(_, y), c)| (y, c))
    }

    /// Dense copy of an x-row, indexed by y-degree `0..=dx`.
    pub fn row_dense(&self, dx: usize) -> Result<Vec<BigCount>> {
        if dx > self.n_max {
            return Err(domain(format!(
                "row x^{dx} requested beyond truncation degree {}",
                self.n_max
            )));
        }
        let width = self.row(dx).map(|(y, _)| y + 1).max().unwrap_or(0).max(dx + 1);
        let mut out = vec![BigUint::zero(); width];
        for (y, c) in self.row(dx) {
            out[y] = c.clone();
        }
        Ok(out)
    }

    /// Coefficient extraction `[x^dx y^dy]`.
    pub fn coeff(&self, dx: usize, dy: usize) -> Result<BigCount> {
        if dx > self.n_max {
            return Err(domain(format!(
                "coefficient x^{dx} requested beyond truncation degree {}",
                self.n_max
            )));
        }
        Ok(self.terms.get(&(dx, dy)).cloned().unwrap_or_default())
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = Self::zero(self.n_max);
        if k != 0 {
            for (&key, c) in &self.terms {
                out.terms.insert(key, c * k);
            }
        }
        out
    }

    /// `1 / (1 - f)` for a series without x-degree-zero terms.
    ///
    /// Built row by row from `g = 1 + f g`; the cost is proportional to the
    /// number of terms of `f` times the size of `g`, which keeps the sparse
    /// run polynomials cheap.
    pub fn quasi_inverse(&self) -> Result<Self> {
        if self.row(0).next().is_some() {
            return Err(domain(
                "quasi-inverse needs a series without x-degree zero terms",
            ));
        }
        let mut g = Self::one(self.n_max);
        for d in 1..=self.n_max {
            let mut row: BTreeMap<usize, BigCount> = BTreeMap::new();
            for (fx, fy, fc) in self.terms() {
                if fx > d {
                    break;
                }
                for (gy, gc) in g.row(d - fx) {
                    *row.entry(gy + fy).or_default() += fc * gc;
                }
            }
            for (y, c) in row {
                g.terms.insert((d, y), c);
            }
        }
        Ok(g)
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;

    fn add(self, rhs: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.n_max.min(rhs.n_max));
        for (x, y, c) in self.terms().chain(rhs.terms()) {
            out.add_term(x, y, c.clone());
        }
        out
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;

    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let n_max = self.n_max.min(rhs.n_max);
        let mut out = BiSeries::zero(n_max);
        for (ax, ay, ac) in self.terms() {
            if ax > n_max {
                break;
            }
            for (&(bx, by), bc) in rhs.terms.range(..(n_max - ax + 1, 0)) {
                *out.terms.entry((ax + bx, ay + by)).or_default() += ac * bc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn geometric_quasi_inverse() {
        // 1 / (1 - 2x) = sum 2^n x^n
        let f = TruncatedSeries::monomial(1, big(2), 10);
        let g = f.quasi_inverse().unwrap();
        for n in 0..=10 {
            assert_eq!(g.coeff(n).unwrap(), &big(1 << n));
        }
    }

    #[test]
    fn quasi_inverse_rejects_constant_term() {
        assert!(TruncatedSeries::one(4).quasi_inverse().is_err());
        assert!(BiSeries::one(4).quasi_inverse().is_err());
    }

    #[test]
    fn extraction_beyond_truncation_is_an_error() {
        let s = TruncatedSeries::run_polynomial(3, 5);
        assert!(s.coeff(6).is_err());
        assert_eq!(s.coeff(4).unwrap(), &big(0));
        assert_eq!(s.coeff(3).unwrap(), &big(1));
    }

    #[test]
    fn product_truncates() {
        let t = TruncatedSeries::run_polynomial(2, 3);
        // (x + x^2)^2 = x^2 + 2x^3 + x^4
        let sq = &t * &t;
        assert_eq!(sq.coeffs(), &[big(0), big(0), big(1), big(2)]);
    }

    #[test]
    fn bivariate_product_and_inverse_agree_with_univariate_at_y_one() {
        // Collapsing y to 1 turns T1 into T, so row sums must match.
        let n = 9;
        let f = &BiSeries::run_polynomial_xy(3, n) * &BiSeries::run_polynomial_x(2, n);
        let g = f.quasi_inverse().unwrap();
        let uf = &TruncatedSeries::run_polynomial(3, n) * &TruncatedSeries::run_polynomial(2, n);
        let ug = uf.quasi_inverse().unwrap();
        for d in 0..=n {
            let row_sum: BigUint = g.row(d).map(|(_, c)| c.clone()).sum();
            assert_eq!(&row_sum, ug.coeff(d).unwrap(), "row {d}");
        }
    }

    #[test]
    fn dense_row_pads_with_zeros() {
        let t1 = BiSeries::run_polynomial_xy(2, 4);
        assert_eq!(t1.row_dense(2).unwrap(), vec![big(0), big(0), big(1)]);
        assert_eq!(t1.row_dense(4).unwrap(), vec![big(0); 5]);
        assert!(t1.row_dense(5).is_err());
    }
}
