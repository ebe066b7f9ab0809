use crate::error::{domain, Error, Result};
use crate::UNBOUNDED;

const MAX_ITERATIONS: usize = 200;
const BISECTION_STEPS: usize = 64;
const RESIDUAL_TOL: f64 = 1e-12;

/// Dominant root of `x^{m+1} - q x^m + q - 1 = 0` and the capacity it implies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityResult {
    pub q: u32,
    pub m: usize,
    /// Largest real root `lambda_q(m)`.
    pub lambda: f64,
    /// `log2(lambda)`, bits per q-ary symbol.
    pub capacity_bits: f64,
    /// Achieved residual of the root, measured on `p(x) / x^m`.
    pub tol: f64,
}

/// `x^{m+1} - q x^m + q - 1`.
pub fn characteristic_polynomial(q: u32, m: usize, x: f64) -> f64 {
    let q = f64::from(q);
    let xm = x.powi(m as i32);
    xm * x - q * xm + q - 1.0
}

/// `p(x) / x^m = x - q + (q - 1) x^{-m}`, which stays well scaled for large m.
fn scaled_residual(q: f64, m: usize, x: f64) -> f64 {
    x - q + (q - 1.0) * x.powf(-(m as f64))
}

fn scaled_derivative(q: f64, m: usize, x: f64) -> f64 {
    1.0 - m as f64 * (q - 1.0) * x.powf(-(m as f64) - 1.0)
}

/// Capacity `C_q(m)` of the q-ary channel whose runs are at most `m` long.
pub fn capacity(q: u32, m: usize) -> Result<CapacityResult> {
    if q < 2 {
        return Err(domain(format!("alphabet size {q} must be at least 2")));
    }
    if m < 1 {
        return Err(domain("maximum run must be at least 1"));
    }
    let qf = f64::from(q);
    let done = |lambda: f64, tol: f64| CapacityResult {
        q,
        m,
        lambda,
        capacity_bits: lambda.log2(),
        tol,
    };
    if m == UNBOUNDED {
        return Ok(done(qf, 0.0));
    }
    // Binary m = 1: (x - 1)^2 has no root above 1; only the two alternating
    // sequences survive.
    if q == 2 && m == 1 {
        return Ok(done(1.0, 0.0));
    }

    let (mut lo, mut hi) = (1.0 + 1e-9, qf);
    if scaled_residual(qf, m, lo) >= 0.0 {
        return Err(Error::Numeric(format!(
            "no sign change bracketing the root for q={q}, m={m}"
        )));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if scaled_residual(qf, m, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in BISECTION_STEPS..MAX_ITERATIONS {
        let f = scaled_residual(qf, m, x);
        let df = scaled_derivative(qf, m, x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if !(next > 1.0 && next <= qf) || (next - x).abs() <= f64::EPSILON * x {
            break;
        }
        x = next;
    }
    let tol = scaled_residual(qf, m, x).abs();
    if tol > RESIDUAL_TOL {
        return Err(Error::Numeric(format!(
            "root for q={q}, m={m} did not converge (residual {tol:e})"
        )));
    }
    Ok(done(x, tol))
}

/// `A_q(m) = -lambda r(1/lambda) / p'(1/lambda)` with `r = qT` and
/// `p = 1 - (q-1)T`, so that `N_q(m, n) ~ A_q(m) lambda^n`.
pub fn leading_coefficient(q: u32, m: usize) -> Result<f64> {
    let cap = capacity(q, m)?;
    if cap.lambda <= 1.0 {
        return Err(domain(format!(
            "leading coefficient needs lambda > 1 (q={q}, m={m})"
        )));
    }
    let z = 1.0 / cap.lambda;
    let (mut t, mut dt) = (0.0, 0.0);
    let mut zi = 1.0; // z^{i-1}
    for i in 1..=m {
        dt += i as f64 * zi;
        zi *= z;
        t += zi;
        if zi * i as f64 <= 1e-20 * dt {
            break;
        }
    }
    let qf = f64::from(q);
    let r = qf * t;
    let dp = -(qf - 1.0) * dt;
    if dp.abs() < 1e-300 {
        return Err(Error::Numeric("degenerate denominator p'(1/lambda)".into()));
    }
    Ok(-cap.lambda * r / dp)
}

/// `A_q(m) lambda_q(m)^n`.
pub fn rll_count_approx(q: u32, m: usize, n: usize) -> Result<f64> {
    let a = leading_coefficient(q, m)?;
    let lambda = capacity(q, m)?.lambda;
    Ok(a * lambda.powf(n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::rll_count;
    use num_traits::ToPrimitive;

    #[test]
    fn closed_form_roots() {
        assert_eq!(capacity(2, 1).unwrap().capacity_bits, 0.0);
        let c = capacity(4, 1).unwrap();
        assert!((c.lambda - 3.0).abs() < 1e-14);
        assert!((c.capacity_bits - 3f64.log2()).abs() < 1e-12);
        // x^3 - 2x^2 + 1 = (x - 1)(x^2 - x - 1)
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((capacity(2, 2).unwrap().lambda - golden).abs() < 1e-14);
        assert_eq!(capacity(4, UNBOUNDED).unwrap().capacity_bits, 2.0);
    }

    #[test]
    fn published_capacities() {
        for (q, m, c) in [(2, 2, 0.6942), (4, 6, 1.9997), (4, 3, 1.9824)] {
            assert!((capacity(q, m).unwrap().capacity_bits - c).abs() < 5e-5);
        }
    }

    #[test]
    fn residual_is_small() {
        for q in [2, 3, 4] {
            for m in 1..=12 {
                let c = capacity(q, m).unwrap();
                assert!(c.tol <= 1e-12);
                let raw = characteristic_polynomial(q, m, c.lambda).abs();
                let scale = c.lambda.powi(m as i32 + 1);
                assert!(raw <= 1e-10 * scale.max(1.0), "q={q} m={m} raw={raw}");
                if m <= 6 {
                    assert!(raw < 1e-10, "q={q} m={m} raw={raw}");
                }
                if m >= 2 {
                    assert!(c.lambda > f64::from(q - 1) && c.lambda < f64::from(q));
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(capacity(1, 3).is_err());
        assert!(capacity(4, 0).is_err());
        assert!(leading_coefficient(2, 1).is_err());
    }

    #[test]
    fn leading_coefficients() {
        assert!((leading_coefficient(4, 1).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        // N_2(2, n) = 2 F_{n+1}, so A_2(2) = 2 phi / sqrt 5.
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let exact = 2.0 * golden / 5f64.sqrt();
        assert!((leading_coefficient(2, 2).unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn approximation_of_counts() {
        let v = rll_count_approx(4, 2, 10).unwrap();
        assert!((v - 676_835.977).abs() < 0.01, "{v}");
        assert!((rll_count_approx(4, 1, 6).unwrap() - 972.0).abs() < 1e-9);
        for m in 2..=4 {
            let exact = rll_count(4, m, 20).unwrap().to_f64().unwrap();
            let approx = rll_count_approx(4, m, 20).unwrap();
            assert!((approx / exact - 1.0).abs() < 1e-3);
        }
    }
}
