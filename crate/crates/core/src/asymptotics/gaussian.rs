use std::f64::consts::{PI, SQRT_2};

use super::gamma::{gamma_binary, gamma_quaternary};
use crate::counting::{log2_count, rll_count};
use crate::error::{domain, Result};

/// Gaussian tail probability `Q(x) = P(Z > x)` for a standard normal `Z`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Which weight distribution a Gaussian model stands in for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFamily {
    /// AT-content of unconstrained strands, `N(w, n)`.
    Balance,
    /// Weight of binary words with runs at most `m`, `N_2(m, w, n)`.
    BinaryRll,
    /// AT-content of quaternary strands with runs at most `m`, `N_4(m, w, n)`.
    QuaternaryRll,
}

/// Variance used for the runlength families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum VarianceModel {
    /// `gamma(m) n / 4`.
    #[default]
    RunlengthScaled,
    /// `n / 4` regardless of `m`, the unconstrained-strand variance.
    Unconstrained,
}

/// `total * G(u; mean, variance)` where `G` is the normal density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianApprox {
    pub mean: f64,
    pub variance: f64,
    /// Scaling count; may be `inf` for very long words, see `log2_total`.
    pub total: f64,
    pub log2_total: f64,
}

impl GaussianApprox {
    pub fn new(mean: f64, variance: f64, log2_total: f64) -> Result<Self> {
        if variance.is_nan() || variance <= 0.0 {
            return Err(domain(format!("variance {variance} must be positive")));
        }
        Ok(Self {
            mean,
            variance,
            total: log2_total.exp2(),
            log2_total,
        })
    }

    pub fn density(&self, u: f64) -> f64 {
        let z = (u - self.mean) / self.variance.sqrt();
        (-0.5 * z * z).exp() / (2.0 * PI * self.variance).sqrt()
    }

    pub fn estimate(&self, w: f64) -> f64 {
        self.total * self.density(w)
    }

    pub fn log2_estimate(&self, w: f64) -> f64 {
        self.log2_total + self.density(w).log2()
    }
}

/// The Gaussian weight model for one family at length `n`.
///
/// `m` is ignored for [`WeightFamily::Balance`].
pub fn gaussian_model(
    family: WeightFamily,
    m: usize,
    n: usize,
    variance: VarianceModel,
) -> Result<GaussianApprox> {
    if n < 1 {
        return Err(domain("length must be at least 1"));
    }
    let nf = n as f64;
    let (gamma, log2_total) = match family {
        WeightFamily::Balance => (1.0, 2.0 * nf),
        WeightFamily::BinaryRll => (gamma_binary(m)?, log2_count(&rll_count(2, m, n)?)),
        WeightFamily::QuaternaryRll => (gamma_quaternary(m)?, log2_count(&rll_count(4, m, n)?)),
    };
    let gamma = match variance {
        VarianceModel::RunlengthScaled => gamma,
        VarianceModel::Unconstrained => 1.0,
    };
    GaussianApprox::new(nf / 2.0, gamma * nf / 4.0, log2_total)
}

/// Gaussian estimate of the number of words of weight `w` in `family`.
pub fn gaussian_weight_approx(family: WeightFamily, m: usize, w: usize, n: usize) -> Result<f64> {
    Ok(gaussian_model(family, m, n, VarianceModel::RunlengthScaled)?.estimate(w as f64))
}

/// `4^n [1 - 2 Q(2 a sqrt n)]`, the Gaussian estimate of `N_a(n)`.
pub fn near_balanced_approx(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    (2.0 * nf).exp2() * (1.0 - 2.0 * q_function(2.0 * a * nf.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{binomial_weight_count, near_balanced_count, Boundary};
    use num_traits::ToPrimitive;

    #[test]
    fn q_function_values() {
        assert_eq!(q_function(0.0), 0.5);
        for x in [0.5, 1.0, 2.0] {
            assert!((q_function(x) + q_function(-x) - 1.0).abs() < 1e-15);
        }
        assert!((q_function(1.0) - 0.158_655_253_931_457_05).abs() < 1e-12);
        assert!((q_function(2.0) - 0.022_750_131_948_179_21).abs() < 1e-12);
        assert!((q_function(3.0) - 0.001_349_898_031_630_094_6).abs() < 1e-12);
    }

    #[test]
    fn density_integrates_to_one() {
        let g = GaussianApprox::new(10.0, 2.5, 0.0).unwrap();
        let h = 1e-3;
        let s: f64 = (-20_000..20_000).map(|i| g.density(10.0 + i as f64 * h) * h).sum();
        assert!((s - 1.0).abs() < 1e-9);
        assert!(GaussianApprox::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn balance_estimate_at_centre() {
        let exact = binomial_weight_count(100, 50).unwrap().to_f64().unwrap();
        let approx = gaussian_weight_approx(WeightFamily::Balance, 0, 50, 100).unwrap();
        assert!((approx / exact - 1.0).abs() < 0.02);
    }

    #[test]
    fn near_balanced_estimate() {
        let exact = near_balanced_count(400, 0.05, Boundary::Strict).unwrap();
        let approx = near_balanced_approx(400, 0.05);
        assert!((approx / exact.to_f64().unwrap() - 1.0).abs() < 0.03);
    }

    #[test]
    fn unconstrained_variance_model() {
        let g = gaussian_model(WeightFamily::QuaternaryRll, 2, 100, VarianceModel::Unconstrained)
            .unwrap();
        assert_eq!(g.variance, 25.0);
        let s = gaussian_model(WeightFamily::QuaternaryRll, 2, 100, VarianceModel::default())
            .unwrap();
        assert!(s.variance < g.variance);
    }
}
