use super::capacity::{capacity, leading_coefficient};
use super::gamma::{gamma_binary, gamma_quaternary};
use super::gaussian::q_function;
use crate::counting::{admits_weight, log2_count, rll_count, weight_profile, Alphabet, Boundary};
use crate::error::{domain, Error, Result};

/// Exact counts or the linear asymptotic form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Exact,
    Asymptotic,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "asymptotic" => Ok(Self::Asymptotic),
            other => Err(domain(format!("unknown mode {other:?}"))),
        }
    }
}

/// `n log2 q - log2 N_q(m, n)`, or `n (log2 q - C_q(m)) - log2 A_q(m)`.
///
/// For `q = 2` this is also the redundancy of the binary-plane construction
/// measured in quaternary symbols, since the free plane adds `n` bits on both
/// sides.
pub fn rll_redundancy(q: u32, m: usize, n: usize, mode: Mode) -> Result<f64> {
    let bits = f64::from(q).log2();
    match mode {
        Mode::Exact => Ok(n as f64 * bits - log2_count(&rll_count(q, m, n)?)),
        Mode::Asymptotic => {
            let c = capacity(q, m)?.capacity_bits;
            Ok(n as f64 * (bits - c) - leading_coefficient(q, m)?.log2())
        }
    }
}

/// `eta(m) = (1 + C_2(m)) / C_4(m)`.
pub fn efficiency_eta(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(domain("efficiency is defined for m >= 2"));
    }
    Ok((1.0 + capacity(2, m)?.capacity_bits) / capacity(4, m)?.capacity_bits)
}

fn check_bound(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 0.5) {
        return Err(domain(format!("unbalance bound {a} must lie in (0, 1/2]")));
    }
    Ok(())
}

fn undefined(what: &str) -> Error {
    Error::UndefinedRedundancy(format!("{what}: no admissible weight"))
}

/// Extra redundancy (bits) caused by the balance constraint on top of the
/// runlength constraint.
///
/// Asymptotic: `-log2[1 - 2Q(2a sqrt(n / gamma(m)))]`. Exact:
/// `log2 N(m, n) - log2 sum_{admitted w} N(m, w, n)`. The binary kind
/// constrains the weight of the runlength-limited plane.
pub fn balance_penalty(
    kind: Alphabet,
    m: usize,
    a: f64,
    n: usize,
    mode: Mode,
    boundary: Boundary,
) -> Result<f64> {
    check_bound(a)?;
    match mode {
        Mode::Asymptotic => {
            let gamma = match kind {
                Alphabet::Binary => gamma_binary(m)?,
                Alphabet::Quaternary => gamma_quaternary(m)?,
            };
            let p = 1.0 - 2.0 * q_function(2.0 * a * (n as f64 / gamma).sqrt());
            if p <= 0.0 {
                return Err(undefined("balance penalty"));
            }
            Ok(-p.log2())
        }
        Mode::Exact => {
            let profile = weight_profile(kind, m, n)?;
            let kept = profile.sum_where(|w| admits_weight(w, n, a, boundary));
            if kept == num_bigint::BigUint::default() {
                return Err(undefined("balance penalty"));
            }
            Ok(log2_count(&profile.total()) - log2_count(&kept))
        }
    }
}

/// Redundancy of words obeying both the runlength bound `m` and the relative
/// unbalance bound `a`, for the binary-plane or the direct quaternary
/// approach, in bits per `n`-symbol word.
pub fn combined_redundancy(
    kind: Alphabet,
    m: usize,
    a: f64,
    n: usize,
    mode: Mode,
    boundary: Boundary,
) -> Result<f64> {
    check_bound(a)?;
    if kind == Alphabet::Binary && mode == Mode::Asymptotic && m < 2 {
        return Err(domain("binary combined redundancy needs m >= 2"));
    }
    let q = kind.size();
    let base = rll_redundancy(q, m, n, mode)?;
    Ok(base + balance_penalty(kind, m, a, n, mode, boundary)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rll_redundancy() {
        let r = rll_redundancy(4, 3, 5, Mode::Exact).unwrap();
        assert!((r - (10.0 - 996f64.log2())).abs() < 1e-12);
        assert!((r - 0.0400).abs() < 5e-5);
    }

    #[test]
    fn asymptotic_slope() {
        let slope = rll_redundancy(2, 2, 101, Mode::Asymptotic).unwrap()
            - rll_redundancy(2, 2, 100, Mode::Asymptotic).unwrap();
        assert!((slope - 0.3058).abs() < 1e-4);
    }

    #[test]
    fn exact_and_asymptotic_agree() {
        for q in [2, 4] {
            let e = rll_redundancy(q, 3, 50, Mode::Exact).unwrap();
            let a = rll_redundancy(q, 3, 50, Mode::Asymptotic).unwrap();
            assert!((e - a).abs() < 0.02, "q={q}");
        }
    }

    #[test]
    fn eta_values() {
        for (m, v) in [(2, 0.881), (4, 0.975), (7, 0.997)] {
            assert!((efficiency_eta(m).unwrap() - v).abs() < 5e-4);
        }
        assert!(efficiency_eta(1).is_err());
    }

    #[test]
    fn penalty_vanishes_for_loose_bound() {
        for kind in [Alphabet::Binary, Alphabet::Quaternary] {
            let p = balance_penalty(kind, 3, 0.5, 80, Mode::Asymptotic, Boundary::Strict).unwrap();
            assert!(p.abs() < 1e-12);
            let e = balance_penalty(kind, 3, 0.5, 20, Mode::Exact, Boundary::Inclusive).unwrap();
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn combined_exact_tracks_asymptotic() {
        for kind in [Alphabet::Binary, Alphabet::Quaternary] {
            let e = combined_redundancy(kind, 3, 0.05, 150, Mode::Exact, Boundary::Strict).unwrap();
            let a = combined_redundancy(kind, 3, 0.05, 150, Mode::Asymptotic, Boundary::Strict)
                .unwrap();
            assert!((e - a).abs() < 0.1, "{kind:?}: {e} vs {a}");
        }
    }

    #[test]
    fn binary_minus_quaternary_penalty_at_sixty() {
        let pb = balance_penalty(Alphabet::Binary, 2, 0.05, 60, Mode::Asymptotic, Boundary::Strict)
            .unwrap();
        let pq =
            balance_penalty(Alphabet::Quaternary, 2, 0.05, 60, Mode::Asymptotic, Boundary::Strict)
                .unwrap();
        let diff = pq - pb;
        assert!((0.5..=1.0).contains(&diff), "{diff}");
    }

    #[test]
    fn combined_domain() {
        assert!(combined_redundancy(Alphabet::Binary, 1, 0.1, 20, Mode::Asymptotic, Boundary::Strict)
            .is_err());
        assert!(
            combined_redundancy(Alphabet::Quaternary, 2, 0.0, 20, Mode::Exact, Boundary::Strict)
                .is_err()
        );
        assert!(matches!(
            balance_penalty(Alphabet::Quaternary, 2, 0.01, 7, Mode::Exact, Boundary::Strict),
            Err(Error::UndefinedRedundancy(_))
        ));
    }
}
