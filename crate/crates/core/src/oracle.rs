//! Exhaustive enumeration used to cross-check counts and codecs on small
//! parameters.
//!
//! Nothing here relies on the counting module: words are generated one by
//! one and the constraints are tested directly.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codecs::{
    BinaryWord, CodecSpec, EncoderState, KnuthBalancer, Oligo, StrandCodec, WeakKnuthBalancer,
    Balancer,
};
use crate::counting::Boundary;
use crate::error::{domain, Error, Result};

/// Largest number of words any single enumeration may visit.
pub const ENUMERATION_CAP: u128 = 100_000_000;

/// Largest source space, in words per state, a codec may have for validation.
pub const SOURCE_CAP: u128 = 1 << 20;

/// Random concatenated blocks checked per codec.
pub const RANDOM_BLOCKS: usize = 10_000;

fn check_space(q: u32, n: usize) -> Result<()> {
    let space = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > ENUMERATION_CAP {
        return Err(Error::Refused {
            space,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// Calls `f` on every word of `0..q` of length `n`, in lexicographic order.
fn for_each_word(q: u32, n: usize, mut f: impl FnMut(&[u8])) -> Result<()> {
    if !(2..=4).contains(&q) {
        return Err(domain(format!("alphabet size {q} must be 2, 3 or 4")));
    }
    check_space(q, n)?;
    let top = q as u8 - 1;
    let mut word = vec![0u8; n];
    loop {
        f(&word);
        let Some(i) = word.iter().rposition(|&s| s < top) else {
            return Ok(());
        };
        word[i] += 1;
        for s in &mut word[i + 1..] {
            *s = 0;
        }
    }
}

fn longest_run(word: &[u8]) -> usize {
    let mut best = 0;
    let mut i = 0;
    while i < word.len() {
        let j = word[i..].iter().position(|&s| s != word[i]).map_or(word.len(), |k| i + k);
        best = best.max(j - i);
        i = j;
    }
    best
}

/// Ones for binary words, A/T for quaternary ones.
fn weight(q: u32, word: &[u8]) -> usize {
    let heavy = if q == 2 { 1 } else { 2 };
    word.iter().filter(|&&s| s >= heavy).count()
}

/// Number of q-ary words of length `n` with no run longer than `m`.
pub fn brute_rll_count(q: u32, m: usize, n: usize) -> Result<u64> {
    let mut count = 0;
    for_each_word(q, n, |w| {
        if longest_run(w) <= m {
            count += 1;
        }
    })?;
    Ok(count)
}

/// `profile[w]` counts the runlength-limited words of weight `w`.
pub fn brute_weight_profile(q: u32, m: usize, n: usize) -> Result<Vec<u64>> {
    let mut profile = vec![0; n + 1];
    for_each_word(q, n, |w| {
        if longest_run(w) <= m {
            profile[weight(q, w)] += 1;
        }
    })?;
    Ok(profile)
}

/// `profiles[m - 1][w]` for every `m` in `1..=m_max`, from one pass over
/// the words.
pub fn brute_weight_profiles(q: u32, m_max: usize, n: usize) -> Result<Vec<Vec<u64>>> {
    let mut profiles = vec![vec![0; n + 1]; m_max];
    for_each_word(q, n, |w| {
        let run = longest_run(w).max(1);
        let wt = weight(q, w);
        for profile in profiles.iter_mut().skip(run - 1) {
            profile[wt] += 1;
        }
    })?;
    Ok(profiles)
}

pub fn brute_weight_count(q: u32, m: usize, w: usize, n: usize) -> Result<u64> {
    Ok(brute_weight_profile(q, m, n)?.get(w).copied().unwrap_or(0))
}

/// Quaternary strands of length `n` with `|w_4/n - 1/2| < a` (or `<=`).
pub fn brute_balance_count(n: usize, a: f64, boundary: Boundary) -> Result<u64> {
    if a.is_nan() || a < 0.0 {
        return Err(domain(format!("unbalance bound {a} must be non-negative")));
    }
    let limit = a * n as f64;
    let mut count = 0;
    for_each_word(4, n, |word| {
        let off = (weight(4, word) as f64 - n as f64 / 2.0).abs();
        let tie = (off - limit).abs() <= 0.5e-9 * (2.0 * limit).max(1.0);
        let admitted = if tie { boundary == Boundary::Inclusive } else { off < limit };
        if admitted {
            count += 1;
        }
    })?;
    Ok(count)
}

/// What a validation run covered.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceReport {
    pub subject: String,
    /// Words checked exhaustively plus random concatenated blocks.
    pub count: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationError {
    /// The subject could not be built or enumerated.
    Setup(Error),
    Counterexample {
        subject: String,
        input: String,
        reason: String,
    },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Setup(e) => write!(f, "{e}"),
            Self::Counterexample {
                subject,
                input,
                reason,
            } => write!(f, "{subject}: input {input}: {reason}"),
        }
    }
}

impl std::error::Error for ValidationError {}

impl From<Error> for ValidationError {
    fn from(e: Error) -> Self {
        Self::Setup(e)
    }
}

/// A binary balancer checked on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalancerSpec {
    Knuth { n: usize },
    WeakKnuth { n: usize, p0: usize },
}

impl fmt::Display for BalancerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Knuth { n } => write!(f, "knuth balancer(n={n})"),
            Self::WeakKnuth { n, p0 } => write!(f, "weak knuth balancer(n={n}, p0={p0})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    Balancer(BalancerSpec),
    Codec(CodecSpec),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Balancer(b) => b.fmt(f),
            Self::Codec(c) => c.fmt(f),
        }
    }
}

/// The parameter grid used by the test suite and the `verify` command.
pub fn default_grid() -> Vec<Subject> {
    use crate::codecs::CodebookKind::*;
    vec![
        Subject::Codec(CodecSpec::Codebook { kind: TwoMode, m: 2, n: 6 }),
        Subject::Codec(CodecSpec::Codebook { kind: StateIndependent, m: 3, n: 5 }),
        Subject::Codec(CodecSpec::Codebook { kind: StateDependent, m: 3, n: 5 }),
        Subject::Balancer(BalancerSpec::WeakKnuth { n: 10, p0: 2 }),
        Subject::Balancer(BalancerSpec::Knuth { n: 8 }),
        Subject::Codec(CodecSpec::Knuth { data_len: 4 }),
        Subject::Codec(CodecSpec::Rll { m: 2, n: 6 }),
    ]
}

/// Exhaustively round-trips `subject` and re-checks its constraints, then
/// encodes random block sequences from `seed` and checks the concatenation.
pub fn validate_codec(subject: Subject, seed: u64) -> std::result::Result<BruteForceReport, ValidationError> {
    let t0 = Instant::now();
    let name = subject.to_string();
    let count = match subject {
        Subject::Balancer(b) => validate_balancer(b, &name)?,
        Subject::Codec(c) => validate_strand_codec(c, &name, seed)?,
    };
    Ok(BruteForceReport {
        subject: name,
        count,
        elapsed: t0.elapsed(),
    })
}

fn fail(subject: &str, input: impl fmt::Display, reason: impl Into<String>) -> ValidationError {
    ValidationError::Counterexample {
        subject: subject.into(),
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn validate_balancer(spec: BalancerSpec, name: &str) -> std::result::Result<u64, ValidationError> {
    // Allowed |2 w - len| of an output word, derived from the parameters.
    let (balancer, slack): (Box<dyn Balancer>, usize) = match spec {
        BalancerSpec::Knuth { n } => (Box::new(KnuthBalancer::new(n)?), 0),
        BalancerSpec::WeakKnuth { n, p0 } => {
            let s = n.div_ceil(1 << p0);
            (Box::new(WeakKnuthBalancer::new(n, p0)?), 2 * s.div_ceil(2))
        }
    };
    let n = balancer.data_len();
    let mut seen = HashSet::new();
    let mut count = 0;
    let mut failure = None;
    for_each_word(2, n, |bits| {
        if failure.is_some() {
            return;
        }
        count += 1;
        let u = BinaryWord::new(bits.to_vec()).expect("binary word");
        let out = match balancer.encode(&u) {
            Ok(out) => out,
            Err(e) => return failure = Some(fail(name, &u, format!("encode failed: {e}"))),
        };
        let ones = weight(2, out.bits());
        if out.len() != balancer.output_len() {
            failure = Some(fail(name, &u, format!("output length {}", out.len())));
        } else if (2 * ones).abs_diff(out.len()) > slack {
            failure = Some(fail(name, &u, format!("output {out} has weight {ones}")));
        } else if !seen.insert(out.clone()) {
            failure = Some(fail(name, &u, format!("output {out} is not unique")));
        } else if balancer.decode(&out).as_ref() != Ok(&u) {
            failure = Some(fail(name, &u, format!("output {out} does not decode back")));
        }
    })?;
    failure.map_or(Ok(count), Err)
}

fn check_strand(
    codec: &dyn StrandCodec,
    name: &str,
    input: &BinaryWord,
    strand: &Oligo,
) -> std::result::Result<(), ValidationError> {
    let s = strand.symbols();
    if s.len() != codec.block_symbols() {
        return Err(fail(name, input, format!("strand {strand} has the wrong length")));
    }
    if let Some(m) = codec.run_limit() {
        if longest_run(s) > m {
            return Err(fail(name, input, format!("strand {strand} has a run longer than {m}")));
        }
    }
    if let Some(a) = codec.unbalance_bound() {
        let off = (weight(4, s) as f64 / s.len() as f64 - 0.5).abs();
        if off > a + 1e-12 {
            return Err(fail(name, input, format!("strand {strand} is unbalanced by {off}")));
        }
    }
    Ok(())
}

/// Every pair of consecutive blocks reachable from every state keeps runs
/// within `m` across the junction.
fn check_junctions(
    states: &[EncoderState],
    encoded: &[Vec<(Oligo, EncoderState)>],
    m: usize,
    name: &str,
) -> std::result::Result<(), ValidationError> {
    let edge = |s: &[u8], from_end: bool| {
        let mut it: Box<dyn Iterator<Item = &u8>> = if from_end {
            Box::new(s.iter().rev())
        } else {
            Box::new(s.iter())
        };
        let first = *it.next().expect("non-empty strand");
        (first, 1 + it.take_while(|&&x| x == first).count())
    };
    for row in encoded {
        for (first, after) in row {
            let Some(next) = states.iter().position(|s| s == after) else {
                return Err(fail(name, first, format!("unexpected encoder state {after:?}")));
            };
            let (tail_sym, tail_len) = edge(first.symbols(), true);
            for (second, _) in &encoded[next] {
                let (head_sym, head_len) = edge(second.symbols(), false);
                if head_sym == tail_sym && tail_len + head_len > m {
                    return Err(fail(
                        name,
                        format!("{first}{second}"),
                        format!("run longer than {m} across the block boundary"),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn validate_strand_codec(
    spec: CodecSpec,
    name: &str,
    seed: u64,
) -> std::result::Result<u64, ValidationError> {
    let codec = spec.build()?;
    let codec = codec.as_ref();
    let bits = codec.block_bits();
    let states = codec.states();
    if (1u128 << bits) > SOURCE_CAP {
        return Err(Error::Refused {
            space: 1u128 << bits,
            cap: SOURCE_CAP,
        }
        .into());
    }
    if (1u128 << bits) * states.len() as u128 > ENUMERATION_CAP {
        return Err(Error::Refused {
            space: (1u128 << bits) * states.len() as u128,
            cap: ENUMERATION_CAP,
        }
        .into());
    }
    let mut count = 0u64;
    // encoded[state][x] = (strand, state after encoding x)
    let mut encoded = Vec::with_capacity(states.len());
    for &s0 in &states {
        let mut seen = HashSet::new();
        let mut row = Vec::with_capacity(1 << bits);
        let mut failure = None;
        for_each_word(2, bits, |w| {
            if failure.is_some() {
                return;
            }
            count += 1;
            let input = BinaryWord::new(w.to_vec()).expect("binary word");
            let mut enc = s0;
            let strand = match codec.encode_block(&input, &mut enc) {
                Ok(s) => s,
                Err(e) => return failure = Some(fail(name, &input, format!("encode failed: {e}"))),
            };
            if let Err(e) = check_strand(codec, name, &input, &strand) {
                return failure = Some(e);
            }
            if !seen.insert(strand.clone()) {
                return failure = Some(fail(name, &input, format!("{strand} is not unique in state {s0:?}")));
            }
            let mut dec = s0;
            match codec.decode_block(&strand, &mut dec) {
                Ok(back) if back == input && dec == enc => row.push((strand, enc)),
                Ok(back) => failure = Some(fail(name, &input, format!("{strand} decodes to {back}"))),
                Err(e) => failure = Some(fail(name, &input, format!("{strand} fails to decode: {e}"))),
            }
        })?;
        if let Some(f) = failure {
            return Err(f);
        }
        encoded.push(row);
    }
    if let Some(m) = codec.run_limit() {
        check_junctions(&states, &encoded, m, name)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source: Vec<u8> = (0..RANDOM_BLOCKS * bits).map(|_| rng.gen_range(0..2)).collect();
    let strands = crate::codecs::encode_bits(codec, &source)?;
    let stream: Vec<u8> = strands.iter().flat_map(|s| s.symbols().iter().copied()).collect();
    if let Some(m) = codec.run_limit() {
        if longest_run(&stream) > m {
            return Err(fail(name, format!("seed {seed}"), "concatenated strands exceed the run limit"));
        }
    }
    for (i, strand) in strands.iter().enumerate() {
        let input = BinaryWord::new(source[i * bits..(i + 1) * bits].to_vec()).expect("binary word");
        check_strand(codec, name, &input, strand)?;
    }
    let back = crate::codecs::decode_strands(codec, &strands)
        .map_err(|e| fail(name, format!("seed {seed}"), e.to_string()))?;
    if back != source {
        return Err(fail(name, format!("seed {seed}"), "random stream does not round-trip"));
    }
    Ok(count + RANDOM_BLOCKS as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(brute_rll_count(2, 2, 4).unwrap(), 10);
        assert_eq!(brute_rll_count(4, 3, 5).unwrap(), 996);
        assert_eq!(brute_rll_count(4, 1, 3).unwrap(), 36);
        assert_eq!(brute_weight_count(4, 1, 1, 2).unwrap(), 8);
        assert_eq!(brute_weight_profile(2, 1, 4).unwrap(), vec![0, 0, 2, 0, 0]);
    }

    #[test]
    fn profiles_by_run_limit() {
        let all = brute_weight_profiles(4, 3, 5).unwrap();
        for m in 1..=3 {
            assert_eq!(all[m - 1], brute_weight_profile(4, m, 5).unwrap());
        }
        assert_eq!(brute_weight_profiles(2, 2, 0).unwrap(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn balance_counts() {
        assert_eq!(brute_balance_count(2, 0.25, Boundary::Strict).unwrap(), 8);
        assert_eq!(brute_balance_count(4, 0.25, Boundary::Strict).unwrap(), 96);
        assert_eq!(brute_balance_count(4, 0.25, Boundary::Inclusive).unwrap(), 224);
        assert_eq!(brute_balance_count(3, 0.5, Boundary::Strict).unwrap(), 48);
    }

    #[test]
    fn refuses_huge_spaces() {
        assert!(matches!(brute_rll_count(4, 3, 14), Err(Error::Refused { .. })));
        assert!(brute_rll_count(5, 3, 4).is_err());
    }

    #[test]
    fn default_grid_validates() {
        for subject in default_grid() {
            let report = validate_codec(subject, 7).unwrap_or_else(|e| panic!("{e}"));
            assert!(report.count > 0);
        }
    }

    #[test]
    fn run_scanner() {
        assert_eq!(longest_run(&[]), 0);
        assert_eq!(longest_run(&[1, 1, 0, 0, 0, 1]), 3);
    }
}
