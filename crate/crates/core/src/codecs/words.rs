use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Nucleotide letters indexed by symbol value: `G = 0, C = 1, A = 2, T = 3`.
pub const NUCLEOTIDES: [char; 4] = ['G', 'C', 'A', 'T'];

/// `phi(u)`: 1 for A/T, 0 for G/C.
#[inline]
pub fn is_at(symbol: u8) -> bool {
    symbol > 1
}

/// Longest run of equal consecutive symbols; 0 for an empty slice.
pub fn max_run(symbols: &[u8]) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for &s in symbols {
        run = if prev == Some(s) { run + 1 } else { 1 };
        prev = Some(s);
        best = best.max(run);
    }
    best
}

/// A binary word, one bit per element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(domain(format!("bit {} at position {pos} is not 0 or 1", bits[pos])));
        }
        Ok(Self(bits))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The low `len` bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        Self((0..len).rev().map(|i| ((value >> i) & 1) as u8).collect())
    }

    /// Reads the word as an unsigned integer, most significant bit first.
    pub fn to_u64(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w_2`, the number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn max_run(&self) -> usize {
        max_run(&self.0)
    }

    /// Copy with the first `k` bits inverted.
    pub fn invert_prefix(&self, k: usize) -> Self {
        let mut bits = self.0.clone();
        for b in bits.iter_mut().take(k) {
            *b ^= 1;
        }
        Self(bits)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Self(bits)
    }

    pub fn split_at(&self, mid: usize) -> (Self, Self) {
        let (a, b) = self.0.split_at(mid);
        (Self(a.to_vec()), Self(b.to_vec()))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(Error::Parse { position, found }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A DNA strand as a sequence of quaternary symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Oligo(Vec<u8>);

impl Oligo {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(pos) = symbols.iter().position(|&s| s > 3) {
            return Err(domain(format!(
                "symbol {} at position {pos} is outside 0..=3",
                symbols[pos]
            )));
        }
        Ok(Self(symbols))
    }

    /// `v_i = low_i + 2 high_i`; the AT-content of the result is `w_2(high)`.
    pub fn from_planes(low: &BinaryWord, high: &BinaryWord) -> Result<Self> {
        if low.len() != high.len() {
            return Err(domain(format!(
                "plane lengths differ: {} and {}",
                low.len(),
                high.len()
            )));
        }
        Ok(Self(
            low.bits()
                .iter()
                .zip(high.bits())
                .map(|(&l, &h)| l + 2 * h)
                .collect(),
        ))
    }

    /// Splits `x = y + 2z` into `(y, z)`.
    pub fn planes(&self) -> (BinaryWord, BinaryWord) {
        let low = self.0.iter().map(|s| s & 1).collect();
        let high = self.0.iter().map(|s| s >> 1).collect();
        (BinaryWord(low), BinaryWord(high))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w_4`, the number of A or T nucleotides.
    pub fn at_weight(&self) -> usize {
        self.0.iter().filter(|&&s| is_at(s)).count()
    }

    /// `|w_4 / n - 1/2|`.
    pub fn relative_unbalance(&self) -> f64 {
        (self.at_weight() as f64 / self.len() as f64 - 0.5).abs()
    }

    /// Longest homopolymer run.
    pub fn max_run(&self) -> usize {
        max_run(&self.0)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Oligo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", NUCLEOTIDES[usize::from(s)])?;
        }
        Ok(())
    }
}

impl FromStr for Oligo {
    type Err = Error;

    /// Accepts upper- or lower-case `ACGT`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c.to_ascii_uppercase() {
                'G' => Ok(0),
                'C' => Ok(1),
                'A' => Ok(2),
                'T' => Ok(3),
                _ => Err(Error::Parse { position, found: c }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

pub fn oligo_to_text(o: &Oligo) -> String {
    o.to_string()
}

pub fn text_to_oligo(s: &str) -> Result<Oligo> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nucleotide_mapping() {
        let o = Oligo::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(oligo_to_text(&o), "GCAT");
        let t = text_to_oligo("TTAA").unwrap();
        assert_eq!(t.symbols(), &[3, 3, 2, 2]);
        assert_eq!(t.at_weight(), 4);
        assert_eq!(text_to_oligo("gcat").unwrap(), o);
    }

    #[test]
    fn parse_error_reports_position() {
        assert_eq!(
            text_to_oligo("ACGU"),
            Err(Error::Parse { position: 3, found: 'U' })
        );
    }

    #[test]
    fn plane_merge_examples() {
        // Balance plane u = 10 on top, payload y = 11 below: TC.
        let u: BinaryWord = "10".parse().unwrap();
        let y: BinaryWord = "11".parse().unwrap();
        let v = Oligo::from_planes(&y, &u).unwrap();
        assert_eq!(v.symbols(), &[3, 1]);
        assert_eq!(v.to_string(), "TC");
        assert_eq!(v.at_weight(), u.weight());
        // Runlength plane u = 0101 below, payload y = 0011 on top: GCAT.
        let u: BinaryWord = "0101".parse().unwrap();
        let y: BinaryWord = "0011".parse().unwrap();
        let v = Oligo::from_planes(&u, &y).unwrap();
        assert_eq!(v.to_string(), "GCAT");
        assert_eq!(v.max_run(), 1);
        assert!(Oligo::from_planes(&u, &BinaryWord::zeros(3)).is_err());
    }

    #[test]
    fn runs_and_weights() {
        let w: BinaryWord = "0011100".parse().unwrap();
        assert_eq!(w.max_run(), 3);
        assert_eq!(w.weight(), 3);
        assert_eq!(w.invert_prefix(2).to_string(), "1111100");
        assert_eq!(BinaryWord::from_u64(5, 4).to_string(), "0101");
        assert_eq!(w.to_u64(), 0b0011100);
        assert_eq!(max_run(&[]), 0);
        assert!(BinaryWord::new(vec![0, 2]).is_err());
        assert!(Oligo::new(vec![4]).is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(s in "[ACGT]{0,64}") {
            let o = text_to_oligo(&s).unwrap();
            prop_assert_eq!(oligo_to_text(&o), s);
        }

        #[test]
        fn planes_round_trip(symbols in proptest::collection::vec(0u8..4, 0..40)) {
            let o = Oligo::new(symbols).unwrap();
            let (low, high) = o.planes();
            prop_assert_eq!(high.weight(), o.at_weight());
            prop_assert_eq!(Oligo::from_planes(&low, &high).unwrap(), o);
        }
    }
}
