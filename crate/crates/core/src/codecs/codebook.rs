//! Table-driven block codes for runlength-limited sequences.
//!
//! Codewords are stored packed into `u32`, first symbol most significant, so
//! numeric order is lexicographic order and every table is kept sorted.

use super::reject;
use crate::error::{domain, Error, Result};

/// Longest binary block handled by the tables.
pub const MAX_BINARY_LEN: usize = 14;
/// Longest quaternary block handled by the tables.
pub const MAX_QUATERNARY_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodebookKind {
    /// Binary; two modes selected by the last bit of the previous codeword.
    TwoMode,
    /// Quaternary; two representations per source word.
    StateIndependent,
    /// Quaternary; one table per last symbol of the previous codeword.
    StateDependent,
}

/// What the encoder remembers between blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EncoderState {
    #[default]
    Start,
    Last(u8),
}

impl EncoderState {
    fn after(word: &[u8]) -> Self {
        word.last().map_or(Self::Start, |&s| Self::Last(s))
    }
}

#[derive(Clone, Debug)]
pub struct BlockCodebook {
    kind: CodebookKind,
    m: usize,
    n: usize,
    source_bits: u32,
    tables: Vec<Vec<u32>>,
    start: Vec<u32>,
}

fn bits_per_symbol(q: u32) -> u32 {
    if q == 2 {
        1
    } else {
        2
    }
}

/// All length-`n` words over `0..q` with runs at most `m`, sorted.
pub(crate) fn constrained_words(q: u32, m: usize, n: usize) -> Vec<u32> {
    struct Walk {
        q: u32,
        m: usize,
        bps: u32,
        out: Vec<u32>,
    }
    impl Walk {
        fn go(&mut self, left: usize, acc: u32, last: u32, run: usize) {
            if left == 0 {
                self.out.push(acc);
                return;
            }
            for s in 0..self.q {
                let r = if s == last { run + 1 } else { 1 };
                if r <= self.m {
                    self.go(left - 1, (acc << self.bps) | s, s, r);
                }
            }
        }
    }
    let mut walk = Walk {
        q,
        m,
        bps: bits_per_symbol(q),
        out: Vec::new(),
    };
    walk.go(n, 0, u32::MAX, 0);
    walk.out
}

fn floor_log2(v: usize) -> u32 {
    usize::BITS - 1 - v.leading_zeros()
}

/// `|2 w_4 - n|` of a packed quaternary word.
fn deviation(word: u32, n: usize) -> usize {
    let at = (word & 0xAAAA_AAAA).count_ones() as usize;
    (2 * at).abs_diff(n)
}

/// Drops words from a sorted list until `keep` remain, most unbalanced
/// first, lexicographically smallest first among equals.
fn prune_by_unbalance(words: Vec<u32>, n: usize, keep: usize) -> Vec<u32> {
    let mut drop = words.len().saturating_sub(keep);
    if drop == 0 {
        return words;
    }
    let mut per_dev = vec![0usize; n + 1];
    for &w in &words {
        per_dev[deviation(w, n)] += 1;
    }
    // Remove every word above `cut`, and `partial` of the words at `cut`.
    let mut cut = n;
    loop {
        if per_dev[cut] >= drop {
            break;
        }
        drop -= per_dev[cut];
        cut -= 1;
    }
    let mut partial = drop;
    words
        .into_iter()
        .filter(|&w| {
            let d = deviation(w, n);
            if d > cut {
                false
            } else if d == cut && partial > 0 {
                partial -= 1;
                false
            } else {
                true
            }
        })
        .collect()
}

impl BlockCodebook {
    fn check_len(q: u32, m: usize, n: usize) -> Result<()> {
        let cap = if q == 2 { MAX_BINARY_LEN } else { MAX_QUATERNARY_LEN };
        if n == 0 || n > cap {
            return Err(domain(format!("block length {n} must lie in 1..={cap}")));
        }
        if m == 0 {
            return Err(domain("maximum run must be at least 1"));
        }
        Ok(())
    }

    /// Binary two-mode code: `floor(log2 N_2(m, n)) - 1` bits per block.
    pub fn two_mode(m: usize, n: usize) -> Result<Self> {
        Self::check_len(2, m, n)?;
        let words = constrained_words(2, m, n);
        if words.len() < 4 {
            return Err(Error::Config(format!(
                "only {} binary words of length {n} with runs <= {m}",
                words.len()
            )));
        }
        let source_bits = floor_log2(words.len()) - 1;
        let k = 1usize << source_bits;
        let first_bit = 1u32 << (n - 1);
        let (ones, zeros): (Vec<u32>, Vec<u32>) = words.into_iter().partition(|w| w & first_bit != 0);
        Ok(Self {
            kind: CodebookKind::TwoMode,
            m,
            n,
            source_bits,
            tables: vec![zeros[..k].to_vec(), ones[..k].to_vec()],
            start: Vec::new(),
        })
    }

    /// Quaternary code with two representations per source word, one
    /// starting with G or A and one starting with C or T.
    pub fn state_independent(m: usize, n: usize) -> Result<Self> {
        Self::check_len(4, m, n)?;
        let words = constrained_words(4, m, n);
        if words.len() < 8 {
            return Err(Error::Config(format!(
                "only {} quaternary words of length {n} with runs <= {m}",
                words.len()
            )));
        }
        let source_bits = floor_log2(words.len()) - 1;
        let k = 1usize << source_bits;
        let low_bit = 1u32 << (2 * (n - 1));
        let (odd, even): (Vec<u32>, Vec<u32>) = words.into_iter().partition(|w| w & low_bit != 0);
        Ok(Self {
            kind: CodebookKind::StateIndependent,
            m,
            n,
            source_bits,
            tables: vec![prune_by_unbalance(even, n, k), prune_by_unbalance(odd, n, k)],
            start: Vec::new(),
        })
    }

    /// Quaternary code with one table `L(., a)` per previous last symbol `a`,
    /// holding words that do not start with `a`.
    pub fn state_dependent(m: usize, n: usize) -> Result<Self> {
        Self::check_len(4, m, n)?;
        let words = constrained_words(4, m, n);
        if !words.len().is_multiple_of(4) {
            return Err(Error::Internal(format!(
                "{} constrained words is not a multiple of 4",
                words.len()
            )));
        }
        let table_size = words.len() / 4 * 3;
        if table_size < 2 {
            return Err(Error::Config(format!("state tables for m={m}, n={n} are too small")));
        }
        let source_bits = floor_log2(table_size);
        let k = 1usize << source_bits;
        let shift = 2 * (n - 1);
        let tables = (0..4u32)
            .map(|a| {
                let allowed = words.iter().copied().filter(|w| w >> shift != a).collect();
                prune_by_unbalance(allowed, n, k)
            })
            .collect();
        let start = prune_by_unbalance(words, n, k);
        Ok(Self {
            kind: CodebookKind::StateDependent,
            m,
            n,
            source_bits,
            tables,
            start,
        })
    }

    pub fn kind(&self) -> CodebookKind {
        self.kind
    }

    pub fn alphabet(&self) -> u32 {
        match self.kind {
            CodebookKind::TwoMode => 2,
            _ => 4,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source_bits(&self) -> u32 {
        self.source_bits
    }

    /// Number of source words, `2^source_bits`.
    pub fn size(&self) -> u64 {
        1 << self.source_bits
    }

    /// Source bits per symbol.
    pub fn rate(&self) -> f64 {
        f64::from(self.source_bits) / self.n as f64
    }

    /// Sorted, packed tables: the two modes, the two representation lists,
    /// or the four state tables.
    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    /// Table used for the first block of a state-dependent stream.
    pub fn start_table(&self) -> &[u32] {
        &self.start
    }

    /// Every encoder state that can occur.
    pub fn states(&self) -> Vec<EncoderState> {
        std::iter::once(EncoderState::Start)
            .chain((0..self.alphabet() as u8).map(EncoderState::Last))
            .collect()
    }

    pub fn unpack(&self, packed: u32) -> Vec<u8> {
        let bps = bits_per_symbol(self.alphabet());
        let mask = (1u32 << bps) - 1;
        (0..self.n)
            .rev()
            .map(|i| ((packed >> (bps as usize * i)) & mask) as u8)
            .collect()
    }

    fn pack(&self, word: &[u8]) -> Result<u32> {
        let q = self.alphabet();
        if word.len() != self.n {
            return Err(reject(format!("word has {} symbols, expected {}", word.len(), self.n)));
        }
        let bps = bits_per_symbol(q);
        word.iter().try_fold(0u32, |acc, &s| {
            if u32::from(s) >= q {
                Err(reject(format!("symbol {s} outside the {q}-ary alphabet")))
            } else {
                Ok((acc << bps) | u32::from(s))
            }
        })
    }

    fn first_symbol(&self, packed: u32) -> u32 {
        let bps = bits_per_symbol(self.alphabet());
        packed >> (bps as usize * (self.n - 1))
    }

    fn state_table(&self, state: EncoderState) -> Result<&[u32]> {
        match state {
            EncoderState::Start => Ok(&self.start),
            EncoderState::Last(a) => self
                .tables
                .get(usize::from(a))
                .map(Vec::as_slice)
                .ok_or_else(|| domain(format!("state symbol {a} out of range"))),
        }
    }

    /// Codeword for source word `index` given the encoder state; advances
    /// the state.
    pub fn encode(&self, index: u64, state: &mut EncoderState) -> Result<Vec<u8>> {
        if index >= self.size() {
            return Err(domain(format!("source word {index} exceeds {} bits", self.source_bits)));
        }
        let i = index as usize;
        let packed = match self.kind {
            CodebookKind::TwoMode => match *state {
                EncoderState::Last(0) => self.tables[1][i],
                _ => self.tables[0][i],
            },
            CodebookKind::StateIndependent => {
                let w = self.tables[0][i];
                match *state {
                    EncoderState::Last(a) if u32::from(a) == self.first_symbol(w) => self.tables[1][i],
                    _ => w,
                }
            }
            CodebookKind::StateDependent => self.state_table(*state)?[i],
        };
        let word = self.unpack(packed);
        *state = EncoderState::after(&word);
        Ok(word)
    }

    /// Source word for `word`; advances the state.
    pub fn decode(&self, word: &[u8], state: &mut EncoderState) -> Result<u64> {
        let packed = self.pack(word)?;
        let table = match self.kind {
            CodebookKind::TwoMode => &self.tables[self.first_symbol(packed) as usize],
            CodebookKind::StateIndependent => &self.tables[(self.first_symbol(packed) & 1) as usize],
            CodebookKind::StateDependent => self.state_table(*state)?,
        };
        let index = table
            .binary_search(&packed)
            .map_err(|_| reject("word is not a codeword in the current state"))?;
        *state = EncoderState::after(word);
        Ok(index as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{state_dependent_rate, state_independent_rate, two_mode_rate};
    use crate::codecs::words::max_run;
    use crate::counting::rll_count;

    #[test]
    fn enumeration_matches_counts() {
        for q in [2, 4] {
            for m in 1..=4 {
                for n in 1..=7 {
                    let words = constrained_words(q, m, n);
                    assert_eq!(rll_count(q, m, n).unwrap(), words.len().into());
                    assert!(words.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn rates_agree_with_counts() {
        for m in 1..=4 {
            for n in 3..=8 {
                if let Ok(c) = BlockCodebook::two_mode(m, n) {
                    assert_eq!(u64::from(c.source_bits()), two_mode_rate(m, n).unwrap().source_bits - n as u64);
                }
                let c = BlockCodebook::state_independent(m, n).unwrap();
                assert_eq!(u64::from(c.source_bits()), state_independent_rate(m, n).unwrap().source_bits);
                let c = BlockCodebook::state_dependent(m, n).unwrap();
                assert_eq!(u64::from(c.source_bits()), state_dependent_rate(m, n).unwrap().source_bits);
            }
        }
        assert_eq!(BlockCodebook::state_dependent(3, 5).unwrap().source_bits(), 9);
    }

    fn check_streams(code: &BlockCodebook) {
        for s0 in code.states() {
            let mut enc = s0;
            let mut dec = s0;
            let mut prev: Vec<u8> = Vec::new();
            for index in 0..code.size() {
                let before = enc;
                let w = code.encode(index, &mut enc).unwrap();
                assert!(max_run(&w) <= code.m());
                if let EncoderState::Last(a) = before {
                    assert_ne!(w[0], a, "{:?} state {before:?}", code.kind());
                }
                let mut joined = prev.clone();
                joined.extend_from_slice(&w);
                assert!(max_run(&joined) <= code.m());
                assert_eq!(code.decode(&w, &mut dec).unwrap(), index);
                assert_eq!(enc, dec);
                prev = w;
            }
        }
    }

    #[test]
    fn all_codes_round_trip_from_every_state() {
        check_streams(&BlockCodebook::two_mode(2, 6).unwrap());
        check_streams(&BlockCodebook::two_mode(3, 5).unwrap());
        check_streams(&BlockCodebook::state_independent(1, 5).unwrap());
        check_streams(&BlockCodebook::state_independent(3, 5).unwrap());
        check_streams(&BlockCodebook::state_dependent(3, 5).unwrap());
        check_streams(&BlockCodebook::state_dependent(1, 4).unwrap());
    }

    #[test]
    fn pruning_keeps_the_most_balanced() {
        let n = 6;
        let code = BlockCodebook::state_dependent(2, n).unwrap();
        let all = constrained_words(4, 2, n);
        for (a, table) in code.tables().iter().enumerate() {
            let worst_kept = table.iter().map(|&w| deviation(w, n)).max().unwrap();
            let dropped = all
                .iter()
                .filter(|&&w| w >> (2 * (n - 1)) != a as u32)
                .filter(|w| table.binary_search(w).is_err());
            assert!(dropped.into_iter().all(|&w| deviation(w, n) >= worst_kept));
        }
    }

    #[test]
    fn unknown_words_are_rejected() {
        let code = BlockCodebook::state_dependent(3, 5).unwrap();
        let mut st = EncoderState::Last(0);
        assert!(code.decode(&[0, 1, 2, 3, 0], &mut st).is_err());
        assert!(code.decode(&[0, 0, 0, 0, 1], &mut EncoderState::Start).is_err());
        assert!(code.decode(&[1, 2, 3], &mut EncoderState::Start).is_err());
        assert!(code.encode(code.size(), &mut EncoderState::Start).is_err());
        assert!(BlockCodebook::two_mode(1, 5).is_err());
        assert!(BlockCodebook::state_dependent(2, 13).is_err());
    }
}
