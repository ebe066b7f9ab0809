//! Byte streams to strand files and back.
//!
//! The bit stream is the payload bytes (most significant bit first), then
//! `pad` zero bits, then one byte holding `pad`, where `pad` is the smallest
//! value that makes the total a multiple of the block size.

use super::codebook::{BlockCodebook, CodebookKind, EncoderState};
use super::construction1::BalancedConstruction;
use super::construction2::RllConstruction;
use super::reject;
use super::words::{BinaryWord, Oligo};
use crate::error::{domain, Error, Result};

/// A block code from source bits to strands, possibly carrying state from
/// one block to the next.
pub trait StrandCodec {
    fn block_bits(&self) -> usize;
    fn block_symbols(&self) -> usize;

    /// Homopolymer bound that holds across concatenated blocks.
    fn run_limit(&self) -> Option<usize>;

    /// Bound on `|w_4 / n - 1/2|` of every strand.
    fn unbalance_bound(&self) -> Option<f64>;

    fn encode_block(&self, bits: &BinaryWord, state: &mut EncoderState) -> Result<Oligo>;
    fn decode_block(&self, strand: &Oligo, state: &mut EncoderState) -> Result<BinaryWord>;

    /// Encoder states worth exercising; stateless codecs only have `Start`.
    fn states(&self) -> Vec<EncoderState> {
        vec![EncoderState::Start]
    }

    /// Source bits per nucleotide.
    fn rate(&self) -> f64 {
        self.block_bits() as f64 / self.block_symbols() as f64
    }
}

impl StrandCodec for BalancedConstruction {
    fn block_bits(&self) -> usize {
        self.source_len()
    }

    fn block_symbols(&self) -> usize {
        self.strand_len()
    }

    fn run_limit(&self) -> Option<usize> {
        None
    }

    fn unbalance_bound(&self) -> Option<f64> {
        Some(BalancedConstruction::unbalance_bound(self))
    }

    fn encode_block(&self, bits: &BinaryWord, _: &mut EncoderState) -> Result<Oligo> {
        self.encode(bits)
    }

    fn decode_block(&self, strand: &Oligo, _: &mut EncoderState) -> Result<BinaryWord> {
        self.decode(strand)
    }
}

impl StrandCodec for RllConstruction {
    fn block_bits(&self) -> usize {
        self.source_len()
    }

    fn block_symbols(&self) -> usize {
        self.strand_len()
    }

    fn run_limit(&self) -> Option<usize> {
        Some(self.inner().m())
    }

    fn unbalance_bound(&self) -> Option<f64> {
        None
    }

    fn encode_block(&self, bits: &BinaryWord, state: &mut EncoderState) -> Result<Oligo> {
        self.encode(bits, state)
    }

    fn decode_block(&self, strand: &Oligo, state: &mut EncoderState) -> Result<BinaryWord> {
        self.decode(strand, state)
    }

    fn states(&self) -> Vec<EncoderState> {
        self.inner().states()
    }
}

/// Codebook symbols are written as nucleotides directly, so a two-mode
/// code produces strands over G and C only.
impl StrandCodec for BlockCodebook {
    fn block_bits(&self) -> usize {
        self.source_bits() as usize
    }

    fn block_symbols(&self) -> usize {
        self.n()
    }

    fn run_limit(&self) -> Option<usize> {
        Some(self.m())
    }

    fn unbalance_bound(&self) -> Option<f64> {
        None
    }

    fn encode_block(&self, bits: &BinaryWord, state: &mut EncoderState) -> Result<Oligo> {
        if bits.len() != self.block_bits() {
            return Err(domain(format!("expected {} bits, got {}", self.block_bits(), bits.len())));
        }
        Oligo::new(self.encode(bits.to_u64(), state)?)
    }

    fn decode_block(&self, strand: &Oligo, state: &mut EncoderState) -> Result<BinaryWord> {
        let index = self.decode(strand.symbols(), state)?;
        Ok(BinaryWord::from_u64(index, self.block_bits()))
    }

    fn states(&self) -> Vec<EncoderState> {
        BlockCodebook::states(self)
    }
}

/// A codec chosen by name and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodecSpec {
    /// Knuth-balanced AT plane over `data_len` bits.
    Knuth { data_len: usize },
    /// Weak Knuth balanced AT plane with `2^p0` inversion points.
    WeakKnuth { data_len: usize, p0: usize },
    /// Two-mode runlength code on the GC plane, strand length `n`.
    Rll { m: usize, n: usize },
    Codebook { kind: CodebookKind, m: usize, n: usize },
}

impl CodecSpec {
    pub fn build(&self) -> Result<Box<dyn StrandCodec>> {
        use super::balance::{KnuthBalancer, WeakKnuthBalancer};
        Ok(match *self {
            Self::Knuth { data_len } => Box::new(BalancedConstruction::new(Box::new(
                KnuthBalancer::new(data_len)?,
            ))),
            Self::WeakKnuth { data_len, p0 } => Box::new(BalancedConstruction::new(Box::new(
                WeakKnuthBalancer::new(data_len, p0)?,
            ))),
            Self::Rll { m, n } => Box::new(RllConstruction::new(m, n)?),
            Self::Codebook { kind, m, n } => Box::new(match kind {
                CodebookKind::TwoMode => BlockCodebook::two_mode(m, n)?,
                CodebookKind::StateIndependent => BlockCodebook::state_independent(m, n)?,
                CodebookKind::StateDependent => BlockCodebook::state_dependent(m, n)?,
            }),
        })
    }
}

impl std::fmt::Display for CodecSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Knuth { data_len } => write!(f, "knuth(l={data_len})"),
            Self::WeakKnuth { data_len, p0 } => write!(f, "weak-knuth(l={data_len}, p0={p0})"),
            Self::Rll { m, n } => write!(f, "rll(m={m}, n={n})"),
            Self::Codebook { kind, m, n } => {
                let name = match kind {
                    CodebookKind::TwoMode => "two-mode",
                    CodebookKind::StateIndependent => "state-independent",
                    CodebookKind::StateDependent => "state-dependent",
                };
                write!(f, "{name}(m={m}, n={n})")
            }
        }
    }
}

/// Moves any error raised while decoding record `i` onto that record.
fn at_record(e: Error, record: usize) -> Error {
    match e {
        Error::Decode { reason, .. } => Error::Decode { record, reason },
        other => Error::Decode {
            record,
            reason: other.to_string(),
        },
    }
}

/// Encodes a bit stream whose length is a multiple of the block size.
pub fn encode_bits(codec: &dyn StrandCodec, bits: &[u8]) -> Result<Vec<Oligo>> {
    let b = codec.block_bits();
    if b == 0 || !bits.len().is_multiple_of(b) {
        return Err(domain(format!("{} bits is not a multiple of the block size {b}", bits.len())));
    }
    let mut state = EncoderState::Start;
    bits.chunks(b)
        .map(|c| codec.encode_block(&BinaryWord::new(c.to_vec())?, &mut state))
        .collect()
}

/// Decodes strands back to bits, checking the run and balance guarantees
/// of the codec along the way. Errors name the offending record.
pub fn decode_strands(codec: &dyn StrandCodec, strands: &[Oligo]) -> Result<Vec<u8>> {
    let mut state = EncoderState::Start;
    let mut bits = Vec::with_capacity(strands.len() * codec.block_bits());
    let mut last = None;
    let mut run = 0;
    for (i, strand) in strands.iter().enumerate() {
        if strand.len() != codec.block_symbols() {
            return Err(at_record(
                reject(format!(
                    "strand has {} nucleotides, expected {}",
                    strand.len(),
                    codec.block_symbols()
                )),
                i,
            ));
        }
        if let Some(limit) = codec.run_limit() {
            for &s in strand.symbols() {
                run = if last == Some(s) { run + 1 } else { 1 };
                last = Some(s);
                if run > limit {
                    return Err(at_record(
                        reject(format!("homopolymer run longer than {limit}")),
                        i,
                    ));
                }
            }
        }
        if let Some(a) = codec.unbalance_bound() {
            if strand.relative_unbalance() > a + 1e-12 {
                return Err(at_record(reject(format!("GC unbalance exceeds {a}")), i));
            }
        }
        let block = codec.decode_block(strand, &mut state).map_err(|e| at_record(e, i))?;
        bits.extend_from_slice(block.bits());
    }
    Ok(bits)
}

/// Payload bits, zero padding and the trailer byte.
pub fn frame(payload: &[u8], block_bits: usize) -> Result<Vec<u8>> {
    if block_bits == 0 || block_bits > 256 {
        return Err(domain(format!("block size {block_bits} must lie in 1..=256")));
    }
    let used = (8 * payload.len() + 8) % block_bits;
    let pad = (block_bits - used) % block_bits;
    let mut bits: Vec<u8> = payload
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1))
        .collect();
    bits.extend(std::iter::repeat_n(0, pad));
    bits.extend((0..8).rev().map(|i| ((pad >> i) & 1) as u8));
    Ok(bits)
}

/// Inverse of [`frame`]; failures are attributed to the last record.
pub fn unframe(bits: &[u8], last_record: usize) -> Result<Vec<u8>> {
    let bad = |reason: &str| Error::Decode {
        record: last_record,
        reason: reason.into(),
    };
    if bits.len() < 8 {
        return Err(bad("stream too short for the length trailer"));
    }
    let (body, trailer) = bits.split_at(bits.len() - 8);
    let pad = trailer.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
    if pad > body.len() || (body.len() - pad) % 8 != 0 {
        return Err(bad("inconsistent padding trailer"));
    }
    let (data, padding) = body.split_at(body.len() - pad);
    if padding.iter().any(|&b| b != 0) {
        return Err(bad("nonzero padding bits"));
    }
    Ok(data
        .chunks(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | b))
        .collect())
}

pub fn encode_bytes(codec: &dyn StrandCodec, payload: &[u8]) -> Result<Vec<Oligo>> {
    encode_bits(codec, &frame(payload, codec.block_bits())?)
}

pub fn decode_bytes(codec: &dyn StrandCodec, strands: &[Oligo]) -> Result<Vec<u8>> {
    let bits = decode_strands(codec, strands)?;
    unframe(&bits, strands.len().saturating_sub(1))
}

/// One strand per line, upper case.
pub fn write_strands(strands: &[Oligo]) -> String {
    strands.iter().map(|s| format!("{s}\n")).collect()
}

/// Parses a strand file, skipping blank lines. Each strand comes with its
/// 1-based line number.
pub fn read_strands(text: &str) -> Result<Vec<(usize, Oligo)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse()
                .map(|o| (i + 1, o))
                .map_err(|e| match e {
                    Error::Parse { position, found } => Error::Decode {
                        record: i,
                        reason: format!("line {}: invalid character {found:?} at column {}", i + 1, position + 1),
                    },
                    other => other,
                })
        })
        .collect()
}
