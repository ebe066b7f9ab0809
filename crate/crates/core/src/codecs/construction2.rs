//! Runlength-limited strands from a binary runlength code on the GC plane.

use super::codebook::{BlockCodebook, EncoderState};
use super::reject;
use super::words::{BinaryWord, Oligo};
use crate::error::{domain, Result};

/// Encodes `k + n` source bits as `n` nucleotides: `k` bits choose a
/// codeword `u` of the binary two-mode code, the other `n` bits form `y`,
/// and `v_i = u_i + 2 y_i`. A homopolymer run in `v` needs a run in `u`, so
/// runs stay at most `m`.
#[derive(Clone, Debug)]
pub struct RllConstruction {
    inner: BlockCodebook,
}

impl RllConstruction {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Ok(Self {
            inner: BlockCodebook::two_mode(m, n)?,
        })
    }

    pub fn inner(&self) -> &BlockCodebook {
        &self.inner
    }

    pub fn strand_len(&self) -> usize {
        self.inner.n()
    }

    pub fn source_len(&self) -> usize {
        self.inner.source_bits() as usize + self.strand_len()
    }

    /// Inner rate plus one bit per nucleotide.
    pub fn rate(&self) -> f64 {
        self.source_len() as f64 / self.strand_len() as f64
    }

    pub fn encode(&self, source: &BinaryWord, state: &mut EncoderState) -> Result<Oligo> {
        if source.len() != self.source_len() {
            return Err(domain(format!(
                "expected {} source bits, got {}",
                self.source_len(),
                source.len()
            )));
        }
        let (index, y) = source.split_at(self.inner.source_bits() as usize);
        let u = BinaryWord::new(self.inner.encode(index.to_u64(), state)?)?;
        Oligo::from_planes(&u, &y)
    }

    pub fn decode(&self, strand: &Oligo, state: &mut EncoderState) -> Result<BinaryWord> {
        if strand.len() != self.strand_len() {
            return Err(reject(format!(
                "strand has {} symbols, expected {}",
                strand.len(),
                self.strand_len()
            )));
        }
        let (u, y) = strand.planes();
        let index = self.inner.decode(u.bits(), state)?;
        Ok(BinaryWord::from_u64(index, self.inner.source_bits() as usize).concat(&y))
    }
}
