//! GC-balanced strands from a binary balancing code on the AT plane.

use super::balance::Balancer;
use super::reject;
use super::words::{BinaryWord, Oligo};
use crate::error::{domain, Result};

/// Encodes `l + n` source bits as `n` nucleotides: the first `l` bits go
/// through the balancer to form the AT plane `u`, the remaining `n` bits
/// form the free plane `y`, and `v_i = y_i + 2 u_i`.
pub struct BalancedConstruction {
    balancer: Box<dyn Balancer>,
}

impl BalancedConstruction {
    pub fn new(balancer: Box<dyn Balancer>) -> Self {
        Self { balancer }
    }

    pub fn balancer(&self) -> &dyn Balancer {
        self.balancer.as_ref()
    }

    /// Strand length `n`.
    pub fn strand_len(&self) -> usize {
        self.balancer.output_len()
    }

    /// Source bits per strand, `l + n`.
    pub fn source_len(&self) -> usize {
        self.balancer.data_len() + self.strand_len()
    }

    /// `1 + l / n` bits per nucleotide.
    pub fn rate(&self) -> f64 {
        self.source_len() as f64 / self.strand_len() as f64
    }

    pub fn unbalance_bound(&self) -> f64 {
        self.balancer.unbalance_bound()
    }

    pub fn encode(&self, source: &BinaryWord) -> Result<Oligo> {
        if source.len() != self.source_len() {
            return Err(domain(format!(
                "expected {} source bits, got {}",
                self.source_len(),
                source.len()
            )));
        }
        let (data, payload) = source.split_at(self.balancer.data_len());
        let u = self.balancer.encode(&data)?;
        Oligo::from_planes(&payload, &u)
    }

    pub fn decode(&self, strand: &Oligo) -> Result<BinaryWord> {
        if strand.len() != self.strand_len() {
            return Err(reject(format!(
                "strand has {} symbols, expected {}",
                strand.len(),
                self.strand_len()
            )));
        }
        let (payload, u) = strand.planes();
        Ok(self.balancer.decode(&u)?.concat(&payload))
    }
}

impl std::fmt::Debug for BalancedConstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BalancedConstruction")
            .field("data_len", &self.balancer.data_len())
            .field("strand_len", &self.strand_len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::balance::{KnuthBalancer, WeakKnuthBalancer};

    #[test]
    fn knuth_strands_are_exactly_balanced() {
        let c = BalancedConstruction::new(Box::new(KnuthBalancer::new(4).unwrap()));
        assert_eq!(c.strand_len(), 8);
        assert_eq!(c.source_len(), 12);
        assert!((c.rate() - 1.5).abs() < 1e-15);
        for v in 0..1u64 << 12 {
            let s = BinaryWord::from_u64(v, 12);
            let o = c.encode(&s).unwrap();
            assert_eq!(o.at_weight(), 4);
            assert_eq!(c.decode(&o).unwrap(), s);
        }
    }

    #[test]
    fn weak_knuth_strands_respect_bound() {
        let c = BalancedConstruction::new(Box::new(WeakKnuthBalancer::new(10, 2).unwrap()));
        let bound = c.unbalance_bound();
        for v in 0..1u64 << 10 {
            let s = BinaryWord::from_u64(v, 10).concat(&BinaryWord::from_u64(v * 37, 14));
            let o = c.encode(&s).unwrap();
            assert!(o.relative_unbalance() <= bound + 1e-12);
            assert_eq!(c.decode(&o).unwrap(), s);
        }
    }

    #[test]
    fn wrong_lengths() {
        let c = BalancedConstruction::new(Box::new(KnuthBalancer::new(4).unwrap()));
        assert!(c.encode(&BinaryWord::zeros(11)).is_err());
        assert!(c.decode(&"GCAT".parse().unwrap()).is_err());
    }
}
