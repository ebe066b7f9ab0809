//! Rates of the block-code constructions, computed from exact counts.

use num_bigint::BigUint;
use num_traits::Zero;

use super::capacity::capacity;
use crate::counting::{rll_count, BigCount};
use crate::error::{domain, Error, Result};

/// Source bits carried by one block of `symbols` quaternary symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockRate {
    pub source_bits: u64,
    pub symbols: usize,
}

impl BlockRate {
    pub fn rate(&self) -> f64 {
        self.source_bits as f64 / self.symbols as f64
    }

    /// Rate divided by the quaternary capacity `C_4(m)`.
    pub fn efficiency(&self, m: usize) -> Result<f64> {
        Ok(self.rate() / capacity(4, m)?.capacity_bits)
    }
}

/// `floor(log2 v)`.
pub fn floor_log2(v: &BigCount) -> Result<u64> {
    if v.is_zero() {
        return Err(domain("log2 of zero"));
    }
    Ok(v.bits() - 1)
}

/// Binary-plane construction with the two-mode inner code:
/// `n - 1 + floor(log2 N_2(m, n))` bits per `n` symbols.
pub fn two_mode_rate(m: usize, n: usize) -> Result<BlockRate> {
    let count = rll_count(2, m, n)?;
    if count < BigUint::from(4u8) {
        return Err(domain(format!("N_2({m},{n}) = {count} leaves no two-mode code")));
    }
    Ok(BlockRate {
        source_bits: n as u64 - 1 + floor_log2(&count)?,
        symbols: n,
    })
}

/// Two representations per source word: `floor(log2 N_4(m, n)) - 1` bits.
pub fn state_independent_rate(m: usize, n: usize) -> Result<BlockRate> {
    let count = rll_count(4, m, n)?;
    if count < BigUint::from(8u8) {
        return Err(domain(format!("N_4({m},{n}) = {count} leaves no paired code")));
    }
    Ok(BlockRate {
        source_bits: floor_log2(&count)? - 1,
        symbols: n,
    })
}

/// `K = 3/4 N_4(m, n)`, the size of each state table.
pub fn state_table_size(m: usize, n: usize) -> Result<BigCount> {
    let count = rll_count(4, m, n)?;
    if (&count % 4u8) != BigUint::zero() {
        return Err(Error::Internal(format!("N_4({m},{n}) = {count} is not a multiple of 4")));
    }
    Ok(count / 4u8 * 3u8)
}

/// Four state tables: `floor(log2(3/4 N_4(m, n)))` bits.
pub fn state_dependent_rate(m: usize, n: usize) -> Result<BlockRate> {
    let k = state_table_size(m, n)?;
    if k < BigUint::from(2u8) {
        return Err(domain(format!("state tables for m={m}, n={n} are too small")));
    }
    Ok(BlockRate {
        source_bits: floor_log2(&k)?,
        symbols: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blawat_parameters() {
        assert_eq!(two_mode_rate(3, 5).unwrap().source_bits, 8);
        assert_eq!(state_independent_rate(3, 5).unwrap().source_bits, 8);
        assert_eq!(state_table_size(3, 5).unwrap(), BigUint::from(747u32));
        let r = state_dependent_rate(3, 5).unwrap();
        assert_eq!(r.source_bits, 9);
        assert!((r.efficiency(3).unwrap() - 0.908).abs() < 5e-4);
        assert!((two_mode_rate(3, 5).unwrap().efficiency(3).unwrap() - 0.807).abs() < 5e-4);
    }

    #[test]
    fn selected_entries() {
        assert!((two_mode_rate(2, 8).unwrap().efficiency(2).unwrap() - 0.845).abs() < 5e-4);
        assert!((state_independent_rate(1, 7).unwrap().efficiency(1).unwrap() - 0.901).abs() < 5e-4);
        assert!((state_dependent_rate(1, 7).unwrap().efficiency(1).unwrap() - 0.991).abs() < 5e-4);
    }

    #[test]
    fn too_short_words() {
        assert!(two_mode_rate(1, 3).is_err());
        assert!(floor_log2(&BigUint::zero()).is_err());
    }
}
