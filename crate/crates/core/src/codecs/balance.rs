//! Knuth-style balancing of binary words.

use super::words::BinaryWord;
use super::reject;
use crate::error::{domain, Result};

/// A fixed-length binary balancing code: `data_len` bits in, a prefix
/// followed by the modified body out.
pub trait Balancer: Send + Sync {
    fn data_len(&self) -> usize;
    fn prefix_len(&self) -> usize;

    fn output_len(&self) -> usize {
        self.prefix_len() + self.data_len()
    }

    fn encode(&self, data: &BinaryWord) -> Result<BinaryWord>;
    fn decode(&self, word: &BinaryWord) -> Result<BinaryWord>;

    /// Largest `|w_2 - n/2|` of an output word, `n` its full length.
    fn max_deviation(&self) -> f64;

    /// Largest relative unbalance `|w_2 / n - 1/2|` of an output word.
    fn unbalance_bound(&self) -> f64 {
        self.max_deviation() / self.output_len() as f64
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

/// Maps `v < C(2p, p)` to the `v`-th balanced word of length `2p` in
/// lexicographic order, and back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalancedPrefixMap {
    half: usize,
}

impl BalancedPrefixMap {
    pub fn new(half: usize) -> Result<Self> {
        if half == 0 || half > 60 {
            return Err(domain(format!("prefix half-length {half} must lie in 1..=60")));
        }
        Ok(Self { half })
    }

    pub fn len(&self) -> usize {
        2 * self.half
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of balanced words, `C(2p, p)`.
    pub fn capacity(&self) -> u128 {
        binom(2 * self.half, self.half)
    }

    pub fn encode(&self, value: u64) -> Result<BinaryWord> {
        let mut v = u128::from(value);
        if v >= self.capacity() {
            return Err(domain(format!("prefix value {value} out of range")));
        }
        let len = self.len();
        let mut ones = self.half;
        let mut bits = Vec::with_capacity(len);
        for i in 0..len {
            let rest = len - i - 1;
            let with_zero = binom(rest, ones);
            if v < with_zero {
                bits.push(0);
            } else {
                v -= with_zero;
                bits.push(1);
                ones -= 1;
            }
        }
        BinaryWord::new(bits)
    }

    pub fn decode(&self, word: &[u8]) -> Result<u64> {
        if word.len() != self.len() {
            return Err(reject(format!("prefix has {} bits, expected {}", word.len(), self.len())));
        }
        if word.iter().filter(|&&b| b == 1).count() != self.half {
            return Err(reject("prefix is not balanced"));
        }
        let len = self.len();
        let mut ones = self.half;
        let mut v = 0u128;
        for (i, &b) in word.iter().enumerate() {
            if b == 1 {
                v += binom(len - i - 1, ones);
                ones -= 1;
            }
        }
        Ok(v as u64)
    }
}

fn deviation(weight: usize, n: usize) -> usize {
    (2 * weight).abs_diff(n)
}

/// Classic Knuth balancing: invert the shortest prefix that balances the
/// word, and send the prefix length as a balanced prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnuthBalancer {
    n: usize,
    prefix: BalancedPrefixMap,
}

impl KnuthBalancer {
    /// `n` data bits, `n` even; the prefix carries `ceil(log2 n)` bits.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(domain(format!("Knuth balancing needs an even length >= 2, got {n}")));
        }
        Ok(Self {
            n,
            prefix: BalancedPrefixMap::new(ceil_log2(n))?,
        })
    }

    pub fn p0(&self) -> usize {
        self.prefix.half
    }

    /// Smallest `k` in `1..=n` for which inverting the first `k` bits
    /// balances `u`.
    pub fn balancing_index(&self, u: &BinaryWord) -> Result<usize> {
        if u.len() != self.n {
            return Err(domain(format!("expected {} bits, got {}", self.n, u.len())));
        }
        let mut w = u.weight();
        for (k, &b) in u.bits().iter().enumerate() {
            w = if b == 1 { w - 1 } else { w + 1 };
            if 2 * w == self.n {
                return Ok(k + 1);
            }
        }
        Err(crate::Error::Internal("no balancing index".into()))
    }

    /// `(prefix, body)` for data word `u`.
    pub fn split_encode(&self, u: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
        let k = self.balancing_index(u)?;
        Ok((self.prefix.encode(k as u64 - 1)?, u.invert_prefix(k)))
    }
}

impl Balancer for KnuthBalancer {
    fn data_len(&self) -> usize {
        self.n
    }

    fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    fn encode(&self, data: &BinaryWord) -> Result<BinaryWord> {
        let (p, body) = self.split_encode(data)?;
        Ok(p.concat(&body))
    }

    fn decode(&self, word: &BinaryWord) -> Result<BinaryWord> {
        if word.len() != self.output_len() {
            return Err(reject(format!("expected {} bits, got {}", self.output_len(), word.len())));
        }
        let (p, body) = word.split_at(self.prefix_len());
        let k = self.prefix.decode(p.bits())? as usize + 1;
        if k > self.n {
            return Err(reject(format!("balancing index {k} exceeds {}", self.n)));
        }
        let data = body.invert_prefix(k);
        if self.balancing_index(&data)? != k {
            return Err(reject("body is not a Knuth codeword"));
        }
        Ok(data)
    }

    fn max_deviation(&self) -> f64 {
        0.0
    }
}

/// Knuth balancing restricted to `2^p0` inversion points spaced `s` apart,
/// trading prefix length for a residual unbalance of at most `ceil(s/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakKnuthBalancer {
    n: usize,
    prefix: BalancedPrefixMap,
    step: usize,
    positions: Vec<usize>,
}

impl WeakKnuthBalancer {
    pub fn new(n: usize, p0: usize) -> Result<Self> {
        if p0 == 0 || p0 >= usize::BITS as usize {
            return Err(domain(format!("p0 = {p0} must be positive")));
        }
        let m0 = 1usize << p0;
        if m0 > n {
            return Err(domain(format!("2^p0 = {m0} exceeds the length {n}")));
        }
        let step = n.div_ceil(m0);
        let positions = (0..m0).map(|i| (1 + i * step).min(n)).collect();
        Ok(Self {
            n,
            prefix: BalancedPrefixMap::new(p0)?,
            step,
            positions,
        })
    }

    pub fn p0(&self) -> usize {
        self.prefix.half
    }

    /// Spacing `s = ceil(n / 2^p0)`.
    pub fn step(&self) -> usize {
        self.step
    }

    /// Inversion points `b_i = min(1 + i s, n)`.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Bound `ceil(s/2)` on `|w_2(body) - n/2|`.
    pub fn body_deviation_bound(&self) -> usize {
        self.step.div_ceil(2)
    }

    /// Index of the inversion point that leaves `u` least unbalanced,
    /// smallest index on ties.
    pub fn choose(&self, u: &BinaryWord) -> Result<usize> {
        if u.len() != self.n {
            return Err(domain(format!("expected {} bits, got {}", self.n, u.len())));
        }
        let bits = u.bits();
        let mut w = u.weight();
        let mut done = 0;
        let mut best = (usize::MAX, 0);
        for (i, &b) in self.positions.iter().enumerate() {
            for &x in &bits[done..b] {
                w = if x == 1 { w - 1 } else { w + 1 };
            }
            done = b;
            let d = deviation(w, self.n);
            if d < best.0 {
                best = (d, i);
            }
        }
        Ok(best.1)
    }

    pub fn split_encode(&self, u: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
        let i = self.choose(u)?;
        Ok((self.prefix.encode(i as u64)?, u.invert_prefix(self.positions[i])))
    }
}

impl Balancer for WeakKnuthBalancer {
    fn data_len(&self) -> usize {
        self.n
    }

    fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    fn encode(&self, data: &BinaryWord) -> Result<BinaryWord> {
        let (p, body) = self.split_encode(data)?;
        Ok(p.concat(&body))
    }

    fn decode(&self, word: &BinaryWord) -> Result<BinaryWord> {
        if word.len() != self.output_len() {
            return Err(reject(format!("expected {} bits, got {}", self.output_len(), word.len())));
        }
        let (p, body) = word.split_at(self.prefix_len());
        let i = self.prefix.decode(p.bits())? as usize;
        let Some(&b) = self.positions.get(i) else {
            return Err(reject(format!("inversion index {i} out of range")));
        };
        let data = body.invert_prefix(b);
        if self.choose(&data)? != i {
            return Err(reject("body is not a weak Knuth codeword"));
        }
        Ok(data)
    }

    /// The prefix is exactly balanced, so only the body contributes.
    fn max_deviation(&self) -> f64 {
        self.body_deviation_bound() as f64
    }
}
