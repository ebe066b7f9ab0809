//! Long random streams through every codec, checked with a separate run
//! scanner.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strandcode::codecs::{
    decode_strands, encode_bits, encode_bytes, decode_bytes, CodebookKind, CodecSpec,
};

fn scan_runs(stream: &[u8]) -> usize {
    stream.chunk_by(|a, b| a == b).map(<[u8]>::len).max().unwrap_or(0)
}

fn run_limited() -> Vec<CodecSpec> {
    let mut v = Vec::new();
    for m in 1..=4 {
        for n in [4, 5, 7] {
            v.push(CodecSpec::Codebook { kind: CodebookKind::StateIndependent, m, n });
            v.push(CodecSpec::Codebook { kind: CodebookKind::StateDependent, m, n });
            if m >= 2 {
                v.push(CodecSpec::Rll { m, n });
                v.push(CodecSpec::Codebook { kind: CodebookKind::TwoMode, m, n });
            }
        }
    }
    v
}

#[test]
fn long_streams_respect_the_run_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for spec in run_limited() {
        let codec = spec.build().unwrap();
        let m = codec.run_limit().unwrap();
        let bits: Vec<u8> = (0..500 * codec.block_bits()).map(|_| rng.gen_range(0..2)).collect();
        let strands = encode_bits(codec.as_ref(), &bits).unwrap();
        assert_eq!(strands.len(), 500);
        let stream: Vec<u8> = strands.iter().flat_map(|s| s.symbols().to_vec()).collect();
        assert!(scan_runs(&stream) <= m, "{spec}");
        assert_eq!(decode_strands(codec.as_ref(), &strands).unwrap(), bits, "{spec}");
    }
}

#[test]
fn adversarial_streams_respect_the_run_limit() {
    // All-zero and all-one sources push every code towards its longest runs.
    for spec in run_limited() {
        let codec = spec.build().unwrap();
        let m = codec.run_limit().unwrap();
        for fill in [0u8, 1] {
            let bits = vec![fill; 60 * codec.block_bits()];
            let strands = encode_bits(codec.as_ref(), &bits).unwrap();
            let stream: Vec<u8> = strands.iter().flat_map(|s| s.symbols().to_vec()).collect();
            assert!(scan_runs(&stream) <= m, "{spec} fill {fill}");
        }
    }
}

#[test]
fn balanced_strands_stay_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for spec in [
        CodecSpec::Knuth { data_len: 16 },
        CodecSpec::Knuth { data_len: 50 },
        CodecSpec::WeakKnuth { data_len: 40, p0: 2 },
        CodecSpec::WeakKnuth { data_len: 64, p0: 4 },
    ] {
        let codec = spec.build().unwrap();
        let bound = codec.unbalance_bound().unwrap();
        let bits: Vec<u8> = (0..200 * codec.block_bits()).map(|_| rng.gen_range(0..2)).collect();
        for s in encode_bits(codec.as_ref(), &bits).unwrap() {
            let at = s.symbols().iter().filter(|&&x| x >= 2).count() as f64;
            assert!((at / s.len() as f64 - 0.5).abs() <= bound + 1e-12, "{spec}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn byte_payloads_round_trip(payload in proptest::collection::vec(any::<u8>(), 0..200), pick in 0usize..1000) {
        let specs = run_limited();
        let spec = specs[pick % specs.len()];
        let codec = spec.build().unwrap();
        let strands = encode_bytes(codec.as_ref(), &payload).unwrap();
        prop_assert_eq!(decode_bytes(codec.as_ref(), &strands).unwrap(), payload);
    }
}
