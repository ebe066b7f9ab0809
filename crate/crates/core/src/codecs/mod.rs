//! Encoders and decoders for balanced and runlength-limited strands.

pub mod balance;
pub mod codebook;
pub mod construction1;
pub mod construction2;
pub mod stream;
pub mod words;

pub use balance::{BalancedPrefixMap, Balancer, KnuthBalancer, WeakKnuthBalancer};
pub use codebook::{BlockCodebook, CodebookKind, EncoderState, MAX_BINARY_LEN, MAX_QUATERNARY_LEN};
pub use construction1::BalancedConstruction;
pub use construction2::RllConstruction;
pub use stream::{
    decode_bytes, decode_strands, encode_bits, encode_bytes, frame, read_strands, unframe,
    write_strands, CodecSpec, StrandCodec,
};
pub use words::{max_run, oligo_to_text, text_to_oligo, BinaryWord, Oligo, NUCLEOTIDES};

/// A decode failure; the stream layer fills in the record index.
pub(crate) fn reject(reason: impl Into<String>) -> crate::Error {
    crate::Error::Decode {
        record: 0,
        reason: reason.into(),
    }
}
