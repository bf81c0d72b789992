//! The Chor-Rivest knapsack cryptosystem over `F_{p^h}`.
//!
//! Field elements are polynomials over `Z_p` of degree below `h`,
//! multiplied modulo a monic irreducible `f`. Key generation takes
//! discrete logarithms of `x + i` for every `i` in `Z_p`; messages are
//! encoded as weight-`h` vectors of length `p`; decryption factors
//! `g^r' + f` into linear terms by exhaustive root search.
//!
//! Sizes are desk scale: `p^h` must fit in 64 bits and every prime factor
//! of `p^h - 1` must be at most [`DLOG_PRIME_LIMIT`].

mod encoding;
mod field;
mod keys;
mod poly;

pub use encoding::{binomial, decode_message, encode_message, ConstantWeightVector};
pub use field::{
    discrete_log, find_primitive, is_irreducible, poly_mul_mod, random_irreducible, GaloisField,
    DLOG_PRIME_LIMIT,
};
pub use keys::{
    decrypt, encrypt, keygen, message_space, ChorRivestPrivateKey, ChorRivestPublicKey,
};
pub use poly::PrimeFieldPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChorRivestError {
    #[error("DegreeOverflow: operand degree {degree} is not below {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("NotMonic: polynomial must be monic")]
    NotMonic,
    #[error("BadParameters: {0}")]
    BadParameters(String),
    #[error("FactoringBudgetExceeded: {0}")]
    FactoringBudgetExceeded(String),
    #[error("ZeroElement: zero has no discrete logarithm")]
    ZeroElement,
    #[error("MessageOutOfRange: message must satisfy 0 <= m < C(p, h)")]
    MessageOutOfRange,
    #[error("WrongWeight: expected weight {expected}, got {actual}")]
    WrongWeight { expected: usize, actual: usize },
    #[error("MalformedCiphertext: {0}")]
    MalformedCiphertext(String),
    #[error("MalformedKey: {0}")]
    MalformedKey(String),
}

impl ChorRivestError {
    /// The bare variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            ChorRivestError::DegreeOverflow { .. } => "DegreeOverflow",
            ChorRivestError::NotMonic => "NotMonic",
            ChorRivestError::BadParameters(_) => "BadParameters",
            ChorRivestError::FactoringBudgetExceeded(_) => "FactoringBudgetExceeded",
            ChorRivestError::ZeroElement => "ZeroElement",
            ChorRivestError::MessageOutOfRange => "MessageOutOfRange",
            ChorRivestError::WrongWeight { .. } => "WrongWeight",
            ChorRivestError::MalformedCiphertext(_) => "MalformedCiphertext",
            ChorRivestError::MalformedKey(_) => "MalformedKey",
        }
    }
}
