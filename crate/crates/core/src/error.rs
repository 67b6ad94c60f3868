use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("unknown parameter preset `{0}`")]
    UnknownPreset(String),

    #[error("value is not a member of the prime-order subgroup")]
    NonMember,

    #[error("scalar out of range for the field")]
    ScalarOutOfRange,

    #[error("cannot invert zero")]
    ZeroInverse,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ciphertext width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("matrix dimension mismatch")]
    DimensionMismatch,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not a permutation matrix")]
    NotPermutation,

    #[error("verification equation {0} failed")]
    EquationFailed(u8),

    #[error("transcripts are not a rewound pair: {0}")]
    TranscriptMismatch(&'static str),

    #[error("transcript does not verify")]
    NonAccepting,

    #[error("witness {index} fails the sub-statement checks")]
    SubstatementsFailed { index: usize },

    #[error("need at least {needed} witnesses, got {got}")]
    TooFewWitnesses { needed: usize, got: usize },

    #[error("no commitment break found among the supplied witnesses; supply one more")]
    NeedMoreWitnesses,

    #[error("extraction produced an inconsistent witness")]
    InconsistentExtraction,

    #[error("malformed encoding: {0}")]
    Encoding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
