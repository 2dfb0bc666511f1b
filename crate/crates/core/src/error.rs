use thiserror::Error;

/// Errors produced by the exact, symbolic and numeric layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("term is not hypergeometric in {direction}: unmatched gamma symbol {symbol}")]
    NotHypergeometric { direction: char, symbol: String },
    #[error("unsupported substitution: {0}")]
    UnsupportedMap(String),
    #[error("term cannot be dualized: {0}")]
    NotDualizable(String),
    #[error("pole hit at {0}")]
    PoleHit(String),
    #[error("pair has no certificate R")]
    MissingCertificate,
    #[error("no certificate found with numerator degree <= {degree} and denominator multiplicity <= {multiplicity}")]
    NoCertificateAtBound { degree: u32, multiplicity: u32 },
    #[error("rational recognition failed: {0}")]
    RecognitionFailed(String),
    #[error("series does not converge: {0}")]
    NonConvergent(String),
    #[error("series diverges (limiting term ratio {ratio}); use the Barnes integral instead")]
    Divergent { ratio: f64 },
    #[error("unsupported Dirichlet character {chi} at s = {s}")]
    UnsupportedCharacter { chi: i64, s: u32 },
    #[error("Barnes integrand does not decay (net gamma balance {0})")]
    NoDecay(i64),
    #[error("contour does not separate the pole families: {0}")]
    ContourPinch(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("constant mismatch between routes: {0}")]
    ConstantMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
