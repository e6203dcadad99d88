use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("entry count {found} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("mixed cyclotomic conductors {0} and {1}")]
    MixedConductor(u32, u32),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("unsupported pseudo-reflection series G({m},{p},r): m/p must be 1 or 2")]
    UnsupportedSeries { m: u32, p: u32 },

    #[error("invalid series parameters: {0}")]
    InvalidSeries(String),

    #[error("unsupported group type: {0}")]
    UnsupportedType(String),

    #[error("generator {index} is not a reflection: {reason}")]
    NotAReflection { index: usize, reason: String },

    #[error("metadata mismatch: generator set does not reach all reflections (expected {expected}, found {found})")]
    MetadataMismatch { expected: usize, found: usize },

    #[error("invalid generator data: {0}")]
    InvalidGeneratorData(String),

    #[error("no generator data for G{0}")]
    NoGeneratorData(u32),

    #[error("alpha is only defined for distinct reflections (got s = u = {0})")]
    DiagonalAlpha(usize),

    #[error("odd non-commuting count {count} for reflection {s}")]
    OddNonCommutingCount { s: usize, count: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("excluded parameter value m = {m0}: {reason}")]
    ExcludedParameter { m0: String, reason: String },

    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },

    #[error("expected two distinct reflections (got {0} twice)")]
    SameReflection(usize),

    #[error("improper parabolic seed: {0}")]
    ImproperSeed(String),

    #[error("dihedral check needs odd e >= 3 (got {0})")]
    EvenDihedral(u32),

    #[error("strand count must be at least 2 (got {0})")]
    TooFewStrands(usize),

    #[error("no closed form covers {0}")]
    NotCovered(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("denominator vanishes modulo the working prime")]
    ModularDenominator,

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidGeneratorData(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
