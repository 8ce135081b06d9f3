use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("invalid braid word: {0}")]
    InvalidWord(String),

    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error(
        "enhanced family is only defined for genus 2 unless an extension rule is configured (genus {0})"
    )]
    EnhancedGenusUnsupported(u32),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("Bennequin surface is disconnected: generator {0} never occurs")]
    DisconnectedSurface(usize),

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("omega = {0} is at or too close to a root of the Alexander polynomial")]
    JumpPoint(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("solution is not integral: {0}")]
    NonIntegral(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("trace too close to the parabolic boundary |tr| = 2")]
    Indeterminate,

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid continued fraction: {0}")]
    ContinuedFraction(String),

    #[error("two-bridge fraction {p}/{q} does not describe a knot")]
    NotTwoBridgeKnot { p: i64, q: i64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    #[error("negative branch point count {0}")]
    NegativeBranchCount(i64),

    #[error("invalid base surface: {0}")]
    InvalidBase(String),

    #[error("unknown check '{0}'")]
    UnknownCheck(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
