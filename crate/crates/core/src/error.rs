use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `|alpha|^2 - |beta|^2` is too far from one.
    #[error(
        "normalization violated: |alpha|^2 - |beta|^2 - 1 = {defect:e} (tolerance {tolerance:e})"
    )]
    Normalization { defect: f64, tolerance: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// A rapidity exceeded the representable range of the exact algebra.
    #[error("rapidity {theta} exceeds the overflow guard {limit}")]
    Overflow { theta: f64, limit: f64 },

    #[error("empty sequence")]
    EmptySequence,

    /// Supports of two barriers intersect. Indices refer to the input order.
    #[error("barriers {first} and {second} overlap")]
    Overlap { first: usize, second: usize },

    #[error("dimension {n} exceeds the supported maximum {max}")]
    Dimension { n: usize, max: usize },

    #[error("target rapidity {target} outside attainable interval [{low}, {high}]")]
    TargetOutOfRange { target: f64, low: f64, high: f64 },

    /// A composed rapidity fell outside `[B_n, S_n]` beyond the containment band.
    #[error("bound violation: theta = {theta} not in [{low}, {high}]")]
    BoundViolation { theta: f64, low: f64, high: f64 },

    /// Scenario document errors. `line` is 1-based when known.
    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
