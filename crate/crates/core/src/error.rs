use thiserror::Error;

/// Errors surfaced by the toolkit, grouped into the categories the CLI maps
/// to exit codes: parse (2), domain/precondition (3), non-convergence (4),
/// resource cap (5).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is empty after cleaning (no usable edges)")]
    EmptyGraph,

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{0}")]
    Domain(String),

    #[error(
        "delta = {delta} risks divergence: the admissible range for this graph is [0, {limit:.6e})"
    )]
    DivergenceRisk { delta: f64, limit: f64 },

    #[error(
        "spectral radius {lambda1:.2} exceeds the overflow guard {limit}; \
         the exponential series would overflow f64 — use the geometric variant instead"
    )]
    OverflowRisk { lambda1: f64, limit: f64 },

    #[error("no convergence within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error(
        "reference length k_ref is too short: relative increment {rel_increment:.3e} \
         is still above 1e-12; raise k_ref"
    )]
    UnreliableReference { rel_increment: f64 },

    #[error("correlation undefined: a ranking with zero rank variance was supplied")]
    UndefinedCorrelation,

    #[error("graph has {n} nodes, exceeding the dense-oracle cap of {cap}")]
    ResourceCap { n: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 0 ok, 2 parse, 3 domain/precondition,
    /// 4 non-convergence, 5 resource cap.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse { .. } | Error::EmptyGraph | Error::Io(_) => 2,
            Error::DimensionMismatch { .. }
            | Error::Domain(_)
            | Error::DivergenceRisk { .. }
            | Error::OverflowRisk { .. }
            | Error::UnreliableReference { .. }
            | Error::UndefinedCorrelation => 3,
            Error::NonConvergence { .. } => 4,
            Error::ResourceCap { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
