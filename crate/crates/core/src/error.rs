use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Variants split into two families: refusals, where an input violates a
/// precondition of the requested analysis, and internal failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no bi-infinite path (empty after trimming)")]
    EmptyAfterTrim,
    #[error("graph is not essential: symbol `{0}` lies on no bi-infinite path")]
    NotEssential(String),
    #[error("graph is not irreducible ({0} strongly connected components)")]
    NotIrreducible(usize),
    #[error("factor code is infinite-to-one (graph diamond found)")]
    InfiniteToOne,
    #[error("word or orbit `{0}` is not in the image shift")]
    NotInImage(String),
    #[error("fiber over `{0}` is infinite")]
    FiberInfinite(String),
    #[error("no path over the requested window")]
    NoPath,
    #[error("coordinate projection {coordinate} of the degree joining misses symbol `{symbol}`")]
    ProjectionNotOnto { coordinate: usize, symbol: String },
    #[error("degree joining graph does not map onto the image shift (word `{0}` has no lift)")]
    JoiningNotOnto(String),
    #[error("measure is not ergodic: {0}")]
    NotErgodic(String),
    #[error("measure is not fully supported: {0}")]
    NotFullySupported(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("periodic degree joinings over `{orbit}` are not hosted by the degree joining graph: fiber size {fiber_size} differs from degree {degree}")]
    NotDegreeHost {
        orbit: String,
        fiber_size: usize,
        degree: usize,
    },
    #[error("cross-validation mismatch:\n  {}", .0.join("\n  "))]
    Mismatch(Vec<String>),
    #[error("inconsistent internal state: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error reports a violated precondition rather than a bug
    /// or an I/O failure.
    pub fn is_refusal(&self) -> bool {
        !matches!(
            self,
            Error::ProjectionNotOnto { .. }
                | Error::JoiningNotOnto(_)
                | Error::Mismatch(_)
                | Error::Internal(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
