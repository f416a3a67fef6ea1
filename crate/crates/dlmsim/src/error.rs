use crate::experiments::ExperimentKind;

/// Errors surfaced by configuration validation and counting.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("learning parameter gamma must lie in [0, 1), got {0}")]
    GammaOutOfRange(f64),
    #[error("n_pairs must be at least 1")]
    EmptyRun,
    #[error("operation requires kind {expected}, config has {actual}")]
    KindMismatch {
        expected: ExperimentKind,
        actual: ExperimentKind,
    },
    #[error("counts total {total} does not match n_pairs {n_pairs}")]
    CountMismatch { total: u64, n_pairs: u64 },
    #[error("sweep grid must be non-empty")]
    EmptyGrid,
    #[error("record list must be non-empty")]
    EmptyRecords,
}

pub type Result<T> = std::result::Result<T, Error>;
