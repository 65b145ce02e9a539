use thiserror::Error;

use crate::construction::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The convex hull of no points is empty, so a query against it is rejected.
    #[error("empty point list")]
    EmptyPointList,

    #[error("block {0} is empty")]
    EmptyBlock(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("refusing to enumerate: n = {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("point set carries no construction metadata")]
    MissingConstruction,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parts(#[from] Violation),
}
