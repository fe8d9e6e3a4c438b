use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Usage(String),
    #[error("lattice is not unimodular (det = {det})")]
    NonUnimodular { det: String },
    #[error("class is not numerically exceptional (chi(e,e) = {chi})")]
    NotExceptional { chi: i64 },
    #[error("h0*h1 = {h0}*{h1} does not equal g = {g}")]
    NotBnpExtremal { g: u64, h0: u64, h1: u64 },
    #[error("incomplete model: {0}")]
    IncompleteModel(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("adherence dimension is {dim}, expected 1")]
    NotAdherent { dim: usize },
    #[error("no closed form available: {0}")]
    NoClosedForm(String),
    #[error("rank chase failed in degree {degree}: {reason}")]
    ChaseFailed { degree: i32, reason: String },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
