use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("({p},{q}) is spherical: 1/p + 1/q > 1/2")]
    Spherical { p: usize, q: usize },
    #[error("invalid Schlafli pair ({p},{q}): {reason}")]
    InvalidSchlafli { p: usize, q: usize, reason: &'static str },
    #[error("patch exceeds the vertex budget of {budget} vertices")]
    BudgetExceeded { budget: usize },
    #[error("unsupported flat pair ({p},{q}); periodic tori exist for (4,4) and (3,6)")]
    UnsupportedFlat { p: usize, q: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("unknown {kind} id {id}")]
    UnknownId { kind: &'static str, id: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("operation requires q = {required}, lattice has q = {actual}")]
    WrongQ { required: &'static str, actual: usize },
    #[error("vertex {0} is on the patch boundary")]
    BoundaryVertex(usize),
    #[error("path does not reach the patch boundary")]
    NotBoundaryTerminated,
    #[error("path is not edge-connected at step {0}")]
    Disconnected(usize),
    #[error("construction failed: expected {expected} excitations, got {got:?}")]
    Construction { expected: usize, got: Vec<usize> },
    #[error("stabilizer audit failed: terms {0} and {1} anticommute")]
    AuditFailed(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case tag for machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Spherical { .. } => "spherical",
            Error::InvalidSchlafli { .. } => "invalid_schlafli",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::UnsupportedFlat { .. } => "unsupported_flat",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownId { .. } => "unknown_id",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::WrongQ { .. } => "wrong_q",
            Error::BoundaryVertex(_) => "boundary_vertex",
            Error::NotBoundaryTerminated => "not_boundary_terminated",
            Error::Disconnected(_) => "disconnected",
            Error::Construction { .. } => "construction_failed",
            Error::AuditFailed(..) => "audit_failed",
            Error::Parse(_) => "parse",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}
