//! Library error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("degenerate metric: Gram matrix is singular")]
    DegenerateMetric,

    #[error("metric is not orthonormal; use the general connection formula")]
    UseGeneralForm,

    #[error("degenerate plane: <x,x><y,y> - <x,y>^2 = 0")]
    DegeneratePlane,

    #[error("degenerate Killing form: no A-operator exists for this algebra")]
    DegenerateKillingForm,

    #[error("unknown catalog algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}
