use crate::algebroid::SpecError;
use crate::expr::DomainError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{what}: expected dimension {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("vector is not tangent to the leaf (least-squares residual {residual:.3e})")]
    NotTangent { residual: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-finite state in flow {flow}, step {step}")]
    NonFinite { flow: usize, step: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
