use thiserror::Error;

use crate::algebra::{AlgebraKind, Domain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {left:?} vs {right:?}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("element does not conform to {kind:?}: {reason}")]
    KindMismatch { kind: AlgebraKind, reason: String },
    #[error("negative exponent {0} in the polynomial domain")]
    NegativeExponent(i64),
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid dual element: {0}")]
    InvalidDual(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index ({0}, {1}) lies outside the tensor window")]
    OutsideWindow(i64, i64),
    #[error("closed form disagrees with the computed value: {0}")]
    ClosedFormMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
