use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("denominator is not contained in numerator")]
    Containment,
    #[error("functional is not a Frobenius form: {0}")]
    NotFrobenius(String),
    #[error("Nakayama automorphism is not diagonalizable over the base field")]
    NotDiagonalizable,
    #[error("Frobenius form is not symmetric")]
    NotSymmetric,
    #[error("coefficient module carries no algebra structure")]
    CoefficientNotAlgebra,
    #[error("complex carries no operad structure")]
    NoOperad,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cyclic structure required but tau^(n+1) != id in degree {0}")]
    NotCyclic(usize),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("element is not grouplike")]
    NotGrouplike,
    #[error("S^2 is not conjugation by the grouplike")]
    TwistedInvolutionFails,
    #[error("positive characteristic requires explicit permission for this operation")]
    PositiveCharacteristic,
    #[error("axiom violated by a constructed structure: {0}")]
    AxiomViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}
