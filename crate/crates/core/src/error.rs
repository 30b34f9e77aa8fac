use thiserror::Error;

/// An exhaustive procedure was asked to handle more than its configured cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} of size {size} exceeds the exhaustive-search cap of {cap}")]
pub struct SizeLimitExceeded {
    pub what: &'static str,
    pub size: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("relation is not antisymmetric: {a} and {b} are forced below each other")]
    Cycle { a: usize, b: usize },
    #[error("unknown element {0}")]
    UnknownElement(usize),
    #[error(transparent)]
    SizeLimit(#[from] SizeLimitExceeded),
}

/// Rejected edits to a POT, IA or CSP instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("variable {var} out of range for {n} variables")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("constraint relates variable {0} to itself")]
    SelfLoop(usize),
    #[error("tuple of arity {found} in a constraint of arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("value {value} lies outside the declared domain 0..{size}")]
    OutsideDomain { value: i64, size: usize },
}
