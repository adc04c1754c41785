use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("monomial rank must be a positive integer in range")]
    InvalidRank,
    #[error("variable index {index} out of range 1..={nvars}")]
    InvalidVariable { index: usize, nvars: usize },
    #[error("zero coefficient in term list")]
    ZeroCoefficient,
    #[error("duplicate monomial in term list")]
    DuplicateMonomial,
    #[error("a polynomial system needs at least one polynomial")]
    EmptySystem,
    #[error("certificate has {found} polynomials but the system has {expected}")]
    CertificateArity { expected: usize, found: usize },
    #[error("ansatz does not match the system: {0}")]
    AnsatzMismatch(String),
    #[error("refused: Brownawell degree bound D = {degree} exceeds the safety limit {limit}")]
    BrownawellLimit { degree: String, limit: u32 },
    #[error("refused: linear system with {unknowns} unknowns exceeds the limit {limit}")]
    SystemTooLarge { unknowns: usize, limit: usize },
    #[error("refused: box search over {points} points exceeds the limit {limit}")]
    BoxTooLarge { points: String, limit: u64 },
    #[error("refused: dense system with {cells} cells exceeds the limit {limit}")]
    DenseTooLarge { cells: usize, limit: usize },
    #[error("invalid permutation of {0} variables")]
    InvalidPermutation(usize),
}
