use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the supported maximum of {max}", max = crate::field::MAX_MODULUS)]
    ModulusTooLarge(u64),
    #[error("0 has no inverse")]
    ZeroInverse,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("coefficient {value} is not a residue modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u32 },
    #[error("degree cap {requested} exceeds the global cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },
    #[error("enumeration of {required} candidates exceeds the budget {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("coefficient of d/dx{var} mentions x{offending}; a triangular derivation only allows later variables")]
    NotTriangular { var: usize, offending: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    InvalidVariable { index: usize, nvars: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported map for this operation: {0}")]
    UnsupportedMap(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
