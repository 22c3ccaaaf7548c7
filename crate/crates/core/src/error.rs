use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point out of range: {point} (degree {degree})")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("point set is not invariant under the permutation")]
    NotInvariant,
    #[error("element is not contained in the group")]
    NotAnElement,
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u128),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("group order overflows 128 bits")]
    OrderOverflow,
}
