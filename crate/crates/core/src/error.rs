use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid partial bijection: {0}")]
    InvalidBijection(String),
    #[error("value {value} is outside the carrier of {rig}")]
    Carrier { rig: String, value: String },
    #[error("elements belong to different rigs ({0} vs {1})")]
    RigMismatch(String, String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown rig `{0}`")]
    UnknownRig(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("monoid axiom violated: {0}")]
    Monoid(String),
    #[error("invalid term: {0}")]
    Term(String),
    #[error("rewrite budget of {0} steps exhausted")]
    Budget(usize),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("carrier is not enumerable: {0}")]
    NotEnumerable(String),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("matrix too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
