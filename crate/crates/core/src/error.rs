use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is too large for byte residues (max 251)")]
    ModulusTooLarge(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: expected F_{expected}, found F_{found}")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("enumeration of {estimate} subspaces exceeds the guard of {guard}")]
    GuardExceeded { estimate: u128, guard: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subspace must be proper")]
    NotProper,
    #[error("B(V,V) + F(V) does not span W")]
    NotSurjective,
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("map space of size {0} is too large to enumerate")]
    SpaceTooLarge(u128),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
