//! Signatures, permutations and boolean matrices.

mod boolmat;
mod perm;
mod signature;

pub use boolmat::BoolMat;
pub use perm::Perm;
pub use signature::{Signature, Symbol, DELTA, NEUTRAL};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("permutation size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0:?}")]
    InvalidPerm(Vec<usize>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("symbol name `{0}` is reserved")]
    ReservedName(String),
    #[error("invalid symbol name `{0}`")]
    BadName(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
