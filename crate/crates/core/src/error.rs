use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus must be at least 1 (got {0})")]
    InvalidGenus(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("invalid bit-string {0:?}")]
    InvalidBits(String),
    #[error("class {0:?} is not primitive")]
    NonPrimitive(Vec<i64>),
    #[error("the zero class has no generator")]
    ZeroClass,
    #[error("family is not symplectic: {0}")]
    NonSymplectic(String),
    #[error("degenerate chain: {0}")]
    DegenerateChain(String),
    #[error("invalid separating curve: {0}")]
    InvalidSeparating(String),
    #[error("invalid exponent {exponent} for {curve}")]
    InvalidExponent { curve: String, exponent: i64 },
    #[error("word is not in the level-2 subgroup")]
    NotLevel2,
    #[error("word is not in the Torelli group")]
    NotTorelli,
    #[error("unsupported letter: {0}")]
    UnsupportedLetter(String),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("characteristic system is inconsistent")]
    InconsistentSystem,
    #[error("characteristic system is underdetermined (rank {rank} of {unknowns})")]
    UnderdeterminedSystem { rank: usize, unknowns: usize },
    #[error("membership is not characteristic at component {0}")]
    NotCharacteristic(usize),
    #[error("Arf reduction failed: {0}")]
    Unreducible(String),
    #[error("odd total-linking difference {0} before halving")]
    OddParity(i64),
    #[error("index {index} out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid Kirby move: {0}")]
    InvalidMove(String),
    #[error("integer overflow in linking matrix")]
    Overflow,
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("spin structure not expressible as a pullback: {0}")]
    NotExpressible(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
}
