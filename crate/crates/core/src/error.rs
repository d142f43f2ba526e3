use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 1..=32")]
    DegreeOutOfRange(u32),
    #[error("field context mismatch: GF(2^{left}) vs GF(2^{right})")]
    ContextMismatch { left: u32, right: u32 },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("element bits {bits:#b} do not fit GF(2^{e})")]
    ElementOutOfRange { bits: u64, e: u32 },
    #[error("GF(2^{from}) is not a subfield of GF(2^{to})")]
    NotASubfield { from: u32, to: u32 },
    #[error("the {ell}-th roots of unity need GF(2^{needed}), not contained in GF(2^{e})")]
    RootsNotInField { ell: u64, needed: u32, e: u32 },
    #[error("division leaves a nonzero remainder")]
    NonzeroRemainder,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("polynomial does not split into linear forms over GF(2^{e})")]
    SplittingFieldTooSmall { e: u32 },
    #[error("required extension GF(2^{needed}) exceeds the supported degree 32")]
    SplittingFieldTooLarge { needed: u64 },
    #[error("k = {0} is odd; D(x^k) is never a hyperoval for odd k")]
    OddK(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("k = {k}, e = {e}: gcd condition fails, D(k) is not a hyperoval candidate")]
    NotHyperovalCandidate { k: u64, e: u32 },
    #[error("the curves share a component through the point")]
    InfiniteIntersection,
    #[error("k = {0} is neither a power of two nor 6")]
    NotSpecialShape(u64),
    #[error("wrong number of variables: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
