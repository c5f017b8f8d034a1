use num_bigint::BigInt;
use num_rational::BigRational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("genus must be non-negative, got {0}")]
    NegativeGenus(BigInt),

    #[error("Euler characteristic {0} is not that of a closed oriented surface")]
    NotClosedSurface(BigInt),

    #[error("invalid cover data: {0}")]
    InvalidCoverData(String),

    #[error("invalid ramification entry: {0}")]
    InvalidRamification(String),

    #[error("branch class components are not declared pairwise disjoint")]
    NonDisjointBranchClass,

    #[error("signature {0} is not an integer; branch data is inconsistent")]
    NonIntegralSignature(BigRational),

    #[error("signature {0} is not divisible by 4")]
    SignatureNotQuantized(BigInt),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cover fails validation: {0}")]
    InvalidCover(String),

    #[error("malformed cover file: {0}")]
    Parse(#[from] serde_json::Error),
}
