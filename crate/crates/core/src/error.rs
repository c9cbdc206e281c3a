use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is not a generator of B_{strands}")]
    InvalidLetter { letter: i32, strands: u16 },
    #[error("strand count {0} exceeds the supported maximum")]
    StrandLimit(usize),
    #[error("result needs {required} strands but the platform has {available}")]
    StrandOverflow { required: usize, available: u16 },
    #[error("braid is not pure")]
    NotPure,
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("elements belong to different platforms")]
    PlatformMismatch,
    #[error("operation requires a finite platform")]
    NotFinite,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("point map is not a homomorphism")]
    NotHomomorphism,
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
    #[error("leaf index {index} out of range ({count} generators)")]
    LeafOutOfRange { index: usize, count: usize },
    #[error("operation label {label} out of range ({count} operations)")]
    OpLabelOutOfRange { label: usize, count: usize },
    #[error("enumeration size overflows the resource guard")]
    CountOverflow,
    #[error("commutation violated: {0}")]
    CommutationViolation(&'static str),
    #[error("parameter condition violated: {0}")]
    ConditionViolation(&'static str),
    #[error("the two parties derived different keys")]
    KeyMismatch,
    #[error("key policy cannot be satisfied: {0}")]
    PolicyViolation(&'static str),
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("no solution exists in the searched space")]
    NotFound,
    #[error("witness does not satisfy the instance")]
    InvalidWitness,
    #[error("malformed encoding: {0}")]
    Decode(&'static str),
}
