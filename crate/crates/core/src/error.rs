use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generator at position {position} is zero; generators must be positive")]
    NonPositiveGenerator { position: usize },
    #[error(
        "generators are not coprime (gcd = {gcd}); divide every generator by {gcd} \
         to get the isomorphic primitive monoid"
    )]
    NonPrimitive { gcd: u64 },
    #[error("multiplicity {multiplicity} exceeds the supported limit {limit}")]
    TooLarge { multiplicity: u64, limit: u64 },
    #[error("a monoid with one generator has a rank-zero relation lattice")]
    DegenerateRank,
    #[error("every relation in the basis has length zero")]
    ZeroLengths,
    #[error("relation basis does not span the full kernel lattice")]
    Unsaturated,
    #[error("vector is not a relation of the generators")]
    NotARelation,
    #[error("{0} needs at least three generators")]
    NotApplicable(&'static str),
    #[error("index {index} is outside 2..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("empty factorization set")]
    EmptyFactorizationSet,
    #[error("cannot shift the table of element {element} down by {step}")]
    ShiftUnderflow { element: u64, step: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
