use thiserror::Error;

/// Errors produced by the library. Facet and row indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    NoFacets,
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("vertex labels must be positive integers (facet {0} contains 0)")]
    ZeroLabel(usize),
    #[error("facet {sub} is contained in facet {sup}")]
    ComparableFacets { sub: usize, sup: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("facet index {index} out of range for {q} facets")]
    IndexOutOfRange { index: usize, q: usize },
    #[error("inconsistent intersection data: {0}")]
    Inconsistent(String),
    #[error("undecided: {what} is {got}, above the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("work budget exceeded: {projected} candidates projected, budget is {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "gave up after {attempts} attempts: {covering} covered their vertex range, {clique} of those \
         were clique complexes, none triangle-intersection free (acceptance rate below 1/{attempts})"
    )]
    AttemptsExhausted {
        attempts: u64,
        covering: u64,
        clique: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
