use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("vertex {0} is not a vertex of J({1},{2})")]
    VertexNotInGraph(String, usize, usize),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),

    #[error("part type is not constant: |ab* ∩ X| mod 3 is {first_residue} at {first_pair:?} but {residue} at {pair:?}")]
    NonConstantType {
        first_pair: (u8, u8),
        first_residue: u8,
        pair: (u8, u8),
        residue: u8,
    },

    #[error("rows are not ordered by row sum ({0} < {1})")]
    RowsOutOfOrder(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group too large to materialize: order {0}")]
    GroupTooLarge(u64),

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("solution count exceeded the cap of {0}")]
    SolutionOverflow(usize),

    #[error("time budget of {0:?} exceeded")]
    TimeBudgetExceeded(std::time::Duration),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
