use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("matrix is not square")]
    NotSquare,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {0} is not Grassmannian")]
    NotGrassmannian(String),
    #[error("partition does not fit in the {rows}x{cols} rectangle")]
    ShapeTooBig { rows: usize, cols: usize },
    #[error("partition has more than {0} parts")]
    ShapeTooLong(usize),
    #[error("inner shape is not contained in the outer shape")]
    NotContained,
    #[error("alphabet X_{index} exceeds the ambient rank {rank}")]
    AlphabetOverflow { index: usize, rank: usize },
    #[error("exponent vector is not under the staircase of rank {0}")]
    NotSubStaircase(usize),
    #[error("graded system is not uniquely solvable: {0}")]
    RankDeficiency(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("rank {n} is not supported by {name} (supported: {min}..={max})")]
    UnsupportedRank { name: String, n: usize, min: usize, max: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
