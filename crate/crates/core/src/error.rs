use thiserror::Error;

use crate::order::Coalition;

/// Ways a list of coalition classes can fail to be an ordered partition of 2^X.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("coalition {0} appears in more than one place")]
    Overlap(Coalition),
    #[error("coalition {0} is not ranked")]
    Uncovered(Coalition),
    #[error("coalition {0} lies outside the universe")]
    OutOfUniverse(Coalition),
    #[error("a ranking needs at least one class")]
    NoClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid universe size {0} (supported: 1..=6)")]
    Universe(usize),
    #[error("not a weak order on the power set: {0}")]
    Partition(#[from] PartitionError),
    #[error("individual {index} is not in a universe of size {n}")]
    Domain { index: usize, n: usize },
    #[error("intersection of an empty family is undefined")]
    EmptyFamily,
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("not a permutation of 0..{0}")]
    Permutation(usize),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("table mismatch: {0}")]
    Discrepancy(String),
    #[error("no roster rule separates {0}")]
    MissingSeparator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
