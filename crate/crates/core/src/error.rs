use thiserror::Error;

use crate::alternating::AlternatingWitness;
use crate::{LocalWitness, SubsetMask};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=16")]
    GroundSize(usize),
    #[error("mask {mask:#b} has bits outside a ground set of size {n}")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("set functions live on ground sets of different sizes ({0} vs {1})")]
    GroundMismatch(usize, usize),
    #[error("value on the empty set is {0}, expected 0")]
    NotNormalized(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("function is not submodular: {0}")]
    NotSubmodular(LocalWitness),
    #[error("function is not increasing: f({from}) > f({from} + {element})")]
    NotIncreasing { from: SubsetMask, element: usize },
    #[error("function takes a negative value at {0}")]
    Negative(SubsetMask),
    #[error("function exceeds the charge at {0}")]
    NotMajorized(SubsetMask),
    #[error("function is not weakly infinite-alternating: {0}")]
    NotWeaklyInfiniteAlternating(AlternatingWitness),
    #[error("coefficient of {0} is negative")]
    NegativeCoefficient(SubsetMask),
    #[error(
        "clique recovery failed at {set}: the first decomposition part is not modular on ({left}, {right})"
    )]
    CliqueRecovery {
        set: SubsetMask,
        left: SubsetMask,
        right: SubsetMask,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid linear program: {0}")]
    InvalidLp(String),
    #[error("linear program unexpectedly {0}")]
    UnexpectedLpStatus(&'static str),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
