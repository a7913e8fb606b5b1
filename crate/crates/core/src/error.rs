use thiserror::Error;

use crate::rootdata::Weight;

/// Errors raised by the combinatorial engine.
///
/// Every variant is a domain error: the input violated a precondition, or a
/// self-check between two independent routes disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown root system type: {0}")]
    UnknownType(String),
    #[error("rank {rank} exceeds the configured cap of {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("p = {p} is smaller than the Coxeter number h = {h}")]
    PTooSmall { p: i64, h: i64 },
    #[error("p = {0} is not prime")]
    NotPrime(i64),
    #[error("root index {0} does not name a positive root")]
    NotAPositiveRoot(usize),
    #[error("{0} is not a simple reflection in S_p")]
    NotInSp(String),
    #[error("weight {0} lies on a reflecting hyperplane")]
    WallPoint(Weight),
    #[error("reflection fixes the weight {0}")]
    FixedPoint(Weight),
    #[error("weight {0} is not in the closed fundamental domain for the Levi subgroup")]
    NotInCI(Weight),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {0} is not regular")]
    NotRegular(Weight),
    #[error("no integral weight with stabiliser exactly {{1, s}} exists for this wall at p = {p}")]
    NoSuchWeight { p: i64 },
    #[error("enumeration exceeded its bound: {0}")]
    BoundExceeded(String),
    #[error("label {label} does not belong to the block anchored at {anchor}")]
    WrongBlock { label: Weight, anchor: Weight },
    #[error("operation expects basis {expected}, got {got}")]
    WrongBasis { expected: String, got: String },
    #[error("operation expects section kind {expected}, got {got}")]
    WrongKind { expected: String, got: String },
    #[error("coefficient at {0} is negative")]
    NegativeCoefficient(Weight),
    #[error("coefficient at {0} is not an integer")]
    NonIntegral(Weight),
    #[error("size at {label} is not divisible by N_I = {n}")]
    NotDivisible { label: Weight, n: u64 },
    #[error("peeling failed at {0}: negative or fractional intermediate coefficient")]
    PeelFailed(Weight),
    #[error("tilting table has no entry for {0}")]
    MissingEntry(Weight),
    #[error("invalid tilting table entry: {0}")]
    InvalidTable(String),
    #[error("triangularity check failed at {0}")]
    CheckFailed(Weight),
    #[error("independent routes disagree: {0}")]
    FormulaMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
