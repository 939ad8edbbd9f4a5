use thiserror::Error;

use crate::setcore::Ratio;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Subsets are rendered with their
/// element labels so messages stay readable without the ground set at hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set is empty")]
    EmptyGround,
    #[error("ground set has {0} elements, the limit is {max}", max = crate::setcore::MAX_GROUND)]
    GroundTooLarge(usize),
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("no rank given for subset {0}")]
    MissingSubset(String),
    #[error("rank given twice for subset {0}")]
    DuplicateSubset(String),
    #[error("negative value {value} for {subset}")]
    NegativeValue { subset: String, value: Ratio },
    #[error("the empty set must have rank 0, got {0}")]
    NonZeroEmpty(Ratio),
    #[error("subset mask {0:#x} uses elements outside the ground set")]
    OutOfGround(u32),

    #[error("not a polymatroid: {0}")]
    NotAPolymatroid(String),
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("{0} is not a flat")]
    NotAFlat(String),
    #[error("cannot contract the whole ground set")]
    FullGroundSet,
    #[error("cannot restrict to the empty set")]
    EmptyRestriction,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("lattice family is empty")]
    EmptyFamily,
    #[error("member {0} listed twice")]
    DuplicateMember(String),
    #[error("negative rank {value} for member {member}")]
    NegativeRank { member: String, value: Ratio },
    #[error("members {0} and {1} have no common upper bound in the family")]
    NoUpperBound(String, String),
    #[error("members {0} and {1} have no common lower bound in the family")]
    NoLowerBound(String, String),
    #[error("members {0} and {1} have no unique {2} in the family")]
    AmbiguousBound(String, String, &'static str),
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),

    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("no extension exists: {0}")]
    NoExtension(String),
    #[error("block for {element} has rank {block}, expected {expected}")]
    RankMismatch {
        element: String,
        block: Ratio,
        expected: Ratio,
    },
    #[error("modular cut is principal")]
    PrincipalCut,

    #[error("extensions disagree on the common subset {0}")]
    GroundOverlapMismatch(String),
    #[error("amalgam ground set has {0} elements, the search limit is {max}", max = crate::inequalities::MAX_AMALGAM_GROUND)]
    TooLarge(usize),
    #[error("integer input required: {0}")]
    NonInteger(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
