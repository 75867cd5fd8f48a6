//! Crate-wide error type and result alias.

use thiserror::Error;

/// Errors reported by constructors, solvers, and parsers.
///
/// Variants split into two broad classes: malformed input (rejected data)
/// and exceeded resource caps (well-formed data that is too large to
/// process exactly). [`Error::is_cap_exceeded`] distinguishes the two so
/// callers can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// A ground set larger than the bitmask representation supports.
    #[error("ground set has {got} elements; at most {cap} are supported")]
    GroundTooLarge { got: usize, cap: usize },

    /// A ground set with no elements.
    #[error("ground set is empty")]
    EmptyGround,

    /// Two ground elements share a label.
    #[error("duplicate ground label {label:?}")]
    DuplicateLabel { label: String },

    /// A label that names no ground element.
    #[error("unknown ground label {label:?}")]
    UnknownLabel { label: String },

    /// A family with no generators generates the empty family.
    #[error("family has no generators")]
    EmptyFamily,

    /// A generator equal to the empty set generates the full power set.
    #[error("generators must be nonempty sets")]
    EmptyGenerator,

    /// A set that uses elements outside the stated ground set.
    #[error("set is not contained in the ground set")]
    ForeignSet,

    /// A probability or cost parameter outside its required range.
    #[error("parameter {name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },

    /// Exhaustive member enumeration refused: 2^n work exceeds the cap.
    #[error("enumeration over {n} elements exceeds the cap of {cap} (set EXPTHRESH_ENUM_CAP to raise it)")]
    EnumerationCapExceeded { n: usize, cap: usize },

    /// The candidate pool for cover optimization is too large.
    #[error("candidate pool of {size} subsets exceeds the cap of {cap}")]
    PoolCapExceeded { size: usize, cap: usize },

    /// A copy-expansion would produce too many sets or elements.
    #[error("cloning with k = {k} produces {size} sets/elements, over the cap of {cap}")]
    CloneCapExceeded { k: usize, size: usize, cap: usize },

    /// Group closure grew past the element cap.
    #[error("permutation group closure exceeds {cap} elements")]
    GroupCapExceeded { cap: usize },

    /// A permutation that is not a bijection on the ground set.
    #[error("invalid permutation: {reason}")]
    InvalidPermutation { reason: String },

    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors meaning "input too large for exact processing",
    /// as opposed to malformed input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCapExceeded { .. }
                | Error::PoolCapExceeded { .. }
                | Error::CloneCapExceeded { .. }
                | Error::GroupCapExceeded { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
