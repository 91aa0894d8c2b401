use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::Kind;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The relation forces `a ⪯ b ⪯ a` for two distinct elements.
    Cycle { a: usize, b: usize },
    /// An index was outside `0..len`.
    Index { index: usize, len: usize },
    /// A subset listed the same element twice.
    DuplicateMember { index: usize },
    /// A subset listed `later` before `earlier` although `earlier ⪯ later`.
    OrderViolation { earlier: usize, later: usize },
    /// The common lower bounds of `i` and `j` have no unique maximum.
    NoMeet { i: usize, j: usize },
    /// The common upper bounds of `i` and `j` have no unique minimum.
    NoJoin { i: usize, j: usize },
    /// The four tree-set characterizations disagreed. Always a bug.
    CharacterizationMismatch { verdicts: [bool; 4] },
    /// A function value was needed at these elements but none was supplied.
    MissingValue { elements: Vec<usize> },
    /// A vector or matrix had the wrong length.
    DimensionMismatch { expected: usize, found: usize },
    /// A matrix was not symmetric at `(i, j)`.
    NotSymmetric { i: usize, j: usize },
    /// The set is not meet (or join) closed.
    NotClosed { kind: Kind },
    /// The proposed superset does not contain this ambient element.
    NotSuperset { element: usize },
    /// The recursive and the Möbius-sum inversion disagreed. Always a bug.
    InversionMismatch { index: usize },
    /// A named precondition of a theorem-backed check failed.
    Precondition(Precondition),
    /// The function lacks the order property needed for reindexing.
    Monotonicity { lower: usize, upper: usize },
    /// The hypotheses of an eigenvalue bound failed.
    Hypothesis(Hypothesis),
    /// Jacobi rotations did not converge.
    Convergence { sweeps: usize, off_norm: f64 },
    /// A test vector is not supported on the required coordinates.
    Support { coordinate: usize },
    /// A generated universe exceeded the configured element cap.
    UniverseTooLarge { cap: usize },
    /// Integer arithmetic overflowed `u64`.
    Overflow,
    /// Non-finite or otherwise invalid numeric argument.
    InvalidArgument(String),
}

/// Preconditions checked by [`crate::definiteness::monotonicity_from_pd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    NoMinimum,
    HasseNotTree,
    NotPositiveDefinite,
    Empty,
}

/// Hypotheses of the eigenvalue bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    Negative { element: usize },
    NotMonotone { lower: usize, upper: usize },
    IndexNotMonotone { position: usize },
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precondition::NoMinimum => "the set has no minimum listed first",
            Precondition::HasseNotTree => "the Hasse diagram of the set is not a tree",
            Precondition::NotPositiveDefinite => "the matrix is not positive definite",
            Precondition::Empty => "the set is empty",
        })
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Negative { element } => write!(f, "f is negative at element {element}"),
            Hypothesis::NotMonotone { lower, upper } => write!(
                f,
                "f breaks the required order property between elements {lower} and {upper}"
            ),
            Hypothesis::IndexNotMonotone { position } => {
                write!(f, "f is not monotone in the index at position {position}")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cycle { a, b } => {
                write!(f, "relation is not antisymmetric: {a} and {b} precede each other")
            }
            Error::Index { index, len } => write!(f, "index {index} out of range 0..{len}"),
            Error::DuplicateMember { index } => write!(f, "element {index} listed twice"),
            Error::OrderViolation { earlier, later } => write!(
                f,
                "element {earlier} precedes {later} in the order but is listed after it"
            ),
            Error::NoMeet { i, j } => write!(f, "elements {i} and {j} have no meet"),
            Error::NoJoin { i, j } => write!(f, "elements {i} and {j} have no join"),
            Error::CharacterizationMismatch { verdicts } => {
                write!(f, "tree-set characterizations disagree: {verdicts:?}")
            }
            Error::MissingValue { elements } => {
                write!(f, "no function value for elements {elements:?}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
            Error::NotSymmetric { i, j } => write!(f, "matrix not symmetric at ({i}, {j})"),
            Error::NotClosed { kind } => write!(f, "set is not {} closed", kind.name()),
            Error::NotSuperset { element } => {
                write!(f, "superset does not contain element {element}")
            }
            Error::InversionMismatch { index } => {
                write!(f, "recursive and Möbius inversion disagree at {index}")
            }
            Error::Precondition(p) => write!(f, "precondition failed: {p}"),
            Error::Monotonicity { lower, upper } => write!(
                f,
                "function lacks the required order property between {lower} and {upper}"
            ),
            Error::Hypothesis(h) => write!(f, "hypothesis failed: {h}"),
            Error::Convergence { sweeps, off_norm } => write!(
                f,
                "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::Support { coordinate } => {
                write!(f, "vector has a nonzero entry outside its support at {coordinate}")
            }
            Error::UniverseTooLarge { cap } => {
                write!(f, "universe exceeds the cap of {cap} elements")
            }
            Error::Overflow => f.write_str("integer overflow"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
