//! Isomorphism testing for abelian and coprime meta-cyclic groups of black-box
//! type, with the order classification that delimits where the tests apply and
//! a brute-force Cayley-table oracle for small groups.
//!
//! Partial operations return `Option`, with `None` standing for an undefined
//! result (for example an element outside the group handed to an inverse
//! isomorphism). Hard failures are reported through [`Error`].

pub mod abelian;
pub mod arith;
pub mod blackbox;
pub mod constructions;
pub mod metacyclic;
pub mod oracle;
pub mod order;

pub use abelian::{
    Basis, CanonicalBasis, ConstructiveMembership, ConstructivePresentation, OneWayIso, TwoWayIso,
};
pub use blackbox::{Ambient, Congruence, Element, Group, Slp};
pub use metacyclic::{MetacyclicDecomposition, SolvableData};
pub use oracle::CayleyTable;
pub use order::{FactoredInteger, OrderClassification};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("integer overflow")]
    Overflow,
    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("group has no known order")]
    MissingOrder,
    #[error("congruence undefined on a required input")]
    Undefined,
    #[error("enumeration exceeded the bound of {0} elements")]
    BoundExceeded(usize),
    #[error("basis is not a {0}-group")]
    NotPGroup(u64),
    #[error("group is not abelian")]
    NonAbelian,
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("Las Vegas search exhausted after {tries} tries: {what}")]
    Exhausted { what: String, tries: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
