//! Exact projective plane geometry for nets: lines and points, the net
//! axioms, the Fermat and Hesse constructions, class deletion, the
//! within-class multiplicity profile, the pencil check, and the Latin-square
//! encoding of net combinatorics.

mod io;
mod latin;
mod net;
mod profile;
mod projective;

pub use io::{load_net, load_profile, net_from_json, net_to_json, profile_from_json, Coefficient, NetFile};
pub use latin::{from_latin_squares, CombinatorialNet};
pub use net::{
    delete_class, deleted_hesse_net, fermat_net, forms_rank, hesse_net, multiplicity_profile,
    pencil_rank, validate_net, NetRealization, TernaryForm, ValidationReport, Violation,
};
pub use profile::{profile_identities, IdentityReport, MultiplicityProfile};
pub use projective::{line_intersection, ProjLine, ProjPoint};

use thiserror::Error;

use crate::exact_arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("projective triple is identically zero")]
    ZeroTriple,
    #[error("the two lines coincide")]
    IdenticalLines,
    #[error("elements from different fields")]
    FieldMismatch,
    #[error("a net needs at least 3 classes, got {0}")]
    TooFewClasses(usize),
    #[error("a net needs d >= 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("line {index} of class {class} repeats an earlier line")]
    DuplicateLine { class: usize, index: usize },
    #[error("class index {index} out of range for m = {m}")]
    ClassIndexOutOfRange { index: usize, m: usize },
    #[error("cannot delete a class from a net with m = {m}")]
    CannotDelete { m: usize },
    #[error("profile extraction failed: {0}")]
    ProfileAnomaly(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("square {square} is not Latin: {reason}")]
    NotLatin { square: usize, reason: String },
    #[error("squares {first} and {second} are not orthogonal")]
    NotOrthogonal { first: usize, second: usize },
    #[error("combinatorial net axiom fails: {0}")]
    CombinatorialAxiom(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}
