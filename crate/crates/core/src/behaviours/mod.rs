//! Behaviours over a finite universe of designs: orthogonal sets,
//! biorthogonal closure, incarnation, directories, additives, delocation.
//!
//! Membership is decided inside the universe, so a set closed there may be
//! larger than the corresponding behaviour over all designs.

pub mod additive;
pub mod delocation;
pub mod fixtures;
pub mod incarnation;
pub mod universe;

pub use additive::{split_negative, union_negatives, Additive};
pub use delocation::{Delocation, DelocationError};
pub use fixtures::{coloured_point, field_query, ColouredPoint};
pub use universe::{Behaviour, BehaviourError, BehaviourSummary, Universe, UniverseSummary, DEFAULT_CAP};
