//! Multiplicative proof structures and their correctness criteria, together
//! with designs, their normalization and universe-bounded behaviours.

pub mod behaviours;
pub mod criteria;
pub mod designs;
pub mod engine;
pub mod lambda;
pub mod mll;
pub mod rewrite;
pub mod text;

pub use criteria::{Verdict, Witness};
pub use designs::{Action, Address, Base, Design, Negative, Positive, Ram};
pub use engine::{Net, NormalForm, Outcome};
pub use mll::{Formula, Occ, ParaproofStructure};
