//! Designs: abstract syntax, bases and typing, chronicles and orders.

pub mod address;
pub mod chronicle;
pub mod design;
pub mod enumerate;
pub mod named;
pub mod order;
pub mod random;
pub mod text;
pub mod typing;

pub use address::{parse_alphabet_text, parse_ram_text, ram_text, well_formed, Address, Ram};
pub use chronicle::{from_chronicles, validate_chronicles, Chronicle, ChronicleError};
pub use design::{Action, Design, Negative, Polarity, Positive, ShapeError};
pub use enumerate::{sub_negatives, sub_positives, CapExceeded, Enumerator};
pub use random::DesignGen;
pub use order::{compare, compare_negative, compare_positive, decompose, le_both, obs_by_chronicles, Order, OrderError};
pub use text::parse_design_list;
pub use typing::{check_design, infer_base, infer_negative, minimal_base, Base, TypeError};
