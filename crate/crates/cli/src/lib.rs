//! Command-line and HTTP front ends for locus-core.

pub mod doc;
pub mod ops;
pub mod server;
pub mod session;

pub use doc::{Doc, Format, InputError};
