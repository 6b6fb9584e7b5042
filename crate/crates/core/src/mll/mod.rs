//! Formulas, paraproof structures, derivations and correction graphs.

pub mod derivation;
pub mod formula;
pub mod generate;
pub mod graph;
pub mod structure;
pub mod text;

pub use derivation::{Derivation, DerivationError, RawDerivation};
pub use formula::{Formula, Occ};
pub use generate::{generate, random_structure, GenConfig, Generated};
pub use graph::{correction_graph, Graph, Side, Skeleton, Switching, Vertex};
pub use structure::{Class, Diagnostic, LeafRef, Mode, ParaproofStructure, Tree};
