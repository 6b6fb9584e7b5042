//! Correctness criteria for paraproof structures.

pub mod aj;
pub mod cp;
pub mod dr;

use serde::Serialize;
use thiserror::Error;

pub use aj::check_aj;
pub use cp::{check_cp, enumerate_counterproofs, partitions_orthogonal, CounterProof};
pub use dr::{check_acyclicity, check_dr, DEFAULT_PAR_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

impl Verdict {
    pub fn accept(criterion: &str) -> Verdict {
        Verdict { criterion: criterion.into(), accepted: true, witness: None, trace: None }
    }

    pub fn reject(criterion: &str, witness: Witness) -> Verdict {
        Verdict { criterion: criterion.into(), accepted: false, witness: Some(witness), trace: None }
    }

    pub fn with_trace(mut self, trace: Vec<String>) -> Verdict {
        self.trace = Some(trace);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A switching whose correction graph has the listed cycle.
    Cycle { switching: String, cycle: Vec<String> },
    /// A switching whose correction graph splits; `side` is one component.
    Disconnected { switching: String, side: Vec<String>, other: Vec<String> },
    /// A play `m1- phi(m1)+ ... mn-` that the axiom strategy cannot extend.
    Play { moves: Vec<String> },
    /// A counter-proof whose induced partition is not orthogonal to the structure's.
    CounterProof { nets: Vec<String>, induced: Vec<Vec<String>> },
    /// A parsing normal form that is not terminal.
    Stuck { state: String },
    /// The structure is not well formed for this criterion.
    Invalid { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuardError {
    #[error("{count} par nodes exceed the cap of {cap}")]
    TooManyPars { count: usize, cap: usize },
    #[error("{count} leaves exceed the cap of {cap}")]
    TooManyLeaves { count: usize, cap: usize },
    #[error("state space exceeds {cap} states")]
    StateSpace { cap: usize },
    #[error("criterion requires a cut-free structure")]
    HasCuts,
    #[error("criterion requires a proof structure: {0}")]
    NotProofStructure(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}
