//! Nets and their normalization: weak and strong reduction, the token
//! machine, orthogonality and separation.

pub mod machine;
pub mod net;
pub mod separation;
pub mod token;

pub use machine::{
    normal_form, normalize_state, orth, orthogonal, strong_normalize, weak_run, End, Env, Frontier, NfChronicle,
    NormalForm, Outcome, Run, State, TraceStep, DEFAULT_FUEL,
};
pub use net::{Net, NetError, NetInfo};
pub use separation::{
    chronicle_design, divergence, opp_negative, opp_positive, separation_witness, view, Divergence, ViewError,
};
pub use token::{token_run, Letter, Occurrence, Position, Side, TokenError, TokenRun};
