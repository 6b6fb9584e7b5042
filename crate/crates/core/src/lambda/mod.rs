//! Designs as terms with named variables: slices are the affine terms, and
//! an environment machine runs the general ones.

pub mod machine;
pub mod term;
pub mod translate;

pub use machine::{machine_normalize, machine_run, Closure, Env, MachineRun, NetTerms, Normal, Outcome, Value};
pub use term::{affine_check, canonical, free_vars, free_vars_neg, rename_free, Lambda, NegTerm, PosTerm, Term};
pub use translate::{
    address_name, design_to_term, fax_term, slice_to_term, term_to_design, term_to_slice, LambdaError,
};

/// Whether every negative node keeps at most one branch.
pub fn is_slice(d: &crate::designs::Design) -> bool {
    d.is_slice()
}
