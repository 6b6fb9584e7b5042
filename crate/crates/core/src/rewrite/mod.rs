//! Rewriting on structures: parsing, sequentialization and cut elimination.

pub mod cut;
pub mod parse;
pub mod sequentialize;

pub use cut::{cut_normalize, cut_step, CutError};
pub use parse::{check_parsing, parse_redexes, search, ParseMode, ParseResult, ParseState, Rule, DEFAULT_STATE_CAP};
pub use sequentialize::{sequentialize, SequentializeError};
