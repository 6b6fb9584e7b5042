//! Reading a derivation off a successful parse.

use crate::criteria::GuardError;
use crate::mll::{Class, Derivation, LeafRef, ParaproofStructure};

use super::parse::{search, ParseMode, ParseState, Rule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequentializeError {
    #[error("structure does not parse: {0}")]
    Rejected(String),
    #[error(transparent)]
    Guard(#[from] GuardError),
}

fn axiom(s: &ParaproofStructure, c: &Class) -> Derivation {
    Derivation::Axiom {
        conclusions: c.iter().map(|l| (l.clone(), s.leaf_formula(l).expect("leaf of the structure").clone())).collect(),
    }
}

/// Replaces the first axiom on exactly the leaves of `c` by `by`.
fn replace(d: &mut Derivation, c: &Class, by: &mut Option<Derivation>) -> bool {
    match d {
        Derivation::Axiom { conclusions } => {
            let leaves: Class = conclusions.iter().map(|(l, _)| l.clone()).collect();
            if leaves == *c {
                *d = by.take().expect("replacement");
                return true;
            }
            false
        }
        Derivation::Par { premise, .. } => replace(premise, c, by),
        Derivation::Tensor { left, right, .. } | Derivation::Cut { left, right, .. } | Derivation::Mix { left, right } => {
            replace(left, c, by) || replace(right, c, by)
        }
    }
}

fn mix_all(mut ds: Vec<Derivation>) -> Derivation {
    let mut acc = ds.remove(0);
    for d in ds {
        acc = Derivation::Mix { left: Box::new(acc), right: Box::new(d) };
    }
    acc
}

/// A derivation building exactly `s`, using mix only if `allow_mix` is set.
pub fn sequentialize(s: &ParaproofStructure, allow_mix: bool, cap: usize) -> Result<Derivation, SequentializeError> {
    let r = search(s, ParseMode::Weak, allow_mix, cap)?;
    let steps = match r.trace {
        Some(t) if r.accepted => t,
        _ => {
            let why = r.stuck.map(|st| st.render(s)).unwrap_or_else(|| "no terminal state".into());
            return Err(SequentializeError::Rejected(why));
        }
    };
    let start = ParseState::new(s);
    let end = steps.last().map(|(_, st)| st.clone()).unwrap_or_else(|| start.clone());
    let mut d = mix_all(end.classes.iter().map(|c| axiom(s, c)).collect());
    for k in (0..steps.len()).rev() {
        let before = if k == 0 { &start } else { &steps[k - 1].1 };
        let (rule, after) = &steps[k];
        let gone: Vec<&Class> = before.classes.iter().filter(|c| !after.classes.contains(c)).collect();
        let made: Vec<&Class> = after.classes.iter().filter(|c| !before.classes.contains(c)).collect();
        // empty classes may repeat, so the new one is whatever is not matched
        let made: Class = match made.first() {
            Some(c) => (*c).clone(),
            None => Class::new(),
        };
        let find = |l: &LeafRef| gone.iter().find(|c| c.contains(l)).map(|c| (*c).clone()).expect("premise class");
        let sub = match rule {
            Rule::Par { tree, occ } => {
                let c = find(&LeafRef::new(*tree, occ.child(1)));
                Derivation::Par { tree: *tree, occ: occ.clone(), premise: Box::new(axiom(s, &c)) }
            }
            Rule::Tensor { tree, occ } => {
                let c1 = find(&LeafRef::new(*tree, occ.child(1)));
                let c2 = find(&LeafRef::new(*tree, occ.child(2)));
                Derivation::Tensor { tree: *tree, occ: occ.clone(), left: Box::new(axiom(s, &c1)), right: Box::new(axiom(s, &c2)) }
            }
            Rule::MixPar { tree, occ } => {
                let c1 = find(&LeafRef::new(*tree, occ.child(1)));
                let c2 = find(&LeafRef::new(*tree, occ.child(2)));
                let m = Derivation::Mix { left: Box::new(axiom(s, &c1)), right: Box::new(axiom(s, &c2)) };
                Derivation::Par { tree: *tree, occ: occ.clone(), premise: Box::new(m) }
            }
            Rule::Cut { i, j } => {
                let c1 = find(&LeafRef::new(*i, crate::mll::Occ::root()));
                let c2 = find(&LeafRef::new(*j, crate::mll::Occ::root()));
                Derivation::Cut { trees: (*i, *j), left: Box::new(axiom(s, &c1)), right: Box::new(axiom(s, &c2)) }
            }
        };
        let mut by = Some(sub);
        assert!(replace(&mut d, &made, &mut by), "class {:?} has an axiom", made);
    }
    Ok(d)
}
