//! Views, the Opp designs and separation witnesses.

use std::collections::BTreeSet;

use super::machine::orth;
use crate::designs::{from_chronicles, Action, Address, Base, Chronicle, ChronicleError, Design, Negative, Positive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ViewError {
    #[error("action {0} at position {1} has no justifier")]
    Unjustified(String, usize),
    #[error("invalid chronicle: {0}")]
    Invalid(#[from] ChronicleError),
}

/// The dual view of a chronicle starting with a positive action.
pub fn view(r: &[Action]) -> Result<Vec<Action>, ViewError> {
    let Some(last) = r.last() else { return Ok(Vec::new()) };
    let n = r.len();
    if !last.is_positive() {
        let mut v = view(&r[..n - 1])?;
        v.push(last.opposite());
        return Ok(v);
    }
    if n == 1 {
        return Ok(vec![last.opposite()]);
    }
    let unjustified = || ViewError::Unjustified(last.to_string(), n - 1);
    let (parent, _) = last.focus.parent().ok_or_else(unjustified)?;
    let k = (0..n - 1)
        .rev()
        .find(|&k| !r[k].is_positive() && r[k].focus == parent)
        .ok_or_else(unjustified)?;
    let mut v = view(&r[..k])?;
    v.push(r[k].opposite());
    v.push(last.opposite());
    Ok(v)
}

fn base_of(r: &[Action]) -> Address {
    r.first().map(|a| a.focus.clone()).unwrap_or_else(Address::root)
}

/// Views of the prefixes of `r` that end with a negative action.
fn prefix_views(r: &[Action]) -> Result<BTreeSet<Chronicle>, ViewError> {
    let mut out = BTreeSet::new();
    for k in 1..=r.len() {
        if !r[k - 1].is_positive() {
            out.insert(Chronicle::new(view(&r[..k])?, false));
        }
    }
    Ok(out)
}

fn negative_on(set: &BTreeSet<Chronicle>, xi: Address) -> Result<Negative, ViewError> {
    match from_chronicles(set, &Base::negative(xi, []))? {
        Design::Negative(n) => Ok(n),
        Design::Positive(_) => unreachable!(),
    }
}

/// `Opp_r` for a chronicle `r` ending with a positive action: the least
/// design orthogonal to it.
pub fn opp_positive(r: &[Action]) -> Result<Negative, ViewError> {
    let mut set = prefix_views(r)?;
    set.insert(Chronicle::new(view(r)?, true));
    negative_on(&set, base_of(r))
}

/// `Opp_q` for a chronicle `q` ending with a negative action, answering
/// nothing after `view(q)`. The empty chronicle gives the skunk on `xi`.
pub fn opp_negative(q: &[Action], xi: &Address) -> Result<Negative, ViewError> {
    if q.is_empty() {
        return Ok(Negative::skunk(xi.clone()));
    }
    negative_on(&prefix_views(q)?, base_of(q))
}

/// The positive design whose chronicles are the prefixes of `r`.
pub fn chronicle_design(r: &[Action], daimon: bool) -> Result<Positive, ViewError> {
    let mut set: BTreeSet<Chronicle> = (1..=r.len())
        .filter(|&k| r[k - 1].is_positive())
        .map(|k| Chronicle::new(r[..k].to_vec(), false))
        .collect();
    if daimon {
        set.insert(Chronicle::new(r.to_vec(), true));
    }
    match from_chronicles(&set, &Base::positive([base_of(r)]))? {
        Design::Positive(p) => Ok(p),
        Design::Negative(_) => unreachable!(),
    }
}

/// Where `a` fails to be below `b`: a chronicle of `a` ending either in ✠
/// (`daimon`) or in a positive action that `b` does not match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub chronicle: Vec<Action>,
    pub daimon: bool,
}

/// First position, in depth-first order, where `a ⊑ b` fails.
pub fn divergence(a: &Positive, b: &Positive) -> Option<Divergence> {
    fn go(a: &Positive, b: &Positive, q: &mut Vec<Action>) -> Option<Divergence> {
        match (a, b) {
            (Positive::Omega, _) | (_, Positive::Daimon) => None,
            (Positive::Daimon, _) => Some(Divergence { chronicle: q.clone(), daimon: true }),
            (Positive::Proper { focus, ram, children }, other) => {
                q.push(Action::pos(focus.clone(), ram.clone()));
                let found = match other {
                    Positive::Proper { focus: f2, ram: r2, children: c2 } if f2 == focus && r2 == ram => {
                        children.iter().find_map(|(i, n)| {
                            let m = &c2[i];
                            n.branches.iter().find_map(|(j, p)| {
                                q.push(Action::neg(n.focus.clone(), j.clone()));
                                let d = go(p, m.branch(j), q);
                                q.pop();
                                d
                            })
                        })
                    }
                    _ => Some(Divergence { chronicle: q.clone(), daimon: false }),
                };
                q.pop();
                found
            }
        }
    }
    go(a, b, &mut Vec::new())
}

/// A negative design orthogonal to `a` but not to `b`, or `None` when
/// `a ⊑ b`. `xi` is the common base address.
pub fn separation_witness(a: &Positive, b: &Positive, xi: &Address) -> Result<Option<Negative>, ViewError> {
    let Some(d) = divergence(a, b) else { return Ok(None) };
    let psi = if d.daimon { opp_negative(&d.chronicle, xi)? } else { opp_positive(&d.chronicle)? };
    debug_assert!(orth(a, &psi) && !orth(b, &psi));
    Ok(Some(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::named::skunk;
    use crate::designs::{compare_positive, Order};

    fn act(p: bool, f: &[u32], r: &[u32]) -> Action {
        let a = Address::from_slice(f);
        let r = r.iter().copied().collect();
        if p {
            Action::pos(a, r)
        } else {
            Action::neg(a, r)
        }
    }

    #[test]
    fn view_of_first_action() {
        let a = act(true, &[], &[1, 2]);
        assert_eq!(view(std::slice::from_ref(&a)).unwrap(), vec![act(false, &[], &[1, 2])]);
    }

    #[test]
    fn view_skips_to_the_justifier() {
        // (+ε{1}) (-1{1,2}) (+1.1{1}) (-1.1.1{3}) (+1.2{})
        let r = [
            act(true, &[], &[1]),
            act(false, &[1], &[1, 2]),
            act(true, &[1, 1], &[1]),
            act(false, &[1, 1, 1], &[3]),
            act(true, &[1, 2], &[]),
        ];
        let v = view(&r).unwrap();
        assert_eq!(v, vec![act(false, &[], &[1]), act(true, &[1], &[1, 2]), act(false, &[1, 2], &[])]);
        let o = opp_positive(&r).unwrap();
        assert!(orth(&chronicle_design(&r, false).unwrap(), &o));
    }

    #[test]
    fn daimon_against_omega() {
        let w = separation_witness(&Positive::Daimon, &Positive::Omega, &Address::root()).unwrap().unwrap();
        assert_eq!(w, skunk(Address::root()));
        let p = Positive::parse("(+ . {1} (- 1 ({2} -> dai)))").unwrap();
        assert!(separation_witness(&p, &p, &Address::root()).unwrap().is_none());
    }

    #[test]
    fn divergence_matches_obs() {
        let ds = [
            "omega",
            "dai",
            "(+ . {1})",
            "(+ . {1} (- 1 ({2} -> dai)))",
            "(+ . {1} (- 1 ({2} -> dai) ({3} -> (+ 1.3 {}))))",
            "(+ . {2})",
        ];
        for x in ds {
            for y in ds {
                let (a, b) = (Positive::parse(x).unwrap(), Positive::parse(y).unwrap());
                assert_eq!(divergence(&a, &b).is_none(), compare_positive(&a, &b, Order::Obs), "{x} vs {y}");
                if let Some(w) = separation_witness(&a, &b, &Address::root()).unwrap() {
                    assert!(orth(&a, &w) && !orth(&b, &w), "{x} vs {y}");
                }
            }
        }
    }
}
