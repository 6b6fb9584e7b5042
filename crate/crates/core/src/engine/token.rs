//! Normalization as a token travelling through a closed pair of designs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::machine::Outcome;
use crate::designs::{ram_text, Action, Address, Negative, Positive, Ram};

/// A letter of an occurrence: a bias `i`, a ramification `I`, or `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Bias(u32),
    Ram(Ram),
    One,
}

pub type Occurrence = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub side: Side,
    pub occ: Occurrence,
}

pub fn occurrence_text(u: &[Letter]) -> String {
    if u.is_empty() {
        return "ε".into();
    }
    let parts: Vec<String> = u
        .iter()
        .map(|l| match l {
            Letter::Bias(i) => i.to_string(),
            Letter::Ram(r) => ram_text(r),
            Letter::One => "1".into(),
        })
        .collect();
    parts.join(" ")
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{})", self.side, occurrence_text(&self.occ))
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TokenError {
    #[error("position {0} visited twice")]
    Revisit(Position),
    #[error("occurrence {0} bound twice")]
    Rebind(Position),
    #[error("action at {0} has no justifier")]
    Unjustified(Position),
    #[error("no node at {0}")]
    Missing(Position),
    #[error("bound actions at {0} are not opposite")]
    NotOpposite(Position),
}

/// What sits at an occurrence.
enum Spot<'a> {
    Pos(&'a Positive),
    Neg(&'a Negative, &'a Ram),
}

fn at_pos<'a>(p: &'a Positive, u: &'a [Letter]) -> Option<Spot<'a>> {
    if u.is_empty() {
        return Some(Spot::Pos(p));
    }
    match (p, &u[0]) {
        (Positive::Proper { children, .. }, Letter::Bias(i)) => at_neg(children.get(i)?, &u[1..]),
        _ => None,
    }
}

fn at_neg<'a>(n: &'a Negative, u: &'a [Letter]) -> Option<Spot<'a>> {
    let Letter::Ram(j) = u.first()? else { return None };
    match u.get(1) {
        None => Some(Spot::Neg(n, j)),
        Some(Letter::One) => at_pos(n.branch(j), &u[2..]),
        Some(_) => None,
    }
}

fn spot_action(s: &Spot<'_>) -> Option<Action> {
    match s {
        Spot::Pos(p) => p.head(),
        Spot::Neg(n, j) => Some(Action::neg(n.focus.clone(), (*j).clone())),
    }
}

/// The occurrence of the negative action justifying a positive action on
/// `focus` found at `u`.
fn justifier(lookup: &dyn Fn(&[Letter]) -> Option<Action>, u: &[Letter], focus: &Address) -> Option<Occurrence> {
    let (parent, _) = focus.parent()?;
    (1..=u.len())
        .rev()
        .filter(|&k| matches!(u[k - 1], Letter::Ram(_)))
        .find(|&k| lookup(&u[..k]).is_some_and(|a| !a.is_positive() && a.focus == parent))
        .map(|k| u[..k].to_vec())
}

#[derive(Debug, Clone)]
pub struct TokenRun {
    pub trace: Vec<(Position, String)>,
    pub bindings: Vec<(Occurrence, Occurrence)>,
    pub visited_l: BTreeSet<Occurrence>,
    pub visited_r: BTreeSet<Occurrence>,
    pub outcome: Outcome,
    pub pullback: (Positive, Negative),
}

/// Runs the token machine on `φ:(⊢ξ)` against `ψ:(ξ⊢)`.
pub fn token_run(phi: &Positive, psi: &Negative) -> Result<TokenRun, TokenError> {
    let look_l = |u: &[Letter]| at_pos(phi, u).as_ref().and_then(spot_action);
    let look_r = |u: &[Letter]| at_neg(psi, u).as_ref().and_then(spot_action);
    let mut pos = Position { side: Side::L, occ: Vec::new() };
    let mut trace = Vec::new();
    let mut bindings: Vec<(Occurrence, Occurrence)> = Vec::new();
    let (mut visited_l, mut visited_r) = (BTreeSet::new(), BTreeSet::new());
    let bind = |bindings: &mut Vec<(Occurrence, Occurrence)>, l: Occurrence, r: Occurrence| {
        if bindings.iter().any(|(x, _)| *x == l) {
            return Err(TokenError::Rebind(Position { side: Side::L, occ: l }));
        }
        if bindings.iter().any(|(_, y)| *y == r) {
            return Err(TokenError::Rebind(Position { side: Side::R, occ: r }));
        }
        if look_l(&l).map(|a| a.opposite()) != look_r(&r) {
            return Err(TokenError::NotOpposite(Position { side: Side::L, occ: l }));
        }
        bindings.push((l, r));
        Ok(())
    };
    let outcome = loop {
        let fresh = match pos.side {
            Side::L => visited_l.insert(pos.occ.clone()),
            Side::R => visited_r.insert(pos.occ.clone()),
        };
        if !fresh {
            return Err(TokenError::Revisit(pos));
        }
        let spot = match pos.side {
            Side::L => at_pos(phi, &pos.occ),
            Side::R => at_neg(psi, &pos.occ),
        }
        .ok_or_else(|| TokenError::Missing(pos.clone()))?;
        let label = match &spot {
            Spot::Pos(Positive::Omega) => "omega".to_string(),
            Spot::Pos(Positive::Daimon) => "dai".to_string(),
            s => spot_action(s).map(|a| a.to_string()).unwrap_or_default(),
        };
        trace.push((pos.clone(), label));
        let next = match (&spot, pos.side) {
            (Spot::Pos(Positive::Omega), _) => break Outcome::SyntacticOmega,
            (Spot::Pos(Positive::Daimon), _) => break Outcome::Daimon,
            (Spot::Neg(..), side) => {
                let mut occ = pos.occ.clone();
                occ.push(Letter::One);
                Position { side, occ }
            }
            (Spot::Pos(Positive::Proper { ram, .. }), Side::L) if pos.occ.is_empty() => {
                let target = vec![Letter::Ram(ram.clone())];
                bind(&mut bindings, Vec::new(), target.clone())?;
                Position { side: Side::R, occ: target }
            }
            (Spot::Pos(Positive::Proper { focus, ram, .. }), side) => {
                let lookup: &dyn Fn(&[Letter]) -> Option<Action> = match side {
                    Side::L => &look_l,
                    Side::R => &look_r,
                };
                let v = justifier(lookup, &pos.occ, focus).ok_or_else(|| TokenError::Unjustified(pos.clone()))?;
                let (_, i) = focus.parent().expect("justified focus has a parent");
                let partner = bindings.iter().find_map(|(l, r)| match side {
                    Side::L if *l == v => Some(r.clone()),
                    Side::R if *r == v => Some(l.clone()),
                    _ => None,
                });
                let mut target = partner.ok_or_else(|| TokenError::Unjustified(pos.clone()))?;
                target.push(Letter::Bias(i));
                target.push(Letter::Ram(ram.clone()));
                match side {
                    Side::L => bind(&mut bindings, pos.occ.clone(), target.clone())?,
                    Side::R => bind(&mut bindings, target.clone(), pos.occ.clone())?,
                }
                let other = if side == Side::L { Side::R } else { Side::L };
                Position { side: other, occ: target }
            }
        };
        pos = next;
    };
    let pullback = (
        restrict_pos(phi, &mut Vec::new(), &visited_l),
        restrict_neg(psi, &mut Vec::new(), &visited_r),
    );
    Ok(TokenRun { trace, bindings, visited_l, visited_r, outcome, pullback })
}

fn restrict_pos(p: &Positive, u: &mut Occurrence, visited: &BTreeSet<Occurrence>) -> Positive {
    if !visited.contains(u) {
        return Positive::Omega;
    }
    match p {
        Positive::Proper { focus, ram, children } => {
            let children = children
                .iter()
                .map(|(i, c)| {
                    u.push(Letter::Bias(*i));
                    let n = restrict_neg(c, u, visited);
                    u.pop();
                    (*i, n)
                })
                .collect();
            Positive::Proper { focus: focus.clone(), ram: ram.clone(), children }
        }
        other => other.clone(),
    }
}

fn restrict_neg(n: &Negative, u: &mut Occurrence, visited: &BTreeSet<Occurrence>) -> Negative {
    let mut out = Negative::skunk(n.focus.clone());
    for (j, p) in &n.branches {
        u.push(Letter::Ram(j.clone()));
        if visited.contains(u) {
            u.push(Letter::One);
            out.set_branch(j.clone(), restrict_pos(p, u, visited));
            u.pop();
        }
        u.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::machine::orth;

    #[test]
    fn running_example_positions() {
        let phi = Positive::parse("(+ . {1 2} (- 1 ({1} -> (+ 1.1 {1}))) (- 2 ({1} -> dai)))").unwrap();
        let psi = Negative::parse("(- . ({1 2} -> (+ 1 {1} (- 1.1 ({1} -> (+ 2 {1}))))))").unwrap();
        let run = token_run(&phi, &psi).unwrap();
        let got: Vec<String> = run.trace.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(
            got,
            [
                "(L,ε)",
                "(R,{1 2})",
                "(R,{1 2} 1)",
                "(L,1 {1})",
                "(L,1 {1} 1)",
                "(R,{1 2} 1 1 {1})",
                "(R,{1 2} 1 1 {1} 1)",
                "(L,2 {1})",
                "(L,2 {1} 1)",
            ]
        );
        let acts: Vec<&str> = run.trace.iter().map(|(_, a)| a.as_str()).collect();
        assert_eq!(acts[..4], ["(+ . {1 2})", "(- . {1 2})", "(+ 1 {1})", "(- 1 {1})"]);
        assert_eq!(run.outcome, Outcome::Daimon);
        assert!(orth(&phi, &psi));
        assert_eq!(run.pullback, (phi, psi));
    }

    #[test]
    fn pullback_drops_unvisited_branches() {
        let phi = Positive::parse("(+ . {1} (- 1 ({1} -> dai) ({2} -> dai)))").unwrap();
        let psi = Negative::parse("(- . ({1} -> (+ 1 {2})) ({3} -> dai))").unwrap();
        let run = token_run(&phi, &psi).unwrap();
        assert_eq!(run.outcome, Outcome::Daimon);
        assert_eq!(run.pullback.0, Positive::parse("(+ . {1} (- 1 ({2} -> dai)))").unwrap());
        assert_eq!(run.pullback.1, Negative::parse("(- . ({1} -> (+ 1 {2})))").unwrap());
    }

    #[test]
    fn stops_on_omega() {
        let phi = Positive::parse("(+ . {1})").unwrap();
        let psi = Negative::parse("(- . ({2} -> dai))").unwrap();
        let run = token_run(&phi, &psi).unwrap();
        assert_eq!(run.outcome, Outcome::SyntacticOmega);
        assert_eq!(run.trace.len(), 3);
    }
}
