//! Intersection, union and the additives on disjoint behaviours.

use std::collections::BTreeSet;

use super::universe::{Behaviour, BehaviourError, Universe};
use crate::designs::{ram_text, Negative, Polarity, Ram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Additive {
    With,
    Plus,
    Intersect,
    Union,
}

impl std::str::FromStr for Additive {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "with" | "&" => Ok(Additive::With),
            "plus" | "+" => Ok(Additive::Plus),
            "intersect" => Ok(Additive::Intersect),
            "union" => Ok(Additive::Union),
            _ => Err(format!("unknown additive {s:?}")),
        }
    }
}

impl Universe {
    pub fn disjoint(&self, g: &Behaviour, h: &Behaviour) -> Result<bool, BehaviourError> {
        self.same(g, h)?;
        Ok(self.directory(g)?.is_disjoint(&self.directory(h)?))
    }

    fn require_disjoint(&self, g: &Behaviour, h: &Behaviour) -> Result<(), BehaviourError> {
        let (a, b) = (self.directory(g)?, self.directory(h)?);
        let shared: Vec<String> = a.intersection(&b).map(ram_text).collect();
        if shared.is_empty() {
            Ok(())
        } else {
            Err(BehaviourError::NotDisjoint(shared.join(" ")))
        }
    }

    pub fn additive(&self, g: &Behaviour, h: &Behaviour, op: Additive) -> Result<Behaviour, BehaviourError> {
        self.same(g, h)?;
        match op {
            Additive::Intersect => {
                let mut m = g.members.clone();
                m.intersect_with(&h.members);
                Ok(self.with_members(g.polarity, m, format!("({}) & ({})", g.provenance, h.provenance)))
            }
            Additive::Union => {
                let mut m = g.members.clone();
                m.union_with(&h.members);
                let closed = self.perp(g.polarity.opposite(), &self.perp(g.polarity, &m));
                Ok(self.with_members(g.polarity, closed, format!("({}) u ({})", g.provenance, h.provenance)))
            }
            Additive::With => {
                if g.polarity != Polarity::Negative {
                    return Err(BehaviourError::Polarity("negative"));
                }
                self.require_disjoint(g, h)?;
                self.additive(g, h, Additive::Intersect)
            }
            Additive::Plus => {
                if g.polarity != Polarity::Positive {
                    return Err(BehaviourError::Polarity("positive"));
                }
                self.require_disjoint(g, h)?;
                let mut plain = g.members.clone();
                plain.union_with(&h.members);
                let closed = self.additive(g, h, Additive::Union)?;
                if closed.members != plain {
                    return Err(BehaviourError::NotInternallyComplete);
                }
                Ok(closed)
            }
        }
    }
}

/// `ψ₁ ∪ ψ₂` for negatives answering disjoint sets of ramifications.
pub fn union_negatives(a: &Negative, b: &Negative) -> Option<Negative> {
    if a.focus != b.focus || a.branches.keys().any(|j| b.branches.contains_key(j)) {
        return None;
    }
    Some(Negative::new(a.focus.clone(), a.branches.iter().chain(&b.branches).map(|(j, p)| (j.clone(), p.clone()))))
}

/// The branches of `n` whose ramification lies in `dir`, and the others.
pub fn split_negative(n: &Negative, dir: &BTreeSet<Ram>) -> (Negative, Negative) {
    let (inside, outside): (Vec<_>, Vec<_>) = n.branches.iter().map(|(j, p)| (j.clone(), p.clone())).partition(|(j, _)| dir.contains(j));
    (Negative::new(n.focus.clone(), inside), Negative::new(n.focus.clone(), outside))
}
