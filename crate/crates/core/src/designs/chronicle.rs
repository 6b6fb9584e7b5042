//! Designs as sets of chronicles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::address::Address;
use super::design::{Action, Design, Negative, Positive};
use super::typing::{check_design, Base};

/// An alternating sequence of actions, possibly closed by ✠.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chronicle {
    pub actions: Vec<Action>,
    pub daimon: bool,
}

impl Chronicle {
    pub fn new(actions: Vec<Action>, daimon: bool) -> Chronicle {
        Chronicle { actions, daimon }
    }

    /// Whether `self` is a prefix of `other` (✠ counting as a last element).
    pub fn is_prefix_of(&self, other: &Chronicle) -> bool {
        if self.daimon {
            return self == other;
        }
        other.actions.starts_with(&self.actions)
    }
}

impl fmt::Display for Chronicle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.actions.iter().map(|a| a.to_string()).collect();
        if self.daimon {
            parts.push("dai".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for Chronicle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn pos_chronicles(p: &Positive, prefix: &mut Vec<Action>, out: &mut BTreeSet<Chronicle>) {
    match p {
        Positive::Omega => {}
        Positive::Daimon => {
            out.insert(Chronicle::new(prefix.clone(), true));
        }
        Positive::Proper { focus, ram, children } => {
            prefix.push(Action::pos(focus.clone(), ram.clone()));
            out.insert(Chronicle::new(prefix.clone(), false));
            for n in children.values() {
                neg_chronicles(n, prefix, out);
            }
            prefix.pop();
        }
    }
}

fn neg_chronicles(n: &Negative, prefix: &mut Vec<Action>, out: &mut BTreeSet<Chronicle>) {
    for (j, p) in &n.branches {
        prefix.push(Action::neg(n.focus.clone(), j.clone()));
        pos_chronicles(p, prefix, out);
        prefix.pop();
    }
}

impl Positive {
    pub fn chronicles(&self) -> BTreeSet<Chronicle> {
        let mut out = BTreeSet::new();
        pos_chronicles(self, &mut Vec::new(), &mut out);
        out
    }
}

impl Negative {
    pub fn chronicles(&self) -> BTreeSet<Chronicle> {
        let mut out = BTreeSet::new();
        neg_chronicles(self, &mut Vec::new(), &mut out);
        out
    }
}

impl Design {
    pub fn chronicles(&self) -> BTreeSet<Chronicle> {
        match self {
            Design::Positive(p) => p.chronicles(),
            Design::Negative(n) => n.chronicles(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("{condition} fails on {chronicle}")]
pub struct ChronicleError {
    pub condition: &'static str,
    pub chronicle: String,
}

fn fail(condition: &'static str, c: &Chronicle) -> ChronicleError {
    ChronicleError { condition, chronicle: c.to_string() }
}

/// Checks the image conditions of the chronicle map for a design on `base`.
pub fn validate_chronicles(set: &BTreeSet<Chronicle>, base: &Base) -> Result<(), ChronicleError> {
    let negative = base.left.is_some();
    for c in set {
        if c.actions.is_empty() && (!c.daimon || negative) {
            return Err(fail("alternation", c));
        }
        for (k, a) in c.actions.iter().enumerate() {
            if a.is_positive() != ((k % 2 == 0) != negative) {
                return Err(fail("alternation", c));
            }
        }
        if c.actions.last().map(|a| a.is_positive()).unwrap_or(false) == c.daimon && !c.actions.is_empty() {
            return Err(fail("alternation", c));
        }
        for k in 1..c.actions.len() {
            if c.actions[k - 1].is_positive() {
                let p = Chronicle::new(c.actions[..k].to_vec(), false);
                if !set.contains(&p) {
                    return Err(fail("prefix-closure", c));
                }
            }
        }
        for (k, a) in c.actions.iter().enumerate() {
            if a.is_positive() {
                continue;
            }
            if k == 0 {
                if Some(&a.focus) != base.left.as_ref() {
                    return Err(fail("focalization", c));
                }
                continue;
            }
            let father = &c.actions[k - 1];
            match a.focus.parent() {
                Some((xi, i)) if xi == father.focus && father.ram.contains(&i) => {}
                _ => return Err(fail("focalization", c)),
            }
        }
        for (k, a) in c.actions.iter().enumerate() {
            if !a.is_positive() || base.right.contains(&a.focus) {
                continue;
            }
            let bound = a.focus.parent().map_or(false, |(xi, i)| {
                c.actions[..k].iter().any(|b| !b.is_positive() && b.focus == xi && b.ram.contains(&i))
            });
            if !bound {
                return Err(fail("subaddress", c));
            }
        }
    }
    let v: Vec<&Chronicle> = set.iter().collect();
    for (x, c1) in v.iter().enumerate() {
        for c2 in &v[x + 1..] {
            if c1.is_prefix_of(c2) || c2.is_prefix_of(c1) {
                continue;
            }
            let common = c1.actions.iter().zip(&c2.actions).take_while(|(a, b)| a == b).count();
            let ok = match common {
                0 => negative,
                k => c1.actions[k - 1].is_positive(),
            };
            if !ok {
                return Err(fail("coherence", c2));
            }
        }
    }
    Ok(())
}

fn rebuild(set: &BTreeSet<Chronicle>, negative: Option<&Address>) -> Design {
    fn pos_from(set: &[&Chronicle], depth: usize) -> Positive {
        if set.iter().any(|c| c.daimon && c.actions.len() == depth) {
            return Positive::Daimon;
        }
        let Some(head) = set.iter().find_map(|c| c.actions.get(depth)) else { return Positive::Omega };
        Positive::with_children(head.focus.clone(), head.ram.clone(), |a| {
            let rows: Vec<&Chronicle> =
                set.iter().copied().filter(|c| c.actions.get(depth + 1).map_or(false, |n| n.focus == a)).collect();
            neg_from(a, &rows, depth + 1)
        })
    }
    fn neg_from(focus: Address, set: &[&Chronicle], depth: usize) -> Negative {
        let mut by_j: BTreeMap<_, Vec<&Chronicle>> = BTreeMap::new();
        for c in set {
            by_j.entry(c.actions[depth].ram.clone()).or_default().push(c);
        }
        Negative::new(focus, by_j.into_iter().map(|(j, rows)| (j, pos_from(&rows, depth + 1))))
    }
    let all: Vec<&Chronicle> = set.iter().collect();
    match negative {
        None => Design::Positive(pos_from(&all, 0)),
        Some(z) => Design::Negative(neg_from(z.clone(), &all, 0)),
    }
}

/// Rebuilds a design on `base` from its chronicles, checking the image
/// conditions and then typability (which covers affinity).
pub fn from_chronicles(set: &BTreeSet<Chronicle>, base: &Base) -> Result<Design, ChronicleError> {
    validate_chronicles(set, base)?;
    let d = rebuild(set, base.left.as_ref());
    if !check_design(&d, base) {
        return Err(ChronicleError { condition: "affinity", chronicle: d.to_string() });
    }
    Ok(d)
}
