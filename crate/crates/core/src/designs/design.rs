use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::address::{ram_text, Address, Ram};

/// A positive (pseudo-)design in abstract syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Positive {
    Omega,
    Daimon,
    Proper { focus: Address, ram: Ram, children: BTreeMap<u32, Negative> },
}

/// A negative (pseudo-)design on `focus`. Branches not stored are Ω, and no
/// stored branch is Ω.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Negative {
    pub focus: Address,
    pub branches: BTreeMap<Ram, Positive>,
}

pub static OMEGA: Positive = Positive::Omega;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Polarity {
    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// A signed action `(±, ξ, I)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub polarity: Polarity,
    pub focus: Address,
    pub ram: Ram,
}

impl Action {
    pub fn pos(focus: Address, ram: Ram) -> Action {
        Action { polarity: Polarity::Positive, focus, ram }
    }

    pub fn neg(focus: Address, ram: Ram) -> Action {
        Action { polarity: Polarity::Negative, focus, ram }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn opposite(&self) -> Action {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Action { polarity, focus: self.focus.clone(), ram: self.ram.clone() }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.is_positive() { '+' } else { '-' };
        write!(f, "({} {} {})", s, self.focus, ram_text(&self.ram))
    }
}

impl Serialize for Action {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Error for a proper positive whose children do not match its ramification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("child at {found} does not match ({focus}, {ram})")]
pub struct ShapeError {
    pub focus: String,
    pub ram: String,
    pub found: String,
}

impl Positive {
    pub fn proper(focus: Address, ram: Ram, children: Vec<Negative>) -> Result<Positive, ShapeError> {
        let mut map = BTreeMap::new();
        let expected: Vec<Address> = ram.iter().map(|&i| focus.child(i)).collect();
        let err = |found: String| ShapeError { focus: focus.to_string(), ram: ram_text(&ram), found };
        if children.len() != expected.len() {
            return Err(err(format!("{} children", children.len())));
        }
        for (n, a) in children.into_iter().zip(expected) {
            if n.focus != a {
                return Err(err(n.focus.to_string()));
            }
            let (_, i) = a.parent().expect("child address");
            map.insert(i, n);
        }
        Ok(Positive::Proper { focus, ram, children: map })
    }

    /// `(+, ξ, I)` with every child built by `f(ξi)`.
    pub fn with_children(focus: Address, ram: Ram, mut f: impl FnMut(Address) -> Negative) -> Positive {
        let children = ram.iter().map(|&i| (i, f(focus.child(i)))).collect();
        Positive::Proper { focus, ram, children }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Positive::Omega)
    }

    pub fn is_daimon(&self) -> bool {
        matches!(self, Positive::Daimon)
    }

    pub fn head(&self) -> Option<Action> {
        match self {
            Positive::Proper { focus, ram, .. } => Some(Action::pos(focus.clone(), ram.clone())),
            _ => None,
        }
    }

    /// Number of actions on the longest chronicle.
    pub fn depth(&self) -> usize {
        match self {
            Positive::Proper { children, .. } => 1 + children.values().map(|n| n.depth()).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// Number of action nodes.
    pub fn size(&self) -> usize {
        match self {
            Positive::Proper { children, .. } => 1 + children.values().map(|n| n.size()).sum::<usize>(),
            _ => 0,
        }
    }

    pub fn is_slice(&self) -> bool {
        match self {
            Positive::Proper { children, .. } => children.values().all(|n| n.is_slice()),
            _ => true,
        }
    }

    /// All action occurrences, as a multiset count per action.
    pub fn actions(&self) -> BTreeMap<Action, usize> {
        let mut out = BTreeMap::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions(&self, out: &mut BTreeMap<Action, usize>) {
        if let Positive::Proper { focus, ram, children } = self {
            *out.entry(Action::pos(focus.clone(), ram.clone())).or_default() += 1;
            for n in children.values() {
                n.collect_actions(out);
            }
        }
    }

    /// Applies `f` to every address occurring in the design.
    pub fn map_addresses(&self, f: &impl Fn(&Address) -> Address) -> Positive {
        match self {
            Positive::Proper { focus, ram, children } => Positive::Proper {
                focus: f(focus),
                ram: ram.clone(),
                children: children.iter().map(|(i, n)| (*i, n.map_addresses(f))).collect(),
            },
            other => other.clone(),
        }
    }

    pub fn contains_omega(&self) -> bool {
        match self {
            Positive::Omega => true,
            Positive::Daimon => false,
            Positive::Proper { children, .. } => children.values().any(|n| n.contains_omega_below()),
        }
    }
}

impl Negative {
    pub fn new(focus: Address, branches: impl IntoIterator<Item = (Ram, Positive)>) -> Negative {
        Negative { focus, branches: branches.into_iter().filter(|(_, p)| !p.is_omega()).collect() }
    }

    pub fn skunk(focus: Address) -> Negative {
        Negative { focus, branches: BTreeMap::new() }
    }

    /// The branch answering `J`, Ω when absent.
    pub fn branch(&self, j: &Ram) -> &Positive {
        self.branches.get(j).unwrap_or(&OMEGA)
    }

    pub fn set_branch(&mut self, j: Ram, p: Positive) {
        if p.is_omega() {
            self.branches.remove(&j);
        } else {
            self.branches.insert(j, p);
        }
    }

    pub fn depth(&self) -> usize {
        self.branches.values().map(|p| 1 + p.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.branches.values().map(|p| 1 + p.size()).sum()
    }

    pub fn is_slice(&self) -> bool {
        self.branches.len() <= 1 && self.branches.values().all(|p| p.is_slice())
    }

    pub fn actions(&self) -> BTreeMap<Action, usize> {
        let mut out = BTreeMap::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions(&self, out: &mut BTreeMap<Action, usize>) {
        for (j, p) in &self.branches {
            *out.entry(Action::neg(self.focus.clone(), j.clone())).or_default() += 1;
            p.collect_actions(out);
        }
    }

    pub fn map_addresses(&self, f: &impl Fn(&Address) -> Address) -> Negative {
        Negative {
            focus: f(&self.focus),
            branches: self.branches.iter().map(|(j, p)| (j.clone(), p.map_addresses(f))).collect(),
        }
    }

    /// Whether some stored branch contains Ω.
    fn contains_omega_below(&self) -> bool {
        self.branches.values().any(|p| p.contains_omega())
    }

    /// Ramifications at the root.
    pub fn directory(&self) -> BTreeSet<Ram> {
        self.branches.keys().cloned().collect()
    }
}

impl fmt::Display for Positive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Positive::Omega => write!(f, "omega"),
            Positive::Daimon => write!(f, "dai"),
            Positive::Proper { focus, ram, children } => {
                write!(f, "(+ {} {}", focus, ram_text(ram))?;
                for n in children.values() {
                    write!(f, " {}", n)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Negative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(- {}", self.focus)?;
        for (j, p) in &self.branches {
            write!(f, " ({} -> {})", ram_text(j), p)?;
        }
        write!(f, ")")
    }
}

impl Serialize for Positive {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Negative {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Either polarity, for code that handles both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Design {
    Positive(Positive),
    Negative(Negative),
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Design::Positive(p) => p.fmt(f),
            Design::Negative(n) => n.fmt(f),
        }
    }
}

impl Design {
    pub fn polarity(&self) -> Polarity {
        match self {
            Design::Positive(_) => Polarity::Positive,
            Design::Negative(_) => Polarity::Negative,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Design::Positive(p) => p.depth(),
            Design::Negative(n) => n.depth(),
        }
    }

    pub fn is_slice(&self) -> bool {
        match self {
            Design::Positive(p) => p.is_slice(),
            Design::Negative(n) => n.is_slice(),
        }
    }
}
