//! Bases, base inference and type checking.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::address::{well_formed, Address};
use super::design::{Design, Negative, Positive};
use super::text::addresses_text;

/// `ξ ⊢ Λ` (negative base) or `⊢ Λ` (positive base).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base {
    pub left: Option<Address>,
    pub right: BTreeSet<Address>,
}

impl Base {
    pub fn positive(right: impl IntoIterator<Item = Address>) -> Base {
        Base { left: None, right: right.into_iter().collect() }
    }

    pub fn negative(left: Address, right: impl IntoIterator<Item = Address>) -> Base {
        Base { left: Some(left), right: right.into_iter().collect() }
    }

    pub fn addresses(&self) -> Vec<&Address> {
        self.left.iter().chain(self.right.iter()).collect()
    }

    pub fn is_well_formed(&self) -> bool {
        well_formed(self.addresses())
    }

    /// The parity convention on base addresses, reported but not enforced.
    pub fn parity_warning(&self) -> Option<String> {
        let parities: BTreeSet<usize> = self.right.iter().map(|a| a.len() % 2).collect();
        if parities.len() > 1 {
            return Some(format!("right side of {} mixes address parities", self));
        }
        if let (Some(l), Some(&p)) = (&self.left, parities.iter().next()) {
            if l.len() % 2 == p {
                return Some(format!("left address of {} has the parity of its right side", self));
            }
        }
        None
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.left {
            write!(f, "{} ", l)?;
        }
        write!(f, "|-")?;
        if !self.right.is_empty() {
            write!(f, " {}", addresses_text(&self.right))?;
        }
        Ok(())
    }
}

impl Serialize for Base {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TypeError {
    /// Two different children of `(+, focus, I)` use the same context address.
    #[error("affinity: {shared} is used below both {focus}{i1} and {focus}{i2}")]
    Affinity { focus: String, i1: String, i2: String, shared: String },
    /// The base computed at `focus` is not well formed.
    #[error("ill-formed base at {focus}: {base}")]
    IllFormed { focus: String, base: String },
    /// The base given as input is not well formed.
    #[error("input base {0} is not well formed")]
    Input(String),
}

fn child_sep(a: &Address) -> &'static str {
    if a.is_empty() {
        ""
    } else {
        "."
    }
}

/// The least `Λ ⊇ Γ` with `φ : (⊢ Λ)`.
pub fn infer_base(phi: &Positive, gamma: &BTreeSet<Address>) -> Result<BTreeSet<Address>, TypeError> {
    if !well_formed(gamma) {
        return Err(TypeError::Input(Base::positive(gamma.iter().cloned()).to_string()));
    }
    infer(phi, gamma)
}

fn infer(phi: &Positive, gamma: &BTreeSet<Address>) -> Result<BTreeSet<Address>, TypeError> {
    let (focus, children) = match phi {
        Positive::Omega | Positive::Daimon => return Ok(gamma.clone()),
        Positive::Proper { focus, children, .. } => (focus, children),
    };
    let mut per_child: Vec<(u32, BTreeSet<Address>)> = Vec::new();
    for (&i, psi) in children {
        per_child.push((i, infer_neg(psi)?));
    }
    for (k, (i1, l1)) in per_child.iter().enumerate() {
        for (i2, l2) in &per_child[k + 1..] {
            if let Some(shared) = l1.intersection(l2).next() {
                let sep = child_sep(focus);
                return Err(TypeError::Affinity {
                    focus: focus.to_string(),
                    i1: format!("{}{}", sep, i1),
                    i2: format!("{}{}", sep, i2),
                    shared: shared.to_string(),
                });
            }
        }
    }
    let mut rest: BTreeSet<Address> = gamma.iter().filter(|a| *a != focus).cloned().collect();
    let mut clash = false;
    for (_, l) in per_child {
        clash |= l.contains(focus);
        rest.extend(l);
    }
    let mut all = rest.clone();
    all.insert(focus.clone());
    if clash || !well_formed(&all) {
        let mut shown: Vec<String> = vec![focus.to_string()];
        shown.extend(rest.iter().map(|a| a.to_string()));
        return Err(TypeError::IllFormed { focus: focus.to_string(), base: format!("|- {}", shown.join(" ")) });
    }
    Ok(all)
}

/// The least `Λ` with `ψ : (ζ ⊢ Λ)`, ζ being the focus of ψ.
fn infer_neg(psi: &Negative) -> Result<BTreeSet<Address>, TypeError> {
    let zeta = &psi.focus;
    let mut lambda = BTreeSet::new();
    for (j, phi) in &psi.branches {
        let opened = zeta.children(j);
        let got = infer(phi, &opened)?;
        lambda.extend(got.into_iter().filter(|a| !opened.contains(a)));
    }
    if lambda.iter().any(|a| !a.disjoint(zeta)) || !well_formed(&lambda) {
        return Err(TypeError::IllFormed { focus: zeta.to_string(), base: Base::negative(zeta.clone(), lambda).to_string() });
    }
    Ok(lambda)
}

/// The least `Λ ⊇ Γ` with `ψ : (ζ ⊢ Λ)`.
pub fn infer_negative(psi: &Negative, gamma: &BTreeSet<Address>) -> Result<BTreeSet<Address>, TypeError> {
    let mut l = infer_neg(psi)?;
    l.extend(gamma.iter().cloned());
    let b = Base::negative(psi.focus.clone(), l.clone());
    if !b.is_well_formed() {
        return Err(TypeError::Input(b.to_string()));
    }
    Ok(l)
}

/// The least base of a design.
pub fn minimal_base(d: &Design) -> Result<Base, TypeError> {
    match d {
        Design::Positive(p) => Ok(Base::positive(infer_base(p, &BTreeSet::new())?)),
        Design::Negative(n) => Ok(Base::negative(n.focus.clone(), infer_negative(n, &BTreeSet::new())?)),
    }
}

/// Whether the design is typable on exactly this base.
pub fn check_design(d: &Design, b: &Base) -> bool {
    if !b.is_well_formed() {
        return false;
    }
    match (d, &b.left) {
        (Design::Positive(p), None) => infer_base(p, &b.right).map(|l| l == b.right).unwrap_or(false),
        (Design::Negative(n), Some(z)) => {
            *z == n.focus && infer_negative(n, &b.right).map(|l| l == b.right).unwrap_or(false)
        }
        _ => false,
    }
}
