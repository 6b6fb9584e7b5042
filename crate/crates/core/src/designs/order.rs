//! The observational, left, right and stable orders, and decomposition.

use std::collections::BTreeSet;

use serde::Serialize;

use super::chronicle::Chronicle;
use super::design::{Action, Design, Negative, Positive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    /// `⊑`: both axioms.
    Obs,
    /// `≤ᴸ`: no `Ω ⊑ φ` axiom.
    Left,
    /// `≤ᴿ`: no `φ ⊑ ✠` axiom.
    Right,
    /// Chronicle inclusion.
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("designs are not on a common base")]
    BaseMismatch,
    #[error("first design is not below the second")]
    NotBelow,
}

fn pos_le(a: &Positive, b: &Positive, omega_axiom: bool, dai_axiom: bool) -> bool {
    if a == b || (omega_axiom && a.is_omega()) || (dai_axiom && b.is_daimon()) {
        return true;
    }
    match (a, b) {
        (
            Positive::Proper { focus: f1, ram: r1, children: c1 },
            Positive::Proper { focus: f2, ram: r2, children: c2 },
        ) => f1 == f2 && r1 == r2 && c1.iter().all(|(i, n)| neg_le(n, &c2[i], omega_axiom, dai_axiom)),
        _ => false,
    }
}

fn neg_le(a: &Negative, b: &Negative, omega_axiom: bool, dai_axiom: bool) -> bool {
    a.focus == b.focus
        && a.branches.keys().chain(b.branches.keys()).all(|j| pos_le(a.branch(j), b.branch(j), omega_axiom, dai_axiom))
}

fn axioms(order: Order) -> (bool, bool) {
    match order {
        Order::Obs => (true, true),
        Order::Left => (false, true),
        Order::Right | Order::Stable => (true, false),
    }
}

pub fn compare_positive(a: &Positive, b: &Positive, order: Order) -> bool {
    if order == Order::Stable {
        return a.chronicles().is_subset(&b.chronicles());
    }
    let (o, d) = axioms(order);
    pos_le(a, b, o, d)
}

pub fn compare_negative(a: &Negative, b: &Negative, order: Order) -> bool {
    if order == Order::Stable {
        return a.focus == b.focus && a.chronicles().is_subset(&b.chronicles());
    }
    let (o, d) = axioms(order);
    neg_le(a, b, o, d)
}

pub fn compare(a: &Design, b: &Design, order: Order) -> Result<bool, OrderError> {
    match (a, b) {
        (Design::Positive(x), Design::Positive(y)) => Ok(compare_positive(x, y, order)),
        (Design::Negative(x), Design::Negative(y)) if x.focus == y.focus => Ok(compare_negative(x, y, order)),
        _ => Err(OrderError::BaseMismatch),
    }
}

/// `≤`, the intersection of `≤ᴸ` and `≤ᴿ`.
pub fn le_both(a: &Positive, b: &Positive) -> bool {
    compare_positive(a, b, Order::Left) && compare_positive(a, b, Order::Right)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Next {
    Omega,
    Daimon,
    Act(Action),
}

fn next_at(set: &BTreeSet<Chronicle>, q: &[Action]) -> Next {
    let mut out = Next::Omega;
    for c in set {
        if c.actions.len() == q.len() && c.daimon && c.actions == q {
            return Next::Daimon;
        }
        if c.actions.len() > q.len() && c.actions.starts_with(q) {
            out = Next::Act(c.actions[q.len()].clone());
        }
    }
    out
}

/// `⊑` decided on chronicle sets: wherever the two designs diverge after a
/// negative action (or at the root), the left one is Ω or the right one is ✠.
pub fn obs_by_chronicles(a: &BTreeSet<Chronicle>, b: &BTreeSet<Chronicle>, negative: bool) -> bool {
    let mut positions: BTreeSet<Vec<Action>> = BTreeSet::new();
    if !negative {
        positions.insert(Vec::new());
    }
    for c in a.iter().chain(b) {
        for (k, act) in c.actions.iter().enumerate() {
            if act.is_positive() {
                continue;
            }
            let parent = Chronicle::new(c.actions[..k].to_vec(), false);
            if k == 0 || (a.contains(&parent) && b.contains(&parent)) {
                positions.insert(c.actions[..=k].to_vec());
            }
        }
    }
    positions.iter().all(|q| {
        let (x, y) = (next_at(a, q), next_at(b, q));
        x == y || x == Next::Omega || y == Next::Daimon
    })
}

/// Bounds `(φ_min, φ_max)` with `a ≤ᴸ φ ≤ᴿ b` iff `φ_min ≤ φ ≤ φ_max`.
pub fn decompose(a: &Positive, b: &Positive) -> Result<(Positive, Positive), OrderError> {
    if !compare_positive(a, b, Order::Obs) {
        return Err(OrderError::NotBelow);
    }
    Ok(decompose_pos(a, b))
}

fn decompose_pos(a: &Positive, b: &Positive) -> (Positive, Positive) {
    match (a, b) {
        (Positive::Omega, Positive::Daimon) => (Positive::Omega, Positive::Daimon),
        (_, Positive::Daimon) => (Positive::Daimon, Positive::Daimon),
        (Positive::Omega, _) => (Positive::Omega, Positive::Omega),
        (Positive::Proper { focus, ram, children: c1 }, Positive::Proper { children: c2, .. }) => {
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for (i, n) in c1 {
                let (l, h) = decompose_neg(n, &c2[i]);
                lo.push(l);
                hi.push(h);
            }
            let lo = Positive::proper(focus.clone(), ram.clone(), lo).expect("same shape");
            let hi = Positive::proper(focus.clone(), ram.clone(), hi).expect("same shape");
            (lo, hi)
        }
        _ => unreachable!("decompose requires a ⊑ b"),
    }
}

fn decompose_neg(a: &Negative, b: &Negative) -> (Negative, Negative) {
    let keys: BTreeSet<_> = a.branches.keys().chain(b.branches.keys()).cloned().collect();
    let mut lo = Negative::skunk(a.focus.clone());
    let mut hi = Negative::skunk(a.focus.clone());
    for j in keys {
        let (l, h) = decompose_pos(a.branch(&j), b.branch(&j));
        lo.set_branch(j.clone(), l);
        hi.set_branch(j, h);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::named;
    use crate::designs::Address;

    fn pos(s: &str) -> Positive {
        Positive::parse(s).unwrap()
    }

    #[test]
    fn axioms_hold() {
        let p = pos("(+ . {1} (- 1 ({2} -> dai)))");
        assert!(compare_positive(&Positive::Omega, &p, Order::Obs));
        assert!(compare_positive(&p, &Positive::Daimon, Order::Obs));
        assert!(!compare_positive(&Positive::Omega, &p, Order::Left));
        assert!(!compare_positive(&p, &Positive::Daimon, Order::Right));
        assert!(!compare_positive(&Positive::Daimon, &Positive::Omega, Order::Obs));
    }

    #[test]
    fn skunk_below_dai_minus() {
        let r = named::alphabet(&[&[1], &[2]]);
        let s = Negative::skunk(Address::root());
        let d = named::dai_neg(Address::root(), &r);
        assert!(compare_negative(&s, &d, Order::Obs));
        // Ω ≤ᴸ ✠ and Ω ≤ᴿ ✠ both hold branchwise
        assert!(compare_negative(&s, &d, Order::Left));
        assert!(compare_negative(&s, &d, Order::Right));
        assert!(!compare_negative(&d, &s, Order::Obs));
        let sp = Positive::with_children(Address::root(), [1].into(), Negative::skunk);
        let dp = Positive::with_children(Address::root(), [1].into(), |a| named::dai_neg(a, &r));
        let (lo, hi) = decompose(&sp, &dp).unwrap();
        assert_eq!(lo, sp);
        assert_eq!(hi, dp);
    }

    #[test]
    fn omega_dai_bracket() {
        assert_eq!(decompose(&Positive::Omega, &Positive::Daimon).unwrap(), (Positive::Omega, Positive::Daimon));
        assert!(decompose(&Positive::Daimon, &Positive::Omega).is_err());
        let p = pos("(+ . {})");
        assert_eq!(decompose(&p, &p).unwrap(), (p.clone(), p));
    }

    #[test]
    fn chronicle_characterization_examples() {
        let a = pos("(+ . {1} (- 1 ({2} -> (+ 1.2 {}))))");
        let b = pos("(+ . {1} (- 1 ({2} -> dai) ({3} -> dai)))");
        assert!(compare_positive(&a, &b, Order::Obs));
        assert!(obs_by_chronicles(&a.chronicles(), &b.chronicles(), false));
        assert!(!obs_by_chronicles(&b.chronicles(), &a.chronicles(), false));
    }
}
