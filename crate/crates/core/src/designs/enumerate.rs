//! Exhaustive enumeration of designs over a ramification alphabet.

use std::collections::BTreeSet;

use super::address::{Address, Ram};
use super::design::{Negative, Positive};
use super::typing::infer_negative;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("more than {0} designs")]
pub struct CapExceeded(pub usize);

/// Designs whose chronicles have at most `depth` actions and whose
/// ramifications all come from `alphabet`.
pub struct Enumerator<'a> {
    pub alphabet: &'a BTreeSet<Ram>,
    pub cap: usize,
}

impl Enumerator<'_> {
    /// Positive designs (Ω included) typable on `⊢ Λ` for some `Λ ⊆ avail`.
    pub fn positives(&self, avail: &BTreeSet<Address>, depth: usize) -> Result<Vec<Positive>, CapExceeded> {
        let mut out = vec![Positive::Omega, Positive::Daimon];
        if depth == 0 {
            return Ok(out);
        }
        for xi in avail {
            let ctx: BTreeSet<Address> = avail.iter().filter(|a| *a != xi).cloned().collect();
            for ram in self.alphabet {
                let mut per_child: Vec<Vec<(Negative, BTreeSet<Address>)>> = Vec::new();
                for &i in ram {
                    let opts = self.negatives(&xi.child(i), &ctx, depth - 1)?;
                    per_child.push(
                        opts.into_iter().map(|n| {
                            let used = infer_negative(&n, &BTreeSet::new()).expect("typed by construction");
                            (n, used)
                        }).collect(),
                    );
                }
                let mut acc: Vec<(Vec<Negative>, BTreeSet<Address>)> = vec![(Vec::new(), BTreeSet::new())];
                for opts in &per_child {
                    let mut next = Vec::new();
                    for (ns, used) in &acc {
                        for (n, u) in opts {
                            if used.is_disjoint(u) {
                                let mut ns2 = ns.clone();
                                ns2.push(n.clone());
                                next.push((ns2, used.union(u).cloned().collect()));
                                if next.len() > self.cap {
                                    return Err(CapExceeded(self.cap));
                                }
                            }
                        }
                    }
                    acc = next;
                }
                for (ns, _) in acc {
                    out.push(Positive::proper(xi.clone(), ram.clone(), ns).expect("children follow the ramification"));
                }
                if out.len() > self.cap {
                    return Err(CapExceeded(self.cap));
                }
            }
        }
        Ok(out)
    }

    /// Negative designs on `ζ ⊢ Λ` for some `Λ ⊆ ctx`.
    pub fn negatives(&self, zeta: &Address, ctx: &BTreeSet<Address>, depth: usize) -> Result<Vec<Negative>, CapExceeded> {
        let mut acc = vec![Negative::skunk(zeta.clone())];
        if depth == 0 {
            return Ok(acc);
        }
        for j in self.alphabet {
            let mut avail = ctx.clone();
            avail.extend(zeta.children(j));
            let opts = self.positives(&avail, depth - 1)?;
            let mut next = Vec::with_capacity(acc.len() * opts.len());
            for n in &acc {
                for p in &opts {
                    let mut m = n.clone();
                    m.set_branch(j.clone(), p.clone());
                    next.push(m);
                }
                if next.len() > self.cap {
                    return Err(CapExceeded(self.cap));
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

/// Every design `⊆ p` (chronicle inclusion), `p` included.
pub fn sub_positives(p: &Positive, cap: usize) -> Result<Vec<Positive>, CapExceeded> {
    let mut out = vec![Positive::Omega];
    match p {
        Positive::Omega => {}
        Positive::Daimon => out.push(Positive::Daimon),
        Positive::Proper { focus, ram, children } => {
            let mut acc: Vec<Vec<Negative>> = vec![Vec::new()];
            for c in children.values() {
                let opts = sub_negatives(c, cap)?;
                let mut next = Vec::with_capacity(acc.len() * opts.len());
                for ns in &acc {
                    for n in &opts {
                        let mut ns2 = ns.clone();
                        ns2.push(n.clone());
                        next.push(ns2);
                    }
                }
                if next.len() > cap {
                    return Err(CapExceeded(cap));
                }
                acc = next;
            }
            for ns in acc {
                out.push(Positive::proper(focus.clone(), ram.clone(), ns).expect("same shape"));
            }
        }
    }
    if out.len() > cap {
        return Err(CapExceeded(cap));
    }
    Ok(out)
}

/// Every negative design `⊆ n`.
pub fn sub_negatives(n: &Negative, cap: usize) -> Result<Vec<Negative>, CapExceeded> {
    let mut acc = vec![Negative::skunk(n.focus.clone())];
    for (j, p) in &n.branches {
        let opts = sub_positives(p, cap)?;
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for m in &acc {
            for q in &opts {
                let mut m2 = m.clone();
                m2.set_branch(j.clone(), q.clone());
                next.push(m2);
            }
        }
        if next.len() > cap {
            return Err(CapExceeded(cap));
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::named::alphabet;
    use crate::designs::{check_design, Base, Design};

    fn counts(r: &BTreeSet<Ram>, d: usize) -> (usize, usize) {
        let e = Enumerator { alphabet: r, cap: 1_000_000 };
        let root: BTreeSet<Address> = [Address::root()].into();
        (e.positives(&root, d).unwrap().len(), e.negatives(&Address::root(), &BTreeSet::new(), d).unwrap().len())
    }

    #[test]
    fn hand_counts() {
        // Ω, ✠ and (+, ε, ∅)
        assert_eq!(counts(&alphabet(&[&[]]), 1).0, 3);
        let r = alphabet(&[&[1], &[2]]);
        assert_eq!(counts(&r, 1), (4, 4));
        // a child negative answers two ramifications with Ω, ✠ or one of two actions
        assert_eq!(counts(&r, 3), (34, 100));
    }

    #[test]
    fn monotone_in_depth_and_typed() {
        let r = alphabet(&[&[1], &[1, 2]]);
        let e = Enumerator { alphabet: &r, cap: 1_000_000 };
        let avail: BTreeSet<Address> = [Address::from_slice(&[1]), Address::from_slice(&[2])].into();
        let mut prev: BTreeSet<Positive> = BTreeSet::new();
        for d in 0..4 {
            let now: BTreeSet<Positive> = e.positives(&avail, d).unwrap().into_iter().collect();
            assert!(prev.is_subset(&now));
            for p in &now {
                let b = Base::positive(avail.iter().cloned());
                assert!(check_design(&Design::Positive(p.clone()), &b), "{}", p);
                assert!(p.depth() <= d);
            }
            prev = now;
        }
    }

    #[test]
    fn sub_designs_are_below() {
        let p = Positive::parse("(+ . {1 2} (- 1 ({1} -> dai) ({2} -> (+ 1.2 {}))) (- 2 ({} -> dai)))").unwrap();
        let subs = sub_positives(&p, 1000).unwrap();
        // Ω, or the root with each stored branch kept or cut to Ω
        assert_eq!(subs.len(), 1 + 2 * 2 * 2);
        let cs = p.chronicles();
        assert!(subs.iter().all(|s| s.chronicles().is_subset(&cs)));
    }

    #[test]
    fn cap_is_enforced() {
        let r = alphabet(&[&[1], &[2], &[3]]);
        let e = Enumerator { alphabet: &r, cap: 1000 };
        assert!(e.negatives(&Address::root(), &BTreeSet::new(), 3).is_err());
    }
}
