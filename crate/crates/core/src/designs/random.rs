//! Random typed designs, and random ⊑-increases of a design.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::address::{Address, Ram};
use super::design::{Negative, Positive};
use super::typing::infer_negative;

#[derive(Debug, Clone)]
pub struct DesignGen {
    pub alphabet: Vec<Ram>,
    /// Longest chronicle, in actions.
    pub depth: usize,
    pub p_omega: f64,
    pub p_daimon: f64,
    /// Chance that a negative answers a given ramification.
    pub p_branch: f64,
}

impl DesignGen {
    pub fn new(alphabet: &BTreeSet<Ram>, depth: usize) -> DesignGen {
        DesignGen { alphabet: alphabet.iter().cloned().collect(), depth, p_omega: 0.1, p_daimon: 0.2, p_branch: 0.6 }
    }

    /// A positive design typable on `⊢ Λ` with `Λ ⊆ avail`.
    pub fn positive<R: Rng>(&self, rng: &mut R, avail: &BTreeSet<Address>) -> Positive {
        self.pos(rng, avail, self.depth)
    }

    /// A negative design typable on `ζ ⊢ Λ` with `Λ ⊆ ctx`.
    pub fn negative<R: Rng>(&self, rng: &mut R, zeta: &Address, ctx: &BTreeSet<Address>) -> Negative {
        self.neg(rng, zeta, ctx, self.depth)
    }

    fn pos<R: Rng>(&self, rng: &mut R, avail: &BTreeSet<Address>, depth: usize) -> Positive {
        let roll: f64 = rng.gen();
        if depth == 0 || avail.is_empty() || self.alphabet.is_empty() || roll < self.p_omega + self.p_daimon {
            return if rng.gen_bool(self.p_omega / (self.p_omega + self.p_daimon).max(f64::EPSILON)) {
                Positive::Omega
            } else {
                Positive::Daimon
            };
        }
        let addrs: Vec<&Address> = avail.iter().collect();
        let xi = (*addrs.choose(rng).expect("nonempty")).clone();
        let ram = self.alphabet.choose(rng).expect("nonempty").clone();
        let is: Vec<u32> = ram.iter().copied().collect();
        // each context address goes to one child or none
        let mut ctxs = vec![BTreeSet::new(); is.len()];
        for a in avail.iter().filter(|a| **a != xi) {
            if !is.is_empty() && rng.gen_bool(0.7) {
                ctxs[rng.gen_range(0..is.len())].insert(a.clone());
            }
        }
        let children = is.iter().zip(ctxs).map(|(&i, c)| self.neg(rng, &xi.child(i), &c, depth - 1)).collect();
        Positive::proper(xi, ram, children).expect("children follow the ramification")
    }

    fn neg<R: Rng>(&self, rng: &mut R, zeta: &Address, ctx: &BTreeSet<Address>, depth: usize) -> Negative {
        let mut n = Negative::skunk(zeta.clone());
        if depth == 0 {
            return n;
        }
        for j in &self.alphabet {
            if rng.gen_bool(self.p_branch) {
                let mut avail = ctx.clone();
                avail.extend(zeta.children(j));
                n.set_branch(j.clone(), self.pos(rng, &avail, depth - 1));
            }
        }
        n
    }

    /// A design above `p` for the observational order: some Ω become
    /// designs, some subtrees become ✠.
    pub fn increase<R: Rng>(&self, rng: &mut R, p: &Positive, avail: &BTreeSet<Address>) -> Positive {
        match p {
            Positive::Daimon => Positive::Daimon,
            Positive::Omega => {
                if rng.gen_bool(0.5) {
                    Positive::Omega
                } else {
                    self.pos(rng, avail, self.depth.min(2))
                }
            }
            _ if rng.gen_bool(0.1) => Positive::Daimon,
            Positive::Proper { focus, ram, children } => {
                let kids = children
                    .values()
                    .map(|c| {
                        let ctx = infer_negative(c, &BTreeSet::new()).unwrap_or_default();
                        self.increase_neg(rng, c, &ctx)
                    })
                    .collect();
                Positive::proper(focus.clone(), ram.clone(), kids).expect("same shape")
            }
        }
    }

    /// A negative design above `n`, new material drawing on `ctx`.
    pub fn increase_neg<R: Rng>(&self, rng: &mut R, n: &Negative, ctx: &BTreeSet<Address>) -> Negative {
        let mut out = Negative::skunk(n.focus.clone());
        for j in self.alphabet.iter().chain(n.branches.keys()).collect::<BTreeSet<_>>() {
            let mut avail = ctx.clone();
            avail.extend(n.focus.children(j));
            out.set_branch(j.clone(), self.increase(rng, n.branch(j), &avail));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::named::alphabet;
    use crate::designs::{check_design, compare_positive, Base, Design, Order};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_designs_are_typed_and_increases_are_above() {
        let g = DesignGen::new(&alphabet(&[&[1], &[1, 2], &[]]), 4);
        let base: BTreeSet<Address> = [Address::root()].into();
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = g.positive(&mut rng, &base);
            assert!(check_design(&Design::Positive(p.clone()), &Base::positive(base.iter().cloned())), "{p}");
            let q = g.increase(&mut rng, &p, &base);
            assert!(compare_positive(&p, &q, Order::Obs), "{p} vs {q}");
            let n = g.negative(&mut rng, &Address::root(), &BTreeSet::new());
            assert!(check_design(&Design::Negative(n.clone()), &Base::negative(Address::root(), [])), "{n}");
        }
    }
}
