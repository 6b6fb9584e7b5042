//! Incarnation and directories.

use std::collections::BTreeSet;

use super::universe::{Behaviour, BehaviourError, Universe};
use crate::designs::named::{dai_neg, ram};
use crate::designs::{from_chronicles, sub_negatives, sub_positives, Base, Chronicle, Design, Polarity, Ram};
use crate::engine::token_run;

impl Universe {
    fn base(&self, polarity: Polarity) -> Base {
        match polarity {
            Polarity::Positive => Base::positive([self.xi.clone()]),
            Polarity::Negative => Base::negative(self.xi.clone(), []),
        }
    }

    /// `|d|_G`: the chronicles of `d` visited against some design of `G⊥`.
    pub fn incarnation(&self, d: &Design, g: &Behaviour) -> Result<Design, BehaviourError> {
        if !self.contains(g, d)? {
            return Err(BehaviourError::NotMember(d.to_string()));
        }
        let dual = self.dual(g)?;
        let mut visited: BTreeSet<Chronicle> = BTreeSet::new();
        for j in dual.members.ones() {
            let part = match d {
                Design::Positive(p) => {
                    let run = token_run(p, &self.negatives()[j]).expect("closed pair");
                    run.pullback.0.chronicles()
                }
                Design::Negative(n) => {
                    let run = token_run(&self.positives()[j], n).expect("closed pair");
                    run.pullback.1.chronicles()
                }
            };
            visited.extend(part);
        }
        Ok(from_chronicles(&visited, &self.base(g.polarity)).expect("a union of pull-backs of one design is a design"))
    }

    /// The least sub-design of `d` in `G`, found by enumeration.
    pub fn incarnation_by_lattice(&self, d: &Design, g: &Behaviour, cap: usize) -> Result<Option<Design>, BehaviourError> {
        let subs: Vec<Design> = match d {
            Design::Positive(p) => sub_positives(p, cap)?.into_iter().map(Design::Positive).collect(),
            Design::Negative(n) => sub_negatives(n, cap)?.into_iter().map(Design::Negative).collect(),
        };
        let mut inside = Vec::new();
        for s in subs {
            if self.contains(g, &s)? {
                let cs = s.chronicles();
                inside.push((s, cs));
            }
        }
        Ok(inside
            .iter()
            .find(|(_, c)| inside.iter().all(|(_, c2)| c.is_subset(c2)))
            .map(|(s, _)| s.clone()))
    }

    /// Whether `d ∈ G` is its own incarnation.
    pub fn is_incarnated(&self, d: &Design, g: &Behaviour) -> Result<bool, BehaviourError> {
        Ok(self.incarnation(d, g)? == *d)
    }

    /// `|G|`, as indices into the universe.
    pub fn incarnated(&self, g: &Behaviour) -> Result<Vec<usize>, BehaviourError> {
        let mut out = Vec::new();
        for i in g.members.ones() {
            if self.is_incarnated(&self.design(g.polarity, i), g)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `Dir(G)`: for positive `G` the `I` with `Ram_(ξ,I) ∈ G`, for negative
    /// `G` the initial ramifications of `|Dai⁻|_G`.
    pub fn directory(&self, g: &Behaviour) -> Result<BTreeSet<Ram>, BehaviourError> {
        match g.polarity {
            Polarity::Positive => {
                let mut out = BTreeSet::new();
                for i in &self.alphabet {
                    if self.contains(g, &Design::Positive(ram(self.xi.clone(), i.clone(), &self.alphabet)))? {
                        out.insert(i.clone());
                    }
                }
                Ok(out)
            }
            Polarity::Negative => {
                let dai = Design::Negative(dai_neg(self.xi.clone(), &self.alphabet));
                match self.incarnation(&dai, g)? {
                    Design::Negative(n) => Ok(n.directory()),
                    Design::Positive(_) => unreachable!(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviours::universe::DEFAULT_CAP;
    use crate::designs::named::{alphabet, skunk};
    use crate::designs::{Address, Negative, Positive};

    fn small() -> Universe {
        Universe::new(Address::root(), alphabet(&[&[1], &[2], &[1, 2]]), 2, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn incarnation_in_top_is_the_skunk() {
        let u = small();
        let top = u.top(Polarity::Negative);
        for n in u.negatives().iter().take(40) {
            let d = Design::Negative(n.clone());
            assert_eq!(u.incarnation(&d, &top).unwrap(), Design::Negative(skunk(Address::root())));
        }
        assert_eq!(u.directory(&top).unwrap(), BTreeSet::new());
    }

    #[test]
    fn daimon_incarnates_to_itself() {
        let u = small();
        let g = u.biorthogonal(&[Design::Positive(Positive::parse("(+ . {1})").unwrap())], Polarity::Positive).unwrap();
        assert_eq!(u.incarnation(&Design::Positive(Positive::Daimon), &g).unwrap(), Design::Positive(Positive::Daimon));
    }

    #[test]
    fn dual_of_top_positive_has_full_directory() {
        let u = small();
        let g = u.dual(&u.top(Polarity::Positive)).unwrap();
        assert_eq!(u.directory(&g).unwrap(), u.alphabet);
        let n = Negative::parse("(- . ({1} -> dai))").unwrap();
        assert!(u.incarnation(&Design::Negative(n), &g).is_err());
    }
}
