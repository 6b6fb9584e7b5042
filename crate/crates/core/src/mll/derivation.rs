//! Sequent derivations with generalized axioms, and the structures they build.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::formula::{Formula, Occ};
use super::structure::{LeafRef, ParaproofStructure, Tree};

/// A derivation whose rules name the tree positions they build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Derivation {
    /// Generalized axiom (daimon) on the listed leaves.
    Axiom { conclusions: Vec<(LeafRef, Formula)> },
    Par { tree: usize, occ: Occ, premise: Box<Derivation> },
    Tensor { tree: usize, occ: Occ, left: Box<Derivation>, right: Box<Derivation> },
    Cut { trees: (usize, usize), left: Box<Derivation>, right: Box<Derivation> },
    Mix { left: Box<Derivation>, right: Box<Derivation> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("position {0} is not a conclusion of the premise")]
    MissingPremise(String),
    #[error("position {0} occurs twice")]
    Duplicate(String),
    #[error("cut between non-dual formulas {0} and {1}")]
    NonDualCut(String, String),
    #[error("axiom with no conclusions")]
    EmptyAxiom,
    #[error("end position {0} is not a tree root")]
    NotRoot(String),
    #[error("tree indices are not contiguous")]
    Gaps,
    #[error("index {0} out of range")]
    Index(usize),
}

type Entry = (usize, Occ, Formula);

fn take(seq: &mut Vec<Entry>, tree: usize, occ: &Occ) -> Result<Formula, DerivationError> {
    let k = seq
        .iter()
        .position(|(t, u, _)| *t == tree && u == occ)
        .ok_or_else(|| DerivationError::MissingPremise(format!("{}:{}", tree, occ)))?;
    Ok(seq.remove(k).2)
}

struct Acc {
    leaves: BTreeMap<usize, BTreeSet<Occ>>,
    classes: Vec<BTreeSet<LeafRef>>,
    cuts: Vec<(usize, usize)>,
}

impl Derivation {
    fn sequent(&self, acc: &mut Acc) -> Result<Vec<Entry>, DerivationError> {
        match self {
            Derivation::Axiom { conclusions } => {
                if conclusions.is_empty() {
                    return Err(DerivationError::EmptyAxiom);
                }
                let mut class = BTreeSet::new();
                for (l, _) in conclusions {
                    if !acc.leaves.entry(l.tree).or_default().insert(l.occ.clone()) || !class.insert(l.clone()) {
                        return Err(DerivationError::Duplicate(l.to_string()));
                    }
                }
                acc.classes.push(class);
                Ok(conclusions.iter().map(|(l, f)| (l.tree, l.occ.clone(), f.clone())).collect())
            }
            Derivation::Par { tree, occ, premise } => {
                let mut seq = premise.sequent(acc)?;
                let a = take(&mut seq, *tree, &occ.child(1))?;
                let b = take(&mut seq, *tree, &occ.child(2))?;
                seq.push((*tree, occ.clone(), Formula::par(a, b)));
                Ok(seq)
            }
            Derivation::Tensor { tree, occ, left, right } => {
                let mut l = left.sequent(acc)?;
                let mut r = right.sequent(acc)?;
                let a = take(&mut l, *tree, &occ.child(1))?;
                let b = take(&mut r, *tree, &occ.child(2))?;
                l.extend(r);
                l.push((*tree, occ.clone(), Formula::tensor(a, b)));
                Ok(l)
            }
            Derivation::Cut { trees: (i, j), left, right } => {
                let mut l = left.sequent(acc)?;
                let mut r = right.sequent(acc)?;
                let a = take(&mut l, *i, &Occ::root())?;
                let b = take(&mut r, *j, &Occ::root())?;
                if a.dual() != b {
                    return Err(DerivationError::NonDualCut(a.to_string(), b.to_string()));
                }
                acc.cuts.push((*i, *j));
                acc.leaves.entry(*i).or_default();
                acc.leaves.entry(*j).or_default();
                l.extend(r);
                Ok(l)
            }
            Derivation::Mix { left, right } => {
                let mut l = left.sequent(acc)?;
                l.extend(right.sequent(acc)?);
                Ok(l)
            }
        }
    }

    /// The conclusions of the derivation, as (tree, occurrence, formula).
    pub fn end_sequent(&self) -> Result<Vec<Entry>, DerivationError> {
        let mut acc = Acc { leaves: BTreeMap::new(), classes: Vec::new(), cuts: Vec::new() };
        self.sequent(&mut acc)
    }

    pub fn build(&self) -> Result<ParaproofStructure, DerivationError> {
        let mut acc = Acc { leaves: BTreeMap::new(), classes: Vec::new(), cuts: Vec::new() };
        let end = self.sequent(&mut acc)?;
        let mut formulas: BTreeMap<usize, Formula> = BTreeMap::new();
        for (t, u, f) in end {
            if !u.is_root() {
                return Err(DerivationError::NotRoot(format!("{}:{}", t, u)));
            }
            formulas.insert(t, f);
        }
        // Cut formulas are recovered from the cut premises.
        let mut cut_formulas = BTreeMap::new();
        self.collect_cut_formulas(&mut cut_formulas)?;
        formulas.extend(cut_formulas);
        let n = formulas.len();
        if formulas.keys().copied().ne(0..n) {
            return Err(DerivationError::Gaps);
        }
        let trees = formulas
            .into_iter()
            .map(|(t, f)| Tree::new(f, acc.leaves.get(&t).cloned().unwrap_or_default()))
            .collect();
        Ok(ParaproofStructure::new(trees, acc.classes, acc.cuts))
    }

    fn collect_cut_formulas(&self, out: &mut BTreeMap<usize, Formula>) -> Result<(), DerivationError> {
        match self {
            Derivation::Axiom { .. } => Ok(()),
            Derivation::Par { premise, .. } => premise.collect_cut_formulas(out),
            Derivation::Tensor { left, right, .. } | Derivation::Mix { left, right } => {
                left.collect_cut_formulas(out)?;
                right.collect_cut_formulas(out)
            }
            Derivation::Cut { trees: (i, j), left, right } => {
                let l = left.end_sequent()?;
                let r = right.end_sequent()?;
                let find = |s: &Vec<Entry>, t: usize| {
                    s.iter()
                        .find(|(x, u, _)| *x == t && u.is_root())
                        .map(|e| e.2.clone())
                        .ok_or(DerivationError::MissingPremise(format!("{}:.", t)))
                };
                out.insert(*i, find(&l, *i)?);
                out.insert(*j, find(&r, *j)?);
                left.collect_cut_formulas(out)?;
                right.collect_cut_formulas(out)
            }
        }
    }

    pub fn rule_count(&self) -> usize {
        match self {
            Derivation::Axiom { .. } => 1,
            Derivation::Par { premise, .. } => 1 + premise.rule_count(),
            Derivation::Tensor { left, right, .. } | Derivation::Cut { left, right, .. } | Derivation::Mix { left, right } => {
                1 + left.rule_count() + right.rule_count()
            }
        }
    }

    pub fn axioms(&self) -> Vec<&Vec<(LeafRef, Formula)>> {
        let mut out = Vec::new();
        self.visit_axioms(&mut out);
        out
    }

    fn visit_axioms<'a>(&'a self, out: &mut Vec<&'a Vec<(LeafRef, Formula)>>) {
        match self {
            Derivation::Axiom { conclusions } => out.push(conclusions),
            Derivation::Par { premise, .. } => premise.visit_axioms(out),
            Derivation::Tensor { left, right, .. } | Derivation::Cut { left, right, .. } | Derivation::Mix { left, right } => {
                left.visit_axioms(out);
                right.visit_axioms(out);
            }
        }
    }

    /// True when every axiom is a pair of dual formulas.
    pub fn has_only_proper_axioms(&self) -> bool {
        self.axioms().iter().all(|c| c.len() == 2 && c[0].1.dual() == c[1].1)
    }

    pub fn uses_mix(&self) -> bool {
        match self {
            Derivation::Axiom { .. } => false,
            Derivation::Mix { .. } => true,
            Derivation::Par { premise, .. } => premise.uses_mix(),
            Derivation::Tensor { left, right, .. } | Derivation::Cut { left, right, .. } => left.uses_mix() || right.uses_mix(),
        }
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            Derivation::Axiom { conclusions } => {
                let parts: Vec<String> = conclusions.iter().map(|(l, g)| format!("{} {}", l, g)).collect();
                writeln!(f, "{}axiom {}", pad, parts.join(", "))
            }
            Derivation::Par { tree, occ, premise } => {
                writeln!(f, "{}par {}:{}", pad, tree, occ)?;
                premise.write_indented(f, depth + 1)
            }
            Derivation::Tensor { tree, occ, left, right } => {
                writeln!(f, "{}tensor {}:{}", pad, tree, occ)?;
                left.write_indented(f, depth + 1)?;
                right.write_indented(f, depth + 1)
            }
            Derivation::Cut { trees: (i, j), left, right } => {
                writeln!(f, "{}cut {},{}", pad, i, j)?;
                left.write_indented(f, depth + 1)?;
                right.write_indented(f, depth + 1)
            }
            Derivation::Mix { left, right } => {
                writeln!(f, "{}mix", pad)?;
                left.write_indented(f, depth + 1)?;
                right.write_indented(f, depth + 1)
            }
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// A derivation over positional sequents; rules refer to indices in premise sequents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawDerivation {
    Axiom(Vec<Formula>),
    /// Joins premise conclusions `i` and `j` into `A_i % A_j`, appended last.
    Par { i: usize, j: usize, premise: Box<RawDerivation> },
    /// Appends `A_i * B_j` after the remaining left and right conclusions.
    Tensor { i: usize, j: usize, left: Box<RawDerivation>, right: Box<RawDerivation> },
    Cut { i: usize, j: usize, left: Box<RawDerivation>, right: Box<RawDerivation> },
    Mix { left: Box<RawDerivation>, right: Box<RawDerivation> },
}

fn without(v: &[Formula], i: usize) -> Vec<Formula> {
    v.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, f)| f.clone()).collect()
}

impl RawDerivation {
    pub fn sequent(&self) -> Result<Vec<Formula>, DerivationError> {
        match self {
            RawDerivation::Axiom(g) => {
                if g.is_empty() {
                    Err(DerivationError::EmptyAxiom)
                } else {
                    Ok(g.clone())
                }
            }
            RawDerivation::Par { i, j, premise } => {
                let s = premise.sequent()?;
                if i == j || *i >= s.len() || *j >= s.len() {
                    return Err(DerivationError::Index(*i.max(j)));
                }
                let mut out: Vec<Formula> = s.iter().enumerate().filter(|&(k, _)| k != *i && k != *j).map(|(_, f)| f.clone()).collect();
                out.push(Formula::par(s[*i].clone(), s[*j].clone()));
                Ok(out)
            }
            RawDerivation::Tensor { i, j, left, right } | RawDerivation::Cut { i, j, left, right } => {
                let l = left.sequent()?;
                let r = right.sequent()?;
                if *i >= l.len() {
                    return Err(DerivationError::Index(*i));
                }
                if *j >= r.len() {
                    return Err(DerivationError::Index(*j));
                }
                let mut out = without(&l, *i);
                out.extend(without(&r, *j));
                if matches!(self, RawDerivation::Tensor { .. }) {
                    out.push(Formula::tensor(l[*i].clone(), r[*j].clone()));
                } else if l[*i].dual() != r[*j] {
                    return Err(DerivationError::NonDualCut(l[*i].to_string(), r[*j].to_string()));
                }
                Ok(out)
            }
            RawDerivation::Mix { left, right } => {
                let mut l = left.sequent()?;
                l.extend(right.sequent()?);
                Ok(l)
            }
        }
    }

    /// Names every position: end conclusions get trees `0..n`, cut formulas follow in preorder.
    pub fn label(&self) -> Result<Derivation, DerivationError> {
        let n = self.sequent()?.len();
        let positions: Vec<(usize, Occ)> = (0..n).map(|t| (t, Occ::root())).collect();
        let mut next = n;
        self.label_at(&positions, &mut next)
    }

    fn label_at(&self, pos: &[(usize, Occ)], next: &mut usize) -> Result<Derivation, DerivationError> {
        match self {
            RawDerivation::Axiom(g) => Ok(Derivation::Axiom {
                conclusions: pos.iter().zip(g).map(|((t, u), f)| (LeafRef::new(*t, u.clone()), f.clone())).collect(),
            }),
            RawDerivation::Par { i, j, premise } => {
                let m = premise.sequent()?.len();
                let (t, u) = pos.last().cloned().ok_or(DerivationError::Index(0))?;
                let mut rest = pos[..pos.len() - 1].iter();
                let inner: Vec<(usize, Occ)> = (0..m)
                    .map(|k| {
                        if k == *i {
                            (t, u.child(1))
                        } else if k == *j {
                            (t, u.child(2))
                        } else {
                            rest.next().cloned().expect("position count")
                        }
                    })
                    .collect();
                Ok(Derivation::Par { tree: t, occ: u, premise: Box::new(premise.label_at(&inner, next)?) })
            }
            RawDerivation::Tensor { i, j, left, right } => {
                let (t, u) = pos.last().cloned().ok_or(DerivationError::Index(0))?;
                let (lp, rp) = split_positions(&pos[..pos.len() - 1], left, right, *i, *j, (t, u.child(1)), (t, u.child(2)))?;
                Ok(Derivation::Tensor {
                    tree: t,
                    occ: u,
                    left: Box::new(left.label_at(&lp, next)?),
                    right: Box::new(right.label_at(&rp, next)?),
                })
            }
            RawDerivation::Cut { i, j, left, right } => {
                let (a, b) = (*next, *next + 1);
                *next += 2;
                let (lp, rp) = split_positions(pos, left, right, *i, *j, (a, Occ::root()), (b, Occ::root()))?;
                Ok(Derivation::Cut {
                    trees: (a, b),
                    left: Box::new(left.label_at(&lp, next)?),
                    right: Box::new(right.label_at(&rp, next)?),
                })
            }
            RawDerivation::Mix { left, right } => {
                let m = left.sequent()?.len();
                Ok(Derivation::Mix {
                    left: Box::new(left.label_at(&pos[..m], next)?),
                    right: Box::new(right.label_at(&pos[m..], next)?),
                })
            }
        }
    }

    pub fn build(&self) -> Result<ParaproofStructure, DerivationError> {
        self.label()?.build()
    }

    pub fn par_count(&self) -> usize {
        match self {
            RawDerivation::Axiom(_) => 0,
            RawDerivation::Par { premise, .. } => 1 + premise.par_count(),
            RawDerivation::Tensor { left, right, .. } | RawDerivation::Cut { left, right, .. } | RawDerivation::Mix { left, right } => {
                left.par_count() + right.par_count()
            }
        }
    }
}

type Pos = (usize, Occ);

fn split_positions(
    outer: &[Pos],
    left: &RawDerivation,
    right: &RawDerivation,
    i: usize,
    j: usize,
    li: Pos,
    rj: Pos,
) -> Result<(Vec<Pos>, Vec<Pos>), DerivationError> {
    let l = left.sequent()?.len();
    let r = right.sequent()?.len();
    let mut it = outer.iter();
    let lp = (0..l).map(|k| if k == i { li.clone() } else { it.next().cloned().expect("position count") }).collect();
    let rp = (0..r).map(|k| if k == j { rj.clone() } else { it.next().cloned().expect("position count") }).collect();
    Ok((lp, rp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mll::Mode;

    fn a(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn ax(x: &str) -> RawDerivation {
        RawDerivation::Axiom(vec![a(x), a(x).dual()])
    }

    #[test]
    fn daimon_axiom() {
        let s = RawDerivation::Axiom(vec![a("A"), a("B")]).build().unwrap();
        assert_eq!(s.to_string(), "tree 0: A @ {.}\ntree 1: B @ {.}\nclass {0:., 1:.}\n");
    }

    #[test]
    fn par_of_axiom() {
        let d = RawDerivation::Par { i: 0, j: 1, premise: Box::new(ax("C")) };
        let s = d.build().unwrap();
        assert_eq!(s.to_string(), "tree 0: (C % C^) @ {1, 2}\nclass {0:1, 0:2}\n");
        assert!(s.validate(Mode::Proof).is_ok());
    }

    #[test]
    fn tensor_of_axioms() {
        let d = RawDerivation::Tensor { i: 0, j: 0, left: Box::new(ax("C")), right: Box::new(ax("D")) };
        let s = d.build().unwrap();
        assert_eq!(s.conclusion_formulas(), {
            let mut v = vec![a("(C * D)"), a("C^"), a("D^")];
            v.sort();
            v
        });
        assert_eq!(s.trees[2].formula, a("(C * D)"));
        assert!(s.validate(Mode::Proof).is_ok());
    }

    #[test]
    fn cut_trees_follow_conclusions() {
        let d = RawDerivation::Cut { i: 1, j: 0, left: Box::new(ax("C")), right: Box::new(ax("C")) };
        let s = d.build().unwrap();
        assert_eq!(s.trees.len(), 4);
        assert!(s.cuts.contains(&(2, 3)));
        assert!(s.validate(Mode::Proof).is_ok());
        assert_eq!(d.label().unwrap().build().unwrap(), s);
    }

    #[test]
    fn non_dual_cut_fails() {
        let d = RawDerivation::Cut { i: 0, j: 0, left: Box::new(ax("C")), right: Box::new(ax("C")) };
        assert!(matches!(d.build(), Err(DerivationError::NonDualCut(..))));
    }
}
