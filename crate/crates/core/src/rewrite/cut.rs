//! Cut elimination on paraproof structures.

use std::collections::BTreeSet;

use crate::mll::{Class, Formula, LeafRef, Mode, Occ, ParaproofStructure, Tree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("no normal form within {0} steps")]
    Fuel(usize),
}

struct Work {
    trees: Vec<Option<Tree>>,
    classes: Vec<Class>,
    cuts: BTreeSet<(usize, usize)>,
}

impl Work {
    fn new(s: &ParaproofStructure) -> Work {
        Work { trees: s.trees.iter().cloned().map(Some).collect(), classes: s.classes.clone(), cuts: s.cuts.clone() }
    }

    fn tree(&self, i: usize) -> &Tree {
        self.trees[i].as_ref().expect("live tree")
    }

    fn class_of(&self, l: &LeafRef) -> usize {
        self.classes.iter().position(|c| c.contains(l)).expect("covered leaf")
    }

    fn finish(self) -> ParaproofStructure {
        let live: Vec<usize> = (0..self.trees.len()).filter(|&i| self.trees[i].is_some()).collect();
        let pos = |i: usize| live.iter().position(|&k| k == i).expect("live tree");
        let classes =
            self.classes.iter().filter(|c| !c.is_empty()).map(|c| c.iter().map(|l| LeafRef::new(pos(l.tree), l.occ.clone())).collect()).collect();
        let cuts: Vec<(usize, usize)> = self.cuts.iter().map(|&(i, j)| (pos(i), pos(j))).collect();
        ParaproofStructure::new(self.trees.into_iter().flatten().collect(), classes, cuts)
    }

    /// Cut between two leaf roots: the two classes fuse and lose the cut leaves.
    fn leaf_cut(&mut self, i: usize, j: usize) {
        let (li, lj) = (LeafRef::new(i, Occ::root()), LeafRef::new(j, Occ::root()));
        let (ci, cj) = (self.class_of(&li), self.class_of(&lj));
        let mut merged: Class = self.classes[ci].union(&self.classes[cj]).cloned().collect();
        merged.remove(&li);
        merged.remove(&lj);
        let (a, b) = (ci.max(cj), ci.min(cj));
        self.classes.remove(a);
        if a != b {
            self.classes.remove(b);
        }
        self.classes.push(merged);
        self.trees[i] = None;
        self.trees[j] = None;
        self.cuts.remove(&(i, j));
    }

    /// Splits the compound leaf root of tree `i` into its two children.
    fn expand(&mut self, i: usize) {
        let root = LeafRef::new(i, Occ::root());
        let f = self.tree(i).formula.clone();
        let k = self.class_of(&root);
        let (l1, l2) = (LeafRef::new(i, Occ::root().child(1)), LeafRef::new(i, Occ::root().child(2)));
        let partner = match self.classes[k].iter().filter(|l| **l != root).collect::<Vec<_>>()[..] {
            [p] if self.tree(p.tree).formula.subformula_at(&p.occ) == Some(&f.dual()) => Some(p.clone()),
            _ => None,
        };
        let set_leaves = |w: &mut Work, l: &LeafRef| {
            let t = w.trees[l.tree].as_mut().expect("live tree");
            t.leaves.remove(&l.occ);
            t.leaves.insert(l.occ.child(1));
            t.leaves.insert(l.occ.child(2));
        };
        set_leaves(self, &root);
        if let Some(p) = partner {
            set_leaves(self, &p);
            self.classes.remove(k);
            self.classes.push([l1, LeafRef::new(p.tree, p.occ.child(1))].into());
            self.classes.push([l2, LeafRef::new(p.tree, p.occ.child(2))].into());
            return;
        }
        self.classes[k].remove(&root);
        self.classes[k].insert(l1);
        match f {
            Formula::Par(..) => {
                self.classes[k].insert(l2);
            }
            _ => self.classes.push([l2].into()),
        }
    }

    /// Replaces a cut between two compound roots by cuts on the children.
    fn split(&mut self, i: usize, j: usize) {
        self.cuts.remove(&(i, j));
        let mut fresh = [[0usize; 2]; 2];
        for (side, t) in [i, j].into_iter().enumerate() {
            let tree = self.trees[t].take().expect("live tree");
            let (a, b) = tree.formula.children().expect("compound root");
            for (c, g) in [a, b].into_iter().enumerate() {
                let prefix = (c + 1) as u8;
                let leaves: Vec<Occ> =
                    tree.leaves.iter().filter(|u| u.0.first() == Some(&prefix)).map(|u| Occ(u.0[1..].to_vec())).collect();
                fresh[side][c] = self.trees.len();
                self.trees.push(Some(Tree::new(g.clone(), leaves)));
            }
            for class in self.classes.iter_mut() {
                *class = class
                    .iter()
                    .map(|l| {
                        if l.tree == t {
                            let c = (l.occ.0[0] - 1) as usize;
                            LeafRef::new(fresh[side][c], Occ(l.occ.0[1..].to_vec()))
                        } else {
                            l.clone()
                        }
                    })
                    .collect();
            }
        }
        self.cuts.insert((fresh[0][0], fresh[1][0]));
        self.cuts.insert((fresh[0][1], fresh[1][1]));
    }

    fn step(&mut self) -> bool {
        let Some(&(i, j)) = self.cuts.iter().next() else { return false };
        let (ri, rj) = (self.tree(i).leaves.contains(&Occ::root()), self.tree(j).leaves.contains(&Occ::root()));
        match (ri, rj) {
            (true, true) => self.leaf_cut(i, j),
            (true, false) => self.expand(i),
            (false, true) => self.expand(j),
            (false, false) => self.split(i, j),
        }
        true
    }
}

/// One reduction step on the first cut, or `None` when cut-free.
pub fn cut_step(s: &ParaproofStructure) -> Option<ParaproofStructure> {
    let mut w = Work::new(s);
    if w.step() {
        Some(w.finish())
    } else {
        None
    }
}

/// The cut-free normal form, and every intermediate structure when `trace` is set.
pub fn cut_normalize(
    s: &ParaproofStructure,
    trace: bool,
) -> Result<(ParaproofStructure, Vec<ParaproofStructure>), CutError> {
    s.validate(Mode::Paraproof).map_err(|e| CutError::Invalid(e.to_string()))?;
    let fuel = 4 * s.trees.iter().map(|t| t.formula.size()).sum::<usize>() + 4;
    let mut steps = Vec::new();
    let mut cur = s.clone();
    for _ in 0..fuel {
        match cut_step(&cur) {
            None => return Ok((cur, steps)),
            Some(next) => {
                if trace {
                    steps.push(next.clone());
                }
                cur = next;
            }
        }
    }
    Err(CutError::Fuel(fuel))
}
