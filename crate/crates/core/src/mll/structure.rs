use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::formula::{Formula, Occ};

/// A formula tree cut at the occurrences in `leaves`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tree {
    pub formula: Formula,
    pub leaves: BTreeSet<Occ>,
}

impl Tree {
    pub fn new(formula: Formula, leaves: impl IntoIterator<Item = Occ>) -> Tree {
        Tree { formula, leaves: leaves.into_iter().collect() }
    }

    pub fn root(formula: Formula) -> Tree {
        Tree::new(formula, [Occ::root()])
    }

    /// The full tree, cut at every atom.
    pub fn atomic(formula: Formula) -> Tree {
        let leaves = formula.atom_occurrences();
        Tree::new(formula, leaves)
    }

    /// Every node of the tree (strict prefixes of leaves, then leaves) in preorder.
    pub fn nodes(&self) -> Vec<Occ> {
        let mut out = Vec::new();
        self.walk(&mut Occ::root(), &mut out);
        out
    }

    fn walk(&self, at: &mut Occ, out: &mut Vec<Occ>) {
        out.push(at.clone());
        if self.leaves.contains(at) {
            return;
        }
        for i in [1u8, 2] {
            at.0.push(i);
            if self.leaves.iter().any(|l| at.is_prefix_of(l)) {
                self.walk(at, out);
            }
            at.0.pop();
        }
    }

    pub fn is_internal(&self, u: &Occ) -> bool {
        !self.leaves.contains(u) && self.leaves.iter().any(|l| u.is_prefix_of(l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Paraproof,
    Proof,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeafRef {
    pub tree: usize,
    pub occ: Occ,
}

impl LeafRef {
    pub fn new(tree: usize, occ: Occ) -> LeafRef {
        LeafRef { tree, occ }
    }
}

impl fmt::Display for LeafRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tree, self.occ)
    }
}

pub type Class = BTreeSet<LeafRef>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParaproofStructure {
    pub trees: Vec<Tree>,
    /// Partition of the leaves, kept sorted.
    pub classes: Vec<Class>,
    /// Cut pairs `(i, j)` with `i < j`.
    pub cuts: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Diagnostic {
    #[error("tree {tree}: occurrence {occ} is undefined")]
    UndefinedOccurrence { tree: usize, occ: String },
    #[error("tree {tree}: occurrences {a} and {b} overlap")]
    Overlap { tree: usize, a: String, b: String },
    #[error("tree {tree}: no leaves")]
    EmptyLeafSet { tree: usize },
    #[error("tree {tree}: node {occ} lacks a child")]
    IncompleteTree { tree: usize, occ: String },
    #[error("coverage: leaf {leaf} is in no class")]
    Coverage { leaf: String },
    #[error("class refers to unknown leaf {leaf}")]
    UnknownLeaf { leaf: String },
    #[error("leaf {leaf} is in two classes")]
    DuplicateLeaf { leaf: String },
    #[error("empty class")]
    EmptyClass,
    #[error("cut {i},{j} refers to a missing conclusion")]
    CutOutOfRange { i: usize, j: usize },
    #[error("cut {i},{j} is not between distinct conclusions")]
    SelfCut { i: usize, j: usize },
    #[error("cut {i},{j} joins non-dual formulas")]
    NonDualCut { i: usize, j: usize },
    #[error("conclusion {tree} is cut twice")]
    CutTwice { tree: usize },
    #[error("class {class} is not an axiom")]
    NotAxiom { class: String },
}

impl ParaproofStructure {
    pub fn new(trees: Vec<Tree>, classes: Vec<Class>, cuts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut s = ParaproofStructure {
            trees,
            classes,
            cuts: cuts.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect(),
        };
        s.classes.sort();
        s
    }

    /// The one-axiom structure on `C, C^`.
    pub fn axiom(c: Formula) -> Self {
        let d = c.dual();
        ParaproofStructure::new(
            vec![Tree::root(c), Tree::root(d)],
            vec![[LeafRef::new(0, Occ::root()), LeafRef::new(1, Occ::root())].into()],
            [],
        )
    }

    pub fn leaves(&self) -> Vec<LeafRef> {
        let mut out = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            for u in &t.leaves {
                out.push(LeafRef::new(i, u.clone()));
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(|t| t.leaves.len()).sum()
    }

    pub fn leaf_formula(&self, l: &LeafRef) -> Option<&Formula> {
        self.trees.get(l.tree)?.formula.subformula_at(&l.occ)
    }

    pub fn is_cut(&self, i: usize) -> bool {
        self.cuts.iter().any(|&(a, b)| a == i || b == i)
    }

    /// Indices of the trees that are not cut.
    pub fn conclusions(&self) -> Vec<usize> {
        (0..self.trees.len()).filter(|&i| !self.is_cut(i)).collect()
    }

    pub fn conclusion_formulas(&self) -> Vec<Formula> {
        let mut v: Vec<Formula> = self.conclusions().into_iter().map(|i| self.trees[i].formula.clone()).collect();
        v.sort();
        v
    }

    /// Internal par nodes in depth-first discovery order.
    pub fn par_nodes(&self) -> Vec<(usize, Occ)> {
        let mut out = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            for u in t.nodes() {
                if t.is_internal(&u) {
                    if let Some(Formula::Par(..)) = t.formula.subformula_at(&u) {
                        out.push((i, u));
                    }
                }
            }
        }
        out
    }

    pub fn class_of(&self, l: &LeafRef) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(l))
    }

    pub fn validate(&self, mode: Mode) -> Result<(), Diagnostic> {
        for (i, t) in self.trees.iter().enumerate() {
            if t.leaves.is_empty() {
                return Err(Diagnostic::EmptyLeafSet { tree: i });
            }
            for u in &t.leaves {
                if t.formula.subformula_at(u).is_none() {
                    return Err(Diagnostic::UndefinedOccurrence { tree: i, occ: u.to_string() });
                }
            }
            let ls: Vec<&Occ> = t.leaves.iter().collect();
            for (a, x) in ls.iter().enumerate() {
                for y in &ls[a + 1..] {
                    if x.is_prefix_of(y) || y.is_prefix_of(x) {
                        return Err(Diagnostic::Overlap { tree: i, a: x.to_string(), b: y.to_string() });
                    }
                }
            }
            for u in t.nodes() {
                if t.leaves.contains(&u) {
                    continue;
                }
                for k in [1u8, 2] {
                    let c = u.child(k);
                    if !t.leaves.iter().any(|l| c.is_prefix_of(l)) {
                        return Err(Diagnostic::IncompleteTree { tree: i, occ: u.to_string() });
                    }
                }
            }
        }
        let mut seen: BTreeSet<&LeafRef> = BTreeSet::new();
        for c in &self.classes {
            if c.is_empty() {
                return Err(Diagnostic::EmptyClass);
            }
            for l in c {
                let known = self.trees.get(l.tree).map_or(false, |t| t.leaves.contains(&l.occ));
                if !known {
                    return Err(Diagnostic::UnknownLeaf { leaf: l.to_string() });
                }
                if !seen.insert(l) {
                    return Err(Diagnostic::DuplicateLeaf { leaf: l.to_string() });
                }
            }
        }
        for l in self.leaves() {
            if !seen.contains(&l) {
                return Err(Diagnostic::Coverage { leaf: l.to_string() });
            }
        }
        let mut cut_count: BTreeMap<usize, usize> = BTreeMap::new();
        for &(i, j) in &self.cuts {
            if i == j {
                return Err(Diagnostic::SelfCut { i, j });
            }
            if i >= self.trees.len() || j >= self.trees.len() {
                return Err(Diagnostic::CutOutOfRange { i, j });
            }
            if self.trees[i].formula.dual() != self.trees[j].formula {
                return Err(Diagnostic::NonDualCut { i, j });
            }
            for k in [i, j] {
                let n = cut_count.entry(k).or_insert(0);
                *n += 1;
                if *n > 1 {
                    return Err(Diagnostic::CutTwice { tree: k });
                }
            }
        }
        if mode == Mode::Proof {
            for c in &self.classes {
                let ok = c.len() == 2 && {
                    let v: Vec<&LeafRef> = c.iter().collect();
                    let a = self.leaf_formula(v[0]);
                    let b = self.leaf_formula(v[1]);
                    matches!((a, b), (Some(a), Some(b)) if a.dual() == *b)
                };
                if !ok {
                    return Err(Diagnostic::NotAxiom { class: class_text(c) });
                }
            }
        }
        Ok(())
    }

    pub fn is_proof_structure(&self) -> bool {
        self.validate(Mode::Proof).is_ok()
    }
}

pub fn class_text(c: &Class) -> String {
    let parts: Vec<String> = c.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(t: usize, o: &str) -> LeafRef {
        LeafRef::new(t, Occ::parse(o).unwrap())
    }

    #[test]
    fn axiom_validates_both_modes() {
        let s = ParaproofStructure::axiom(Formula::atom("C"));
        assert!(s.validate(Mode::Paraproof).is_ok());
        assert!(s.validate(Mode::Proof).is_ok());
    }

    #[test]
    fn daimons_are_not_axioms() {
        let c = Formula::atom("C");
        let s = ParaproofStructure::new(
            vec![Tree::root(c.clone()), Tree::root(c.dual())],
            vec![[leaf(0, ".")].into(), [leaf(1, ".")].into()],
            [],
        );
        assert!(s.validate(Mode::Paraproof).is_ok());
        assert!(matches!(s.validate(Mode::Proof), Err(Diagnostic::NotAxiom { .. })));
    }

    #[test]
    fn missing_leaf_is_coverage_failure() {
        let c = Formula::atom("C");
        let s = ParaproofStructure::new(
            vec![Tree::root(c.clone()), Tree::root(c.dual())],
            vec![[leaf(0, ".")].into()],
            [],
        );
        assert!(matches!(s.validate(Mode::Paraproof), Err(Diagnostic::Coverage { .. })));
    }

    #[test]
    fn incomplete_tree_is_rejected() {
        let f = Formula::parse("((A * B) % C)").unwrap();
        let s = ParaproofStructure::new(vec![Tree::new(f, [Occ::parse("11").unwrap(), Occ::parse("2").unwrap()])], vec![[leaf(0, "11"), leaf(0, "2")].into()], []);
        assert!(matches!(s.validate(Mode::Paraproof), Err(Diagnostic::IncompleteTree { .. })));
    }

    #[test]
    fn cut_checks() {
        let c = Formula::atom("C");
        let mut s = ParaproofStructure::axiom(c.clone());
        s.trees.push(Tree::root(c.clone()));
        s.classes.push([leaf(2, ".")].into());
        s.cuts.insert((0, 2));
        assert!(matches!(s.validate(Mode::Paraproof), Err(Diagnostic::NonDualCut { .. })));
    }

    #[test]
    fn par_nodes_in_preorder() {
        let f = Formula::parse("((A % B) % (C * D))").unwrap();
        let s = ParaproofStructure::new(vec![Tree::atomic(f)], vec![], []);
        let p: Vec<String> = s.par_nodes().iter().map(|(_, u)| u.to_string()).collect();
        assert_eq!(p, vec![".", "1"]);
    }
}
