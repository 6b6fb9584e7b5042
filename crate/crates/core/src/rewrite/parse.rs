//! The parsing rewrite system on paraproof structures.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::criteria::{GuardError, Verdict, Witness};
use crate::mll::structure::class_text;
use crate::mll::{Class, Formula, LeafRef, Mode, Occ, ParaproofStructure, Tree};

pub const DEFAULT_STATE_CAP: usize = 500_000;

/// A structure being contracted. Formulas stay those of the original trees;
/// a tree with no leaves left has been consumed by a cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParseState {
    pub leaves: Vec<BTreeSet<Occ>>,
    pub classes: Vec<Class>,
    pub cuts: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParseMode {
    Weak,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Par { tree: usize, occ: Occ },
    Tensor { tree: usize, occ: Occ },
    Cut { i: usize, j: usize },
    /// A par whose premises lie in different classes, closed by a mix.
    MixPar { tree: usize, occ: Occ },
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Par { tree, occ } => write!(f, "par {}:{}", tree, occ),
            Rule::Tensor { tree, occ } => write!(f, "tensor {}:{}", tree, occ),
            Rule::Cut { i, j } => write!(f, "cut {},{}", i, j),
            Rule::MixPar { tree, occ } => write!(f, "mix-par {}:{}", tree, occ),
        }
    }
}

impl ParseState {
    pub fn new(s: &ParaproofStructure) -> ParseState {
        let mut classes = s.classes.clone();
        classes.sort();
        ParseState { leaves: s.trees.iter().map(|t| t.leaves.clone()).collect(), classes, cuts: s.cuts.clone() }
    }

    fn class_of(&self, l: &LeafRef) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(l))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.iter().map(|l| l.len()).sum()
    }

    /// No cut left, every tree contracted to its root, and one class
    /// (any number of classes when `mix` is set).
    pub fn is_terminal(&self, mix: bool) -> bool {
        self.cuts.is_empty()
            && self.leaves.iter().all(|l| l.is_empty() || (l.len() == 1 && l.contains(&Occ::root())))
            && (if mix { !self.classes.is_empty() } else { self.classes.len() == 1 })
    }

    /// The state as a structure over the surviving trees, re-indexed in order.
    pub fn to_structure(&self, origin: &ParaproofStructure) -> ParaproofStructure {
        let live: Vec<usize> = (0..self.leaves.len()).filter(|&i| !self.leaves[i].is_empty()).collect();
        let pos = |i: usize| live.iter().position(|&k| k == i).expect("live tree");
        let trees = live.iter().map(|&i| Tree::new(origin.trees[i].formula.clone(), self.leaves[i].iter().cloned())).collect();
        let classes = self
            .classes
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.iter().map(|l| LeafRef::new(pos(l.tree), l.occ.clone())).collect())
            .collect();
        let cuts: Vec<(usize, usize)> = self.cuts.iter().map(|&(i, j)| (pos(i), pos(j))).collect();
        ParaproofStructure::new(trees, classes, cuts)
    }

    pub fn render(&self, origin: &ParaproofStructure) -> String {
        let mut out = String::new();
        for (i, l) in self.leaves.iter().enumerate() {
            if !l.is_empty() {
                let occs: Vec<String> = l.iter().map(|u| u.to_string()).collect();
                out += &format!("tree {}: {} @ {{{}}}\n", i, origin.trees[i].formula, occs.join(", "));
            }
        }
        for c in &self.classes {
            out += &format!("class {}\n", class_text(c));
        }
        for (i, j) in &self.cuts {
            out += &format!("cut {{{},{}}}\n", i, j);
        }
        out
    }

    fn merged(&self, drop: &[usize], add: Class) -> Vec<Class> {
        let mut classes: Vec<Class> =
            self.classes.iter().enumerate().filter(|(k, _)| !drop.contains(k)).map(|(_, c)| c.clone()).collect();
        classes.push(add);
        classes.sort();
        classes
    }

    pub fn redexes(&self, origin: &ParaproofStructure, mix: bool) -> Vec<(Rule, ParseState)> {
        let mut out = Vec::new();
        for (t, ls) in self.leaves.iter().enumerate() {
            let parents: BTreeSet<Occ> = ls.iter().filter_map(|u| u.parent()).collect();
            for u in parents {
                let (u1, u2) = (u.child(1), u.child(2));
                if !ls.contains(&u1) || !ls.contains(&u2) {
                    continue;
                }
                let (l1, l2) = (LeafRef::new(t, u1.clone()), LeafRef::new(t, u2.clone()));
                let (c1, c2) = (self.class_of(&l1).expect("covered"), self.class_of(&l2).expect("covered"));
                let is_par = matches!(origin.trees[t].formula.subformula_at(&u), Some(Formula::Par(..)));
                let rule = match (is_par, c1 == c2) {
                    (true, true) => Rule::Par { tree: t, occ: u.clone() },
                    (false, false) => Rule::Tensor { tree: t, occ: u.clone() },
                    (true, false) if mix => Rule::MixPar { tree: t, occ: u.clone() },
                    _ => continue,
                };
                let mut next = self.clone();
                next.leaves[t].remove(&u1);
                next.leaves[t].remove(&u2);
                next.leaves[t].insert(u.clone());
                let mut merged: Class = self.classes[c1].union(&self.classes[c2]).cloned().collect();
                merged.remove(&l1);
                merged.remove(&l2);
                merged.insert(LeafRef::new(t, u.clone()));
                next.classes = self.merged(&[c1, c2], merged);
                out.push((rule, next));
            }
        }
        for &(i, j) in &self.cuts {
            let root: BTreeSet<Occ> = [Occ::root()].into();
            if self.leaves[i] != root || self.leaves[j] != root {
                continue;
            }
            let (li, lj) = (LeafRef::new(i, Occ::root()), LeafRef::new(j, Occ::root()));
            let (ci, cj) = (self.class_of(&li).expect("covered"), self.class_of(&lj).expect("covered"));
            if ci == cj {
                continue;
            }
            let mut next = self.clone();
            next.leaves[i].clear();
            next.leaves[j].clear();
            next.cuts.remove(&(i, j));
            let mut merged: Class = self.classes[ci].union(&self.classes[cj]).cloned().collect();
            merged.remove(&li);
            merged.remove(&lj);
            // an empty class is kept: it still has to be the only one at the end
            next.classes = self.merged(&[ci, cj], merged);
            out.push((Rule::Cut { i, j }, next));
        }
        out
    }
}

/// Outcome of a parse search.
#[derive(Debug, Clone)]
pub struct ParseResult {
    pub accepted: bool,
    /// Rules from the start to a terminal state (weak success).
    pub trace: Option<Vec<(Rule, ParseState)>>,
    /// A normal, non-terminal state when rejected.
    pub stuck: Option<ParseState>,
    pub states: usize,
}

pub fn search(s: &ParaproofStructure, mode: ParseMode, mix: bool, cap: usize) -> Result<ParseResult, GuardError> {
    s.validate(Mode::Paraproof).map_err(|e| GuardError::Invalid(e.to_string()))?;
    let start = ParseState::new(s);
    let mut pred: HashMap<ParseState, Option<(ParseState, Rule)>> = HashMap::new();
    pred.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut stuck = None;
    let mut found = None;
    while let Some(st) = queue.pop_front() {
        if st.is_terminal(mix) {
            if found.is_none() {
                found = Some(st.clone());
            }
            if mode == ParseMode::Weak {
                break;
            }
        }
        let next = st.redexes(s, mix);
        if next.is_empty() && !st.is_terminal(mix) && stuck.is_none() {
            stuck = Some(st.clone());
            if mode == ParseMode::Strong {
                break;
            }
        }
        for (rule, n) in next {
            if !pred.contains_key(&n) {
                if pred.len() >= cap {
                    return Err(GuardError::StateSpace { cap });
                }
                pred.insert(n.clone(), Some((st.clone(), rule)));
                queue.push_back(n);
            }
        }
    }
    let states = pred.len();
    let accepted = match mode {
        ParseMode::Weak => found.is_some(),
        ParseMode::Strong => stuck.is_none() && found.is_some(),
    };
    let trace = found.map(|end| {
        let mut steps = Vec::new();
        let mut cur = end;
        while let Some(Some((p, r))) = pred.get(&cur) {
            steps.push((r.clone(), cur.clone()));
            cur = p.clone();
        }
        steps.reverse();
        steps
    });
    Ok(ParseResult { accepted, trace, stuck, states })
}

pub fn parse_redexes(s: &ParaproofStructure) -> Vec<(Rule, ParaproofStructure)> {
    let st = ParseState::new(s);
    st.redexes(s, false).into_iter().map(|(r, n)| (r, n.to_structure(s))).collect()
}

pub fn check_parsing(s: &ParaproofStructure, mode: ParseMode, cap: usize) -> Result<Verdict, GuardError> {
    let name = match mode {
        ParseMode::Weak => "parse-weak",
        ParseMode::Strong => "parse-strong",
    };
    let r = search(s, mode, false, cap)?;
    let trace: Vec<String> = r.trace.as_ref().map(|t| t.iter().map(|(rule, _)| rule.to_string()).collect()).unwrap_or_default();
    if r.accepted {
        Ok(Verdict::accept(name).with_trace(trace))
    } else {
        let state = r.stuck.map(|st| st.render(s)).unwrap_or_default();
        Ok(Verdict::reject(name, Witness::Stuck { state }))
    }
}
