//! The game criterion: the axiom involution as a winning strategy.

use std::collections::HashSet;

use super::{GuardError, Verdict, Witness};
use crate::mll::{Formula, LeafRef, Mode, ParaproofStructure};

pub const DEFAULT_AJ_LEAF_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Last {
    plus: bool,
    side: usize,
}

struct Node {
    /// `Some(true)` for tensor, `Some(false)` for par, `None` at leaves.
    tensor: Option<bool>,
}

struct Game {
    leaves: Vec<LeafRef>,
    partner: Vec<usize>,
    nodes: Vec<Node>,
    /// For each leaf, the nodes above it (including itself) with the side taken.
    above: Vec<Vec<(usize, usize)>>,
}

impl Game {
    fn new(s: &ParaproofStructure) -> Game {
        let leaves = s.leaves();
        let mut partner = vec![0; leaves.len()];
        for c in &s.classes {
            let v: Vec<usize> = c.iter().map(|l| leaves.iter().position(|m| m == l).expect("known leaf")).collect();
            partner[v[0]] = v[1];
            partner[v[1]] = v[0];
        }
        let mut nodes = Vec::new();
        let mut index = std::collections::BTreeMap::new();
        for (i, t) in s.trees.iter().enumerate() {
            for u in t.nodes() {
                let tensor = if t.is_internal(&u) {
                    Some(matches!(t.formula.subformula_at(&u), Some(Formula::Tensor(..))))
                } else {
                    None
                };
                index.insert((i, u.clone()), nodes.len());
                nodes.push(Node { tensor });
            }
        }
        let root = nodes.len();
        // the conclusions are read as joined by one par node, so the opponent
        // stays in the conclusion where the player last moved
        nodes.push(Node { tensor: Some(false) });
        let above = leaves
            .iter()
            .map(|l| {
                (0..=l.occ.0.len())
                    .map(|k| {
                        let v = crate::mll::Occ(l.occ.0[..k].to_vec());
                        let side = if k < l.occ.0.len() { l.occ.0[k] as usize } else { 0 };
                        (index[&(l.tree, v)], side)
                    })
                    .chain(std::iter::once((root, l.tree)))
                    .collect()
            })
            .collect();
        Game { leaves, partner, nodes, above }
    }

    /// Appends a move if the result is still a play.
    fn extend(&self, state: &mut [Option<Last>], leaf: usize, plus: bool) -> bool {
        for &(v, side) in &self.above[leaf] {
            if let Some(last) = state[v] {
                if last.plus == plus {
                    return false;
                }
                if last.side != side {
                    match (self.nodes[v].tensor, last.plus) {
                        // a negative move followed by a positive one in the other half is the
                        // player's switch; a positive one followed by a negative one, the opponent's
                        (Some(true), false) => return false,
                        (Some(false), true) => return false,
                        _ => {}
                    }
                }
            }
        }
        for &(v, side) in &self.above[leaf] {
            state[v] = Some(Last { plus, side });
        }
        true
    }

    fn label(&self, leaf: usize, plus: bool) -> String {
        format!("{}{}", self.leaves[leaf], if plus { '+' } else { '-' })
    }
}

pub fn check_aj(s: &ParaproofStructure, cap: usize) -> Result<Verdict, GuardError> {
    s.validate(Mode::Proof).map_err(|e| GuardError::NotProofStructure(e.to_string()))?;
    if !s.cuts.is_empty() {
        return Err(GuardError::HasCuts);
    }
    let n = s.leaf_count();
    if n > cap {
        return Err(GuardError::TooManyLeaves { count: n, cap });
    }
    let g = Game::new(s);
    let mut seen = HashSet::new();
    let mut play = Vec::new();
    let state = vec![None; g.nodes.len()];
    match search(&g, 0, state, &mut play, &mut seen) {
        None => Ok(Verdict::accept("aj")),
        Some(moves) => Ok(Verdict::reject("aj", Witness::Play { moves })),
    }
}

/// Depth-first search over plays ending with a player move; returns a failing play.
fn search(
    g: &Game,
    used: u64,
    state: Vec<Option<Last>>,
    play: &mut Vec<(usize, bool)>,
    seen: &mut HashSet<(u64, Vec<Option<Last>>)>,
) -> Option<Vec<String>> {
    if !seen.insert((used, state.clone())) {
        return None;
    }
    for m in 0..g.leaves.len() {
        if used >> m & 1 == 1 {
            continue;
        }
        let mut st = state.clone();
        if !g.extend(&mut st, m, false) {
            continue;
        }
        play.push((m, false));
        let r = g.partner[m];
        let bit_r = 1u64 << (g.leaves.len() + r);
        if used & bit_r != 0 || !g.extend(&mut st, r, true) {
            let w = play.iter().map(|&(l, p)| g.label(l, p)).collect();
            play.pop();
            return Some(w);
        }
        play.push((r, true));
        let found = search(g, used | 1 << m | bit_r, st, play, seen);
        play.pop();
        play.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(src: &str) -> ParaproofStructure {
        ParaproofStructure::parse(src).unwrap()
    }

    #[test]
    fn axiom_accepted() {
        assert!(check_aj(&ParaproofStructure::axiom(Formula::atom("C")), 12).unwrap().accepted);
    }

    #[test]
    fn disjoint_axioms_accepted() {
        let s = st("tree 0: A @ {.}\ntree 1: A^ @ {.}\ntree 2: B @ {.}\ntree 3: B^ @ {.}\nclass {0:., 1:.}\nclass {2:., 3:.}\n");
        assert!(check_aj(&s, 12).unwrap().accepted);
    }

    #[test]
    fn tensor_cycle_rejected() {
        let v = check_aj(&st("tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n"), 12).unwrap();
        assert!(!v.accepted);
        assert!(matches!(v.witness, Some(Witness::Play { .. })));
    }

    #[test]
    fn par_accepted() {
        assert!(check_aj(&st("tree 0: (C % C^) @ {1, 2}\nclass {0:1, 0:2}\n"), 12).unwrap().accepted);
    }

    #[test]
    fn agrees_with_acyclicity_on_samples() {
        use crate::criteria::check_acyclicity;
        use crate::mll::{generate, GenConfig};
        let mut cfg = GenConfig::new(Mode::Proof, 10);
        cfg.perturb = 0.5;
        for seed in 0..300 {
            let s = generate(seed, &cfg).structure;
            let a = check_aj(&s, 12).unwrap().accepted;
            let m = check_acyclicity(&s, 24).unwrap().accepted;
            assert_eq!(a, m, "seed {}\n{}", seed, s);
        }
    }
}
