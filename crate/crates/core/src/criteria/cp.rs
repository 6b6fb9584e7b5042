//! The counter-proof criterion.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use super::dr::is_dr;
use super::{GuardError, Verdict, Witness};
use crate::mll::{Class, Formula, LeafRef, Mode, Occ, ParaproofStructure, Tree};

pub const DEFAULT_LEAF_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the two partitions do not cover the same set")]
pub struct DomainMismatch;

/// Tree test on the bipartite multigraph with classes as vertices and elements as edges.
pub fn partitions_orthogonal<T: Ord + Clone>(x: &[BTreeSet<T>], y: &[BTreeSet<T>]) -> Result<bool, DomainMismatch> {
    let mut owner_x: BTreeMap<&T, usize> = BTreeMap::new();
    for (k, c) in x.iter().enumerate() {
        for e in c {
            if owner_x.insert(e, k).is_some() {
                return Err(DomainMismatch);
            }
        }
    }
    let mut owner_y: BTreeMap<&T, usize> = BTreeMap::new();
    for (k, c) in y.iter().enumerate() {
        for e in c {
            if owner_y.insert(e, k).is_some() {
                return Err(DomainMismatch);
            }
        }
    }
    if owner_x.keys().ne(owner_y.keys()) {
        return Err(DomainMismatch);
    }
    let n = x.len() + y.len();
    let edges = owner_x.len();
    if edges + 1 != n {
        return Ok(false);
    }
    // with |E| = |V| - 1, connected is equivalent to being a tree
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, a: usize) -> usize {
        let mut r = a;
        while p[r] != r {
            r = p[r];
        }
        let mut a = a;
        while p[a] != r {
            let next = p[a];
            p[a] = r;
            a = next;
        }
        r
    }
    let mut joins = 0;
    for (e, &kx) in &owner_x {
        let ky = owner_y[e] + x.len();
        let (a, b) = (find(&mut parent, kx), find(&mut parent, ky));
        if a != b {
            parent[a] = b;
            joins += 1;
        }
    }
    Ok(joins + 1 == n)
}

/// All set partitions of `items`, in restricted-growth order.
pub fn set_partitions<T: Clone + Ord>(items: &[T]) -> Vec<Vec<BTreeSet<T>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<BTreeSet<T>> = Vec::new();
    fn go<T: Clone + Ord>(items: &[T], k: usize, blocks: &mut Vec<BTreeSet<T>>, out: &mut Vec<Vec<BTreeSet<T>>>) {
        if k == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].insert(items[k].clone());
            go(items, k + 1, blocks, out);
            blocks[b].remove(&items[k]);
        }
        blocks.push([items[k].clone()].into());
        go(items, k + 1, blocks, out);
        blocks.pop();
    }
    go(items, 0, &mut blocks, &mut out);
    out
}

type Partition = Vec<BTreeSet<Occ>>;

fn normalize(mut p: Partition) -> Partition {
    p.sort();
    p
}

/// Partitions of the leaves of one tree that are DR nets on that tree alone.
pub fn tree_nets(tree: &Tree) -> Vec<Partition> {
    let leaves: Vec<Occ> = tree.leaves.iter().cloned().collect();
    set_partitions(&leaves)
        .into_iter()
        .map(normalize)
        .filter(|p| {
            let classes: Vec<Class> = p.iter().map(|c| c.iter().map(|u| LeafRef::new(0, u.clone())).collect()).collect();
            is_dr(&ParaproofStructure::new(vec![tree.clone()], classes, []))
        })
        .collect()
}

/// Partitions obtained from sequent derivations of the tree (generalized axioms on
/// its leaves, par, tensor). With `extreme`, every tensor split leaves one side empty.
pub fn derivable_partitions(tree: &Tree, extreme: bool) -> BTreeSet<Partition> {
    let mut memo = BTreeMap::new();
    search(tree, &[Occ::root()].into(), extreme, &mut memo)
}

fn search(
    tree: &Tree,
    gamma: &BTreeSet<Occ>,
    extreme: bool,
    memo: &mut BTreeMap<BTreeSet<Occ>, BTreeSet<Partition>>,
) -> BTreeSet<Partition> {
    if let Some(r) = memo.get(gamma) {
        return r.clone();
    }
    let mut out = BTreeSet::new();
    if gamma.iter().all(|u| tree.leaves.contains(u)) {
        out.insert(vec![gamma.clone()]);
    }
    for u in gamma {
        if tree.leaves.contains(u) {
            continue;
        }
        let mut rest = gamma.clone();
        rest.remove(u);
        match tree.formula.subformula_at(u) {
            Some(Formula::Par(..)) => {
                let mut g = rest.clone();
                g.insert(u.child(1));
                g.insert(u.child(2));
                out.extend(search(tree, &g, extreme, memo));
            }
            Some(Formula::Tensor(..)) => {
                let rest: Vec<Occ> = rest.into_iter().collect();
                let splits: Vec<u64> = if extreme {
                    let all = (1u64 << rest.len()) - 1;
                    if all == 0 { vec![0] } else { vec![0, all] }
                } else {
                    (0..1u64 << rest.len()).collect()
                };
                for mask in splits {
                    let mut g1: BTreeSet<Occ> = [u.child(1)].into();
                    let mut g2: BTreeSet<Occ> = [u.child(2)].into();
                    for (k, v) in rest.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            g1.insert(v.clone());
                        } else {
                            g2.insert(v.clone());
                        }
                    }
                    let p1 = search(tree, &g1, extreme, memo);
                    let p2 = search(tree, &g2, extreme, memo);
                    for a in &p1 {
                        for b in &p2 {
                            let mut c = a.clone();
                            c.extend(b.iter().cloned());
                            out.insert(normalize(c));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    memo.insert(gamma.clone(), out.clone());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterProof {
    /// One net per conclusion, each on the dual tree `(A_i^)^{U_i}`.
    pub nets: Vec<ParaproofStructure>,
    /// The union of the nets' partitions, on the leaves of the original structure.
    pub induced: Vec<Class>,
}

fn dual_tree(t: &Tree) -> Tree {
    Tree::new(t.formula.dual(), t.leaves.iter().cloned())
}

fn guard(s: &ParaproofStructure, cap: usize) -> Result<(), GuardError> {
    s.validate(Mode::Paraproof).map_err(|e| GuardError::Invalid(e.to_string()))?;
    if !s.cuts.is_empty() {
        return Err(GuardError::HasCuts);
    }
    let n = s.leaf_count();
    if n > cap {
        return Err(GuardError::TooManyLeaves { count: n, cap });
    }
    Ok(())
}

const MEMO_LIMIT: usize = 4096;

thread_local! {
    static NETS: RefCell<HashMap<(Tree, bool), Rc<Vec<Partition>>>> = RefCell::new(HashMap::new());
}

fn per_tree(s: &ParaproofStructure, extreme: bool) -> Vec<Rc<Vec<Partition>>> {
    s.trees
        .iter()
        .map(|t| {
            let d = dual_tree(t);
            let key = (d, extreme);
            if let Some(hit) = NETS.with(|m| m.borrow().get(&key).cloned()) {
                return hit;
            }
            let nets = Rc::new(if extreme {
                derivable_partitions(&key.0, true).into_iter().collect()
            } else {
                tree_nets(&key.0)
            });
            NETS.with(|m| {
                let mut m = m.borrow_mut();
                if m.len() >= MEMO_LIMIT {
                    m.clear();
                }
                m.insert(key, nets.clone());
            });
            nets
        })
        .collect()
}

fn assemble(s: &ParaproofStructure, choice: &[&Partition]) -> CounterProof {
    let mut nets = Vec::new();
    let mut induced = Vec::new();
    for (i, p) in choice.iter().enumerate() {
        let d = dual_tree(&s.trees[i]);
        let local: Vec<Class> = p.iter().map(|c| c.iter().map(|u| LeafRef::new(0, u.clone())).collect()).collect();
        nets.push(ParaproofStructure::new(vec![d], local, []));
        for c in p.iter() {
            induced.push(c.iter().map(|u| LeafRef::new(i, u.clone())).collect());
        }
    }
    induced.sort();
    CounterProof { nets, induced }
}

/// Visits the product of the per-tree choices; stops when `f` returns false.
fn product<F: FnMut(&[&Partition]) -> bool>(lists: &[Rc<Vec<Partition>>], f: &mut F) {
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    loop {
        let choice: Vec<&Partition> = idx.iter().enumerate().map(|(i, &k)| &lists[i][k]).collect();
        if !f(&choice) {
            return;
        }
        let mut pos = 0;
        loop {
            if pos == lists.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn enumerate_counterproofs(s: &ParaproofStructure, extreme_only: bool, cap: usize) -> Result<Vec<CounterProof>, GuardError> {
    guard(s, cap)?;
    let lists = per_tree(s, extreme_only);
    let mut out = Vec::new();
    product(&lists, &mut |c| {
        out.push(assemble(s, c));
        true
    });
    Ok(out)
}

pub fn check_cp(s: &ParaproofStructure, cap: usize) -> Result<Verdict, GuardError> {
    guard(s, cap)?;
    let lists = per_tree(s, false);
    let mut failure = None;
    product(&lists, &mut |c| {
        let mut induced: Vec<Class> = Vec::new();
        for (i, p) in c.iter().enumerate() {
            for cl in p.iter() {
                induced.push(cl.iter().map(|u| LeafRef::new(i, u.clone())).collect());
            }
        }
        if partitions_orthogonal(&s.classes, &induced).unwrap_or(false) {
            true
        } else {
            failure = Some(assemble(s, c));
            false
        }
    });
    Ok(match failure {
        None => Verdict::accept("cp"),
        Some(cp) => Verdict::reject(
            "cp",
            Witness::CounterProof {
                nets: cp.nets.iter().map(|n| n.to_string()).collect(),
                induced: cp.induced.iter().map(|c| c.iter().map(|l| l.to_string()).collect()).collect(),
            },
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn orthogonality_examples() {
        assert!(partitions_orthogonal(&[set(&["a", "b"])], &[set(&["a"]), set(&["b"])]).unwrap());
        assert!(!partitions_orthogonal(&[set(&["a", "b"])], &[set(&["a", "b"])]).unwrap());
        assert!(!partitions_orthogonal(&[set(&["a"]), set(&["b"])], &[set(&["a"]), set(&["b"])]).unwrap());
        assert!(partitions_orthogonal(&[set(&["a"])], &[set(&["b"])]).is_err());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(&(0..n).collect::<Vec<_>>()).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn single_atom_has_one_counterproof() {
        let s = ParaproofStructure::parse("tree 0: X @ {.}\nclass {0:.}\n").unwrap();
        let cps = enumerate_counterproofs(&s, false, 10).unwrap();
        assert_eq!(cps.len(), 1);
    }

    #[test]
    fn two_leaf_counterproofs() {
        // dual of C * C^ is C^ % C: only the one-class partition is a net
        let s = ParaproofStructure::parse("tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n").unwrap();
        let all = enumerate_counterproofs(&s, false, 10).unwrap();
        assert_eq!(all.len(), 1);
        let v = check_cp(&s, 10).unwrap();
        assert!(!v.accepted);
        assert!(matches!(v.witness, Some(Witness::CounterProof { .. })));
        let ext = enumerate_counterproofs(&s, true, 10).unwrap();
        assert!(ext.iter().all(|e| all.contains(e)));
    }

    #[test]
    fn derivations_agree_with_dr_on_small_trees() {
        for src in ["((a * b) % c)", "((a % b) * (c * d))", "((a * b) * (c % d))", "(a % (b % c))"] {
            let t = Tree::atomic(Formula::parse(src).unwrap());
            let by_dr: BTreeSet<Partition> = tree_nets(&t).into_iter().collect();
            assert_eq!(by_dr, derivable_partitions(&t, false), "{}", src);
            assert!(derivable_partitions(&t, true).is_subset(&by_dr));
        }
    }
}
