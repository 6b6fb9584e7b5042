//! Switching-based criteria: DR (trees) and acyclicity (forests).

use super::{GuardError, Verdict, Witness};
use crate::mll::graph::{Graph, Skeleton, Switching};
use crate::mll::{Mode, ParaproofStructure};

pub const DEFAULT_PAR_CAP: usize = 24;

fn run(s: &ParaproofStructure, connected: bool, cap: usize, name: &str) -> Result<Verdict, GuardError> {
    s.validate(Mode::Paraproof).map_err(|e| GuardError::Invalid(e.to_string()))?;
    let sk = Skeleton::new(s);
    let n = sk.pars.len();
    if n > cap {
        return Err(GuardError::TooManyPars { count: n, cap });
    }
    for k in 0..1u64 << n {
        let sw = Switching::from_counter(n, k);
        let g = sk.graph(&sw);
        let shape = g.shape();
        if let Some(c) = shape.cycle {
            return Ok(Verdict::reject(
                name,
                Witness::Cycle { switching: sw.to_string(), cycle: c.iter().map(|&v| sk.labels[v].clone()).collect() },
            ));
        }
        debug_assert_eq!(g.vertices.len() - g.edges.len(), shape.component_count);
        if connected && shape.component_count > 1 {
            let (mut side, mut other) = (Vec::new(), Vec::new());
            for (v, &c) in shape.components.iter().enumerate() {
                if c == 0 {
                    side.push(sk.labels[v].clone());
                } else {
                    other.push(sk.labels[v].clone());
                }
            }
            return Ok(Verdict::reject(name, Witness::Disconnected { switching: sw.to_string(), side, other }));
        }
    }
    Ok(Verdict::accept(name))
}

/// Every correction graph is connected and acyclic.
pub fn check_dr(s: &ParaproofStructure, cap: usize) -> Result<Verdict, GuardError> {
    run(s, true, cap, "dr")
}

/// Every correction graph is acyclic.
pub fn check_acyclicity(s: &ParaproofStructure, cap: usize) -> Result<Verdict, GuardError> {
    run(s, false, cap, "mix")
}

pub fn is_dr(s: &ParaproofStructure) -> bool {
    check_dr(s, DEFAULT_PAR_CAP).map_or(false, |v| v.accepted)
}

/// For each par node switched L in an accepted graph, the path between its
/// premises avoids the par node itself.
pub fn par_paths_avoid_par(s: &ParaproofStructure) -> bool {
    let sk = Skeleton::new(s);
    let n = sk.pars.len();
    for k in 0..1u64 << n {
        let sw = Switching::from_counter(n, k);
        let g: Graph = sk.graph(&sw);
        if !g.is_tree() {
            continue;
        }
        for (idx, &(p, a, b)) in sk.pars.iter().enumerate() {
            if sw.0[idx] != crate::mll::Side::L {
                continue;
            }
            match g.path(a, b) {
                Some(path) if !path.contains(&p) => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mll::Formula;

    fn st(src: &str) -> ParaproofStructure {
        ParaproofStructure::parse(src).unwrap()
    }

    #[test]
    fn axiom_accepted() {
        assert!(check_dr(&ParaproofStructure::axiom(Formula::atom("C")), 24).unwrap().accepted);
    }

    #[test]
    fn tensor_cycle_rejected() {
        let v = check_dr(&st("tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n"), 24).unwrap();
        assert!(!v.accepted);
        assert!(matches!(v.witness, Some(Witness::Cycle { .. })));
        let m = check_acyclicity(&st("tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n"), 24).unwrap();
        assert!(!m.accepted);
    }

    #[test]
    fn par_accepted() {
        let s = st("tree 0: (C % C^) @ {1, 2}\nclass {0:1, 0:2}\n");
        assert!(check_dr(&s, 24).unwrap().accepted);
        assert!(par_paths_avoid_par(&s));
    }

    #[test]
    fn mix_accepts_disjoint_axioms() {
        let s = st("tree 0: A @ {.}\ntree 1: A^ @ {.}\ntree 2: B @ {.}\ntree 3: B^ @ {.}\nclass {0:., 1:.}\nclass {2:., 3:.}\n");
        assert!(check_acyclicity(&s, 24).unwrap().accepted);
        let v = check_dr(&s, 24).unwrap();
        assert!(matches!(v.witness, Some(Witness::Disconnected { .. })));
    }

    #[test]
    fn cap_refuses() {
        let s = st("tree 0: (C % C^) @ {1, 2}\nclass {0:1, 0:2}\n");
        assert!(matches!(check_dr(&s, 0), Err(GuardError::TooManyPars { .. })));
    }
}
