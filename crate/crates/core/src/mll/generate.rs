//! Seeded random corpora of paraproof structures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::derivation::RawDerivation;
use super::formula::Formula;
use super::structure::{Mode, ParaproofStructure};

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub mode: Mode,
    pub max_leaves: usize,
    pub max_pars: usize,
    pub allow_cuts: bool,
    /// Retry until at least this many cuts are present (best effort).
    pub min_cuts: usize,
    pub perturb: f64,
    pub atoms: Vec<String>,
}

impl GenConfig {
    pub fn new(mode: Mode, max_leaves: usize) -> GenConfig {
        GenConfig {
            mode,
            max_leaves,
            max_pars: 6,
            allow_cuts: false,
            min_cuts: 0,
            perturb: 0.0,
            atoms: vec!["a".into(), "b".into(), "c".into()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub structure: ParaproofStructure,
    /// The derivation the structure was built from, before any perturbation.
    pub derivation: RawDerivation,
    pub perturbed: bool,
}

/// Convenience entry point: a structure for `seed` under the given budget.
pub fn random_structure(seed: u64, budget: usize, mode: Mode, allow_cuts: bool) -> ParaproofStructure {
    let mut cfg = GenConfig::new(mode, budget.max(1));
    cfg.allow_cuts = allow_cuts;
    generate(seed, &cfg).structure
}

pub fn generate(seed: u64, cfg: &GenConfig) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = None;
    for _ in 0..64 {
        let d = derivation(&mut rng, cfg);
        let s = d.build().expect("generated derivations are well formed");
        let ok = s.cuts.len() >= cfg.min_cuts;
        best = Some((d, s));
        if ok {
            break;
        }
    }
    let (d, mut s) = best.expect("at least one attempt");
    let mut perturbed = false;
    if rng.gen_bool(cfg.perturb.clamp(0.0, 1.0)) {
        perturbed = perturb(&mut rng, &mut s, cfg.mode);
    }
    debug_assert!(s.validate(cfg.mode).is_ok());
    Generated { structure: s, derivation: d, perturbed }
}

fn atom(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Formula {
    let a = Formula::atom(cfg.atoms.choose(rng).expect("nonempty atom list"));
    if rng.gen_bool(0.5) {
        a.dual()
    } else {
        a
    }
}

fn formula(rng: &mut ChaCha8Rng, cfg: &GenConfig, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return atom(rng, cfg);
    }
    let a = formula(rng, cfg, depth - 1);
    let b = formula(rng, cfg, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::tensor(a, b)
    } else {
        Formula::par(a, b)
    }
}

fn pars_in(f: &Formula) -> usize {
    match f {
        Formula::Par(a, b) => 1 + pars_in(a) + pars_in(b),
        Formula::Tensor(a, b) => pars_in(a) + pars_in(b),
        _ => 0,
    }
}

fn leaves_in(f: &Formula) -> usize {
    f.atom_occurrences().len()
}

/// The expanded identity on `f`; its conclusions are `f` and `f^` in some order.
pub fn eta(f: &Formula) -> RawDerivation {
    match f {
        Formula::Tensor(a, b) => {
            let (la, lb) = (eta(a), eta(b));
            let i = position(&la, a);
            let j = position(&lb, b);
            let t = RawDerivation::Tensor { i, j, left: Box::new(la), right: Box::new(lb) };
            // conclusions: a^, b^, a*b
            RawDerivation::Par { i: 0, j: 1, premise: Box::new(t) }
        }
        Formula::Par(..) => eta(&f.dual()),
        _ => RawDerivation::Axiom(vec![f.clone(), f.dual()]),
    }
}

fn position(d: &RawDerivation, f: &Formula) -> usize {
    d.sequent().expect("well formed").iter().position(|g| g == f).expect("conclusion present")
}

struct Item {
    d: RawDerivation,
    seq: Vec<Formula>,
}

fn derivation(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> RawDerivation {
    let budget = cfg.max_leaves.max(1);
    let mut pool: Vec<Item> = Vec::new();
    let mut leaves = 0;
    let mut pars = 0;
    let target = rng.gen_range(1..=budget);
    while leaves < target {
        let room = budget - leaves;
        let eta_ok = cfg.allow_cuts || rng.gen_bool(0.2);
        if room >= 4 && eta_ok && rng.gen_bool(0.35) {
            let f = formula(rng, cfg, 2);
            let n = 2 * leaves_in(&f);
            let p = pars_in(&f) + pars_in(&f.dual());
            if n <= room && pars + p <= cfg.max_pars {
                let d = eta(&f);
                let seq = d.sequent().expect("eta is well formed");
                pool.push(Item { d, seq });
                leaves += n;
                pars += p;
                continue;
            }
        }
        match cfg.mode {
            Mode::Proof => {
                if room < 2 {
                    if leaves == 0 {
                        let a = atom(rng, cfg);
                        pool.push(Item { seq: vec![a.clone(), a.dual()], d: RawDerivation::Axiom(vec![a.clone(), a.dual()]) });
                    }
                    break;
                }
                let a = atom(rng, cfg);
                let g = vec![a.clone(), a.dual()];
                pool.push(Item { d: RawDerivation::Axiom(g.clone()), seq: g });
                leaves += 2;
            }
            Mode::Paraproof => {
                let k = rng.gen_range(1..=room.min(3));
                let g: Vec<Formula> = (0..k)
                    .map(|_| if rng.gen_bool(0.15) { formula(rng, cfg, 1) } else { atom(rng, cfg) })
                    .collect();
                leaves += g.len();
                pool.push(Item { d: RawDerivation::Axiom(g.clone()), seq: g });
            }
        }
    }
    loop {
        let can_par: Vec<usize> = if pars < cfg.max_pars {
            (0..pool.len()).filter(|&k| pool[k].seq.len() >= 2).collect()
        } else {
            Vec::new()
        };
        if pool.len() == 1 && (can_par.is_empty() || budget <= 2 || rng.gen_bool(0.45)) {
            break;
        }
        if !can_par.is_empty() && (pool.len() == 1 || rng.gen_bool(0.3)) {
            let k = *can_par.choose(rng).expect("nonempty");
            let n = pool[k].seq.len();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let it = pool.swap_remove(k);
            let d = RawDerivation::Par { i, j, premise: Box::new(it.d) };
            let seq = d.sequent().expect("valid par");
            pool.push(Item { d, seq });
            pars += 1;
            continue;
        }
        if pool.len() < 2 {
            break;
        }
        let a = rng.gen_range(0..pool.len());
        let mut b = rng.gen_range(0..pool.len() - 1);
        if b >= a {
            b += 1;
        }
        let mut cut = None;
        if cfg.allow_cuts && rng.gen_bool(0.6) {
            let mut cands = Vec::new();
            for (i, f) in pool[a].seq.iter().enumerate() {
                for (j, g) in pool[b].seq.iter().enumerate() {
                    if f.dual() == *g && pool[a].seq.len() + pool[b].seq.len() > 2 {
                        cands.push((i, j));
                    }
                }
            }
            cut = cands.choose(rng).copied();
        }
        let (hi, lo) = (a.max(b), a.min(b));
        let x = pool.swap_remove(hi);
        let y = pool.swap_remove(lo);
        let (l, r) = if hi == a { (x, y) } else { (y, x) };
        let d = match cut {
            Some((i, j)) => RawDerivation::Cut { i, j, left: Box::new(l.d), right: Box::new(r.d) },
            None => {
                let i = rng.gen_range(0..l.seq.len());
                let j = rng.gen_range(0..r.seq.len());
                RawDerivation::Tensor { i, j, left: Box::new(l.d), right: Box::new(r.d) }
            }
        };
        let seq = d.sequent().expect("valid binary rule");
        pool.push(Item { d, seq });
    }
    pool.pop().expect("nonempty pool").d
}

/// Changes the partition so that the result usually stops being a net.
pub fn perturb(rng: &mut ChaCha8Rng, s: &mut ParaproofStructure, mode: Mode) -> bool {
    match mode {
        Mode::Proof => {
            let mut pairs = Vec::new();
            for x in 0..s.classes.len() {
                for y in x + 1..s.classes.len() {
                    let fx: Vec<_> = s.classes[x].iter().map(|l| s.leaf_formula(l).cloned()).collect();
                    let fy: Vec<_> = s.classes[y].iter().map(|l| s.leaf_formula(l).cloned()).collect();
                    let mut a = fx.clone();
                    a.sort();
                    let mut b = fy.clone();
                    b.sort();
                    if a == b {
                        pairs.push((x, y));
                    }
                }
            }
            let Some(&(x, y)) = pairs.choose(rng) else { return false };
            let cx: Vec<_> = s.classes[x].iter().cloned().collect();
            let cy: Vec<_> = s.classes[y].iter().cloned().collect();
            // exchange the partners of the two leaves carrying the same formula
            let f0 = s.leaf_formula(&cx[0]).cloned();
            let (keep_x, give_x) = (cx[0].clone(), cx[1].clone());
            let (keep_y, give_y) = if s.leaf_formula(&cy[0]).cloned() == f0 { (cy[0].clone(), cy[1].clone()) } else { (cy[1].clone(), cy[0].clone()) };
            s.classes[x] = [keep_x, give_y].into();
            s.classes[y] = [keep_y, give_x].into();
            s.classes.sort();
            true
        }
        Mode::Paraproof => {
            let n = s.classes.len();
            let choice = rng.gen_range(0..3);
            if choice == 0 && n >= 2 {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                let moved = std::mem::take(&mut s.classes[b]);
                s.classes[a].extend(moved);
                s.classes.remove(b);
            } else {
                let big: Vec<usize> = (0..n).filter(|&k| s.classes[k].len() >= 2).collect();
                let Some(&k) = big.choose(rng) else { return false };
                let members: Vec<_> = s.classes[k].iter().cloned().collect();
                let l = members.choose(rng).expect("nonempty").clone();
                s.classes[k].remove(&l);
                if choice == 1 || n == 1 {
                    s.classes.push([l].into());
                } else {
                    let mut t = rng.gen_range(0..n - 1);
                    if t >= k {
                        t += 1;
                    }
                    s.classes[t].insert(l);
                }
            }
            s.classes.sort();
            true
        }
    }
}
