use std::collections::BTreeSet;

use locus_core::designs::named::{alphabet, skunk};
use locus_core::designs::{
    compare_positive, from_chronicles, sub_negatives, sub_positives, Address, Base, Chronicle, Design, DesignGen,
    Enumerator, Negative, Order, Positive, Ram,
};
use locus_core::engine::{
    normal_form, orth, separation_witness, strong_normalize, token_run, weak_run, Frontier, Net, Outcome,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a(v: &[u32]) -> Address {
    Address::from_slice(v)
}

fn set(v: &[Address]) -> BTreeSet<Address> {
    v.iter().cloned().collect()
}

fn small_alphabet() -> BTreeSet<Ram> {
    alphabet(&[&[1], &[2], &[1, 2]])
}

fn closed_pair(seed: u64, depth: usize) -> (Positive, Negative) {
    let g = DesignGen::new(&small_alphabet(), depth);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = g.positive(&mut rng, &set(&[Address::root()]));
    let psi = g.negative(&mut rng, &Address::root(), &BTreeSet::new());
    (phi, psi)
}

fn intersect(x: &Positive, y: &Positive, base: &Base) -> Positive {
    let cs: BTreeSet<Chronicle> = x.chronicles().intersection(&y.chronicles()).cloned().collect();
    match from_chronicles(&cs, base).expect("intersection of designs on a common base") {
        Design::Positive(p) => p,
        Design::Negative(_) => unreachable!(),
    }
}

fn intersect_neg(x: &Negative, y: &Negative, base: &Base) -> Negative {
    let cs: BTreeSet<Chronicle> = x.chronicles().intersection(&y.chronicles()).cloned().collect();
    match from_chronicles(&cs, base).expect("intersection of designs on a common base") {
        Design::Negative(n) => n,
        Design::Positive(_) => unreachable!(),
    }
}

fn balanced(phi: &Positive, psi: &Negative) -> bool {
    let l: BTreeSet<_> = phi.actions().into_keys().map(|x| x.opposite()).collect();
    let r: BTreeSet<_> = psi.actions().into_keys().collect();
    l == r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_nets_never_stop_at_a_head(seed in any::<u64>()) {
        let (phi, psi) = closed_pair(seed, 6);
        let net = Net::new(phi, vec![psi]).unwrap();
        let run = weak_run(&net, 10_000).unwrap();
        prop_assert!(matches!(run.outcome, Outcome::Daimon | Outcome::SyntacticOmega));
    }

    #[test]
    fn token_machine_agrees_with_weak_reduction(seed in any::<u64>()) {
        let (phi, psi) = closed_pair(seed, 6);
        let tok = token_run(&phi, &psi).unwrap();
        let net = Net::new(phi.clone(), vec![psi.clone()]).unwrap();
        prop_assert_eq!(&tok.outcome, &weak_run(&net, 10_000).unwrap().outcome);
        // pull-backs are slices and stay inside the designs
        let (p0, n0) = &tok.pullback;
        prop_assert!(p0.is_slice() && n0.is_slice());
        prop_assert!(p0.chronicles().is_subset(&phi.chronicles()));
        prop_assert!(n0.chronicles().is_subset(&psi.chronicles()));
        if tok.outcome == Outcome::Daimon {
            prop_assert!(balanced(p0, n0));
            // a balanced slice pair is visited entirely
            let again = token_run(p0, n0).unwrap();
            prop_assert_eq!(&again.pullback, &tok.pullback);
            prop_assert_eq!(again.outcome, Outcome::Daimon);
        }
    }

    #[test]
    fn associativity(seed in any::<u64>(), split in 0u8..4) {
        let g = DesignGen::new(&small_alphabet(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = g.positive(&mut rng, &set(&[a(&[1]), a(&[2])]));
        let psi1 = g.negative(&mut rng, &a(&[1]), &set(&[a(&[3])]));
        let psi2 = g.negative(&mut rng, &a(&[2]), &BTreeSet::new());
        let psi3 = g.negative(&mut rng, &a(&[3]), &BTreeSet::new());
        let (first, second): (Vec<Negative>, Vec<Negative>) = match split {
            0 => (vec![psi1.clone()], vec![psi2.clone(), psi3.clone()]),
            1 => (vec![psi1.clone(), psi3.clone()], vec![psi2.clone()]),
            2 => (vec![psi2.clone()], vec![psi1.clone(), psi3.clone()]),
            _ => (vec![psi1.clone()], vec![psi2.clone()]),
        };
        let all: Vec<Negative> = first.iter().chain(&second).cloned().collect();
        let inner = normal_form(&phi, &first).unwrap();
        let lhs = normal_form(&inner, &second).unwrap();
        let rhs = normal_form(&phi, &all).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monotonicity(seed in any::<u64>()) {
        let g = DesignGen::new(&small_alphabet(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let avail = set(&[a(&[1]), a(&[2])]);
        let phi1 = g.positive(&mut rng, &avail);
        let phi2 = g.increase(&mut rng, &phi1, &avail);
        let ctx = set(&[a(&[3])]);
        let psi1 = g.negative(&mut rng, &a(&[1]), &ctx);
        let psi2 = g.increase_neg(&mut rng, &psi1, &ctx);
        prop_assert!(compare_positive(&phi1, &phi2, Order::Obs));
        let n1 = normal_form(&phi1, &[psi1]).unwrap();
        let n2 = normal_form(&phi2, &[psi2]).unwrap();
        prop_assert!(compare_positive(&n1, &n2, Order::Obs), "{} vs {}", n1, n2);
    }

    #[test]
    fn stable_intersection(seed in any::<u64>(), picks in any::<[u64; 4]>()) {
        let (phi, psi) = closed_pair(seed, 4);
        let (ps, ns) = match (sub_positives(&phi, 2000), sub_negatives(&psi, 2000)) {
            (Ok(p), Ok(n)) => (p, n),
            _ => return Ok(()),
        };
        let pick = |k: usize, n: usize| (picks[k] % n as u64) as usize;
        let (p1, p2) = (&ps[pick(0, ps.len())], &ps[pick(1, ps.len())]);
        let (m1, m2) = (&ns[pick(2, ns.len())], &ns[pick(3, ns.len())]);
        let pb = Base::positive([Address::root()]);
        let nb = Base::negative(Address::root(), []);
        let lhs = orth(&intersect(p1, p2, &pb), &intersect_neg(m1, m2, &nb));
        prop_assert_eq!(lhs, orth(p1, m1) && orth(p2, m2));
    }
}

/// The pull-back of ✠ is the least pair of sub-designs that still converge.
#[test]
fn pullback_is_the_least_converging_sub_pair() {
    let mut checked = 0;
    for seed in 0..400 {
        let (phi, psi) = closed_pair(seed, 3);
        if !orth(&phi, &psi) {
            continue;
        }
        let (p0, n0) = token_run(&phi, &psi).unwrap().pullback;
        let ps = sub_positives(&phi, 5000).unwrap();
        let ns = sub_negatives(&psi, 5000).unwrap();
        let (c0, d0) = (p0.chronicles(), n0.chronicles());
        assert!(orth(&p0, &n0));
        for p in &ps {
            for n in &ns {
                if orth(p, n) {
                    assert!(c0.is_subset(&p.chronicles()), "seed {seed}: {p0} not below {p}");
                    assert!(d0.is_subset(&n.chronicles()), "seed {seed}: {n0} not below {n}");
                }
            }
        }
        checked += 1;
    }
    assert!(checked > 50, "only {checked} converging pairs");
}

#[test]
fn only_daimon_meets_the_skunk() {
    let r = alphabet(&[&[1], &[2], &[1, 2]]);
    let all = Enumerator { alphabet: &r, cap: 1_000_000 }.positives(&set(&[Address::root()]), 3).unwrap();
    let z = skunk(Address::root());
    let hits: Vec<&Positive> = all.iter().filter(|p| orth(p, &z)).collect();
    assert_eq!(hits, vec![&Positive::Daimon]);
}

/// `φ₁ ⊑ φ₂` iff every counter-design of `φ₁` is one of `φ₂`, at depth 3.
#[test]
fn separation_at_bounded_depth() {
    let r = alphabet(&[&[1], &[2]]);
    let e = Enumerator { alphabet: &r, cap: 1_000_000 };
    let pos = e.positives(&set(&[Address::root()]), 3).unwrap();
    let neg = e.negatives(&Address::root(), &BTreeSet::new(), 3).unwrap();
    let orths: Vec<Vec<bool>> = pos.iter().map(|p| neg.iter().map(|n| orth(p, n)).collect()).collect();
    for (x, p1) in pos.iter().enumerate() {
        for (y, p2) in pos.iter().enumerate() {
            let below = compare_positive(p1, p2, Order::Obs);
            let inclusion = (0..neg.len()).all(|k| !orths[x][k] || orths[y][k]);
            assert_eq!(below, inclusion, "{p1} vs {p2}");
            let w = separation_witness(p1, p2, &Address::root()).unwrap();
            assert_eq!(w.is_none(), below);
            if let Some(w) = w {
                assert!(orth(p1, &w) && !orth(p2, &w), "{p1} vs {p2} by {w}");
            }
        }
    }
}

#[test]
fn random_incomparable_pairs_are_separated() {
    let mut found = 0;
    for seed in 0..300 {
        let (p1, _) = closed_pair(seed, 3);
        let (p2, _) = closed_pair(seed + 10_000, 3);
        if let Some(w) = separation_witness(&p1, &p2, &Address::root()).unwrap() {
            assert!(orth(&p1, &w) && !orth(&p2, &w));
            found += 1;
        }
    }
    assert!(found > 100);
}

/// Partners cut against weakened addresses do not change the normal form.
#[test]
fn weakening_partners() {
    let g = DesignGen::new(&small_alphabet(), 5);
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = [a(&[1]), a(&[2])];
        let big = [a(&[1]), a(&[2]), a(&[3]), a(&[4])];
        let phi = g.positive(&mut rng, &set(&small));
        let psis: Vec<(Negative, Base)> = big
            .iter()
            .map(|x| (g.negative(&mut rng, x, &BTreeSet::new()), Base::negative(x.clone(), [])))
            .collect();
        let lhs = Net::with_bases((phi.clone(), Base::positive(small.clone())), psis[..2].to_vec()).unwrap();
        let rhs = Net::with_bases((phi, Base::positive(big.clone())), psis).unwrap();
        assert!(rhs.validate().unwrap().unreachable.is_empty());
        let f = Frontier::default();
        assert_eq!(strong_normalize(&lhs, &f).unwrap(), strong_normalize(&rhs, &f).unwrap());
    }
}

/// `⟦φ,ψ⟧` is the only `φ′` on `⊢λ` (among enumerated ones) with
/// `⟦φ′,ψ′⟧ = ⟦φ,{ψ,ψ′}⟧` for every enumerated `ψ′`.
#[test]
fn closure_principle() {
    let r = alphabet(&[&[1], &[2]]);
    let e = Enumerator { alphabet: &r, cap: 1_000_000 };
    let lambda = a(&[2]);
    let candidates = e.positives(&set(&[lambda.clone()]), 3).unwrap();
    let tests = e.negatives(&lambda, &BTreeSet::new(), 3).unwrap();
    let g = DesignGen::new(&r, 4);
    let mut checked = 0;
    for seed in 0..60 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = g.positive(&mut rng, &set(&[a(&[1])]));
        let psi = g.negative(&mut rng, &a(&[1]), &set(&[lambda.clone()]));
        let nf = normal_form(&phi, &[psi.clone()]).unwrap();
        if !candidates.contains(&nf) {
            continue;
        }
        let target: Vec<bool> = tests.iter().map(|t| orth_or_nf(&phi, &[psi.clone(), t.clone()])).collect();
        let fits: Vec<&Positive> = candidates
            .iter()
            .filter(|c| tests.iter().zip(&target).all(|(t, want)| orth(c, t) == *want))
            .collect();
        assert_eq!(fits, vec![&nf], "seed {seed}");
        checked += 1;
    }
    assert!(checked > 20, "only {checked} normal forms within the enumeration");
}

fn orth_or_nf(phi: &Positive, partners: &[Negative]) -> bool {
    normal_form(phi, partners).unwrap().is_daimon()
}
