use std::collections::{BTreeMap, BTreeSet};

use locus_core::designs::named::alphabet;
use locus_core::designs::{check_design, Address, Base, Design, DesignGen, Negative, Positive, Ram};
use locus_core::engine::{weak_run, Net, Outcome as EngineOutcome};
use locus_core::lambda::{
    affine_check, canonical, design_to_term, fax_term, machine_normalize, rename_free, slice_to_term, term_to_design,
    term_to_slice, Closure, Env, Lambda, NegTerm, NetTerms, Outcome, PosTerm, Term, Value,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a(v: &[u32]) -> Address {
    Address::from_slice(v)
}

fn rams() -> BTreeSet<Ram> {
    alphabet(&[&[1], &[2], &[1, 2]])
}

fn slice_pos<R: Rng>(rng: &mut R, p: &Positive) -> Positive {
    match p {
        Positive::Proper { focus, ram, children } => Positive::Proper {
            focus: focus.clone(),
            ram: ram.clone(),
            children: children.iter().map(|(i, n)| (*i, slice_neg(rng, n))).collect(),
        },
        other => other.clone(),
    }
}

fn slice_neg<R: Rng>(rng: &mut R, n: &Negative) -> Negative {
    let keys: Vec<&Ram> = n.branches.keys().collect();
    if keys.is_empty() {
        return n.clone();
    }
    let j = keys[rng.gen_range(0..keys.len())].clone();
    let p = slice_pos(rng, &n.branches[&j]);
    Negative::new(n.focus.clone(), [(j, p)])
}

fn random_term<R: Rng>(rng: &mut R, depth: usize, scope: &mut Vec<String>, rams: &[Ram]) -> PosTerm {
    let roll: f64 = rng.gen();
    if depth == 0 || scope.is_empty() || roll < 0.2 {
        return if rng.gen_bool(0.5) { PosTerm::Daimon } else { PosTerm::Omega };
    }
    let head = scope[rng.gen_range(0..scope.len())].clone();
    let ram = rams[rng.gen_range(0..rams.len())].clone();
    let args = ram
        .iter()
        .map(|_| {
            let mut branches = BTreeMap::new();
            for j in rams {
                if rng.gen_bool(0.4) {
                    // a small name pool, so shadowing happens
                    let vars: Vec<String> = (0..j.len()).map(|k| format!("x{}", (k + rng.gen_range(0..3)) % 4)).collect();
                    let mut vs = vars.clone();
                    vs.sort();
                    vs.dedup();
                    if vs.len() != vars.len() {
                        continue;
                    }
                    let before = scope.len();
                    scope.extend(vars.iter().cloned());
                    let body = random_term(rng, depth - 1, scope, rams);
                    scope.truncate(before);
                    branches.insert(j.clone(), Lambda { vars, body });
                }
            }
            NegTerm::new(branches)
        })
        .collect();
    PosTerm::App { head, ram, args }
}

fn engine_outcome(o: &EngineOutcome) -> Outcome {
    match o {
        EngineOutcome::Daimon => Outcome::Daimon,
        EngineOutcome::SyntacticOmega => Outcome::SyntacticOmega,
        EngineOutcome::CreatedOmega => Outcome::CreatedOmega,
        EngineOutcome::Head { .. } => panic!("closed nets do not stop at a head"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn slices_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DesignGen::new(&rams(), 4);
        let ctx: BTreeSet<Address> = [a(&[3])].into();
        let (d, b) = if rng.gen_bool(0.5) {
            let avail: BTreeSet<Address> = [a(&[4]), a(&[3])].into();
            let full = g.positive(&mut rng, &avail);
            let p = slice_pos(&mut rng, &full);
            (Design::Positive(p), Base::positive(avail))
        } else {
            let full = g.negative(&mut rng, &a(&[4]), &ctx);
            let n = slice_neg(&mut rng, &full);
            (Design::Negative(n), Base::negative(a(&[4]), ctx))
        };
        prop_assert!(d.is_slice());
        let t = slice_to_term(&d, &b).unwrap();
        prop_assert!(affine_check(&t));
        prop_assert_eq!(&term_to_slice(&t, &b).unwrap(), &d);
        // and the other way, from a renamed copy of the term
        let t2 = canonical(&t);
        let back = slice_to_term(&term_to_slice(&t2, &b).unwrap(), &b).unwrap();
        prop_assert_eq!(canonical(&back), t2);
    }

    #[test]
    fn designs_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DesignGen::new(&rams(), 4);
        let avail: BTreeSet<Address> = [a(&[1]), a(&[2])].into();
        let p = g.positive(&mut rng, &avail);
        let names: BTreeMap<Address, String> = [(a(&[1]), "f".to_string()), (a(&[2]), "g".to_string())].into();
        let scope: BTreeMap<String, Address> = names.iter().map(|(x, v)| (v.clone(), x.clone())).collect();
        let t = design_to_term(&Design::Positive(p.clone()), &names).unwrap();
        prop_assert_eq!(t.is_slice(), p.is_slice());
        prop_assert_eq!(term_to_design(&t, None, &scope).unwrap(), Design::Positive(p));
    }

    #[test]
    fn affine_check_agrees_with_typing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rams: Vec<Ram> = rams().into_iter().collect();
        let mut scope = vec!["f".to_string(), "g".to_string()];
        let p = random_term(&mut rng, 4, &mut scope, &rams);
        let t = Term::Pos(p);
        let places: BTreeMap<String, Address> = [("f".to_string(), a(&[1])), ("g".to_string(), a(&[2]))].into();
        let typed = term_to_design(&t, None, &places);
        prop_assert_eq!(affine_check(&t), typed.is_ok(), "{} gave {:?}", t, typed);
        if let Ok(d) = typed {
            prop_assert!(check_design(&d, &Base::positive([a(&[1]), a(&[2])])));
        }
    }

    #[test]
    fn machine_agrees_with_weak_reduction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DesignGen::new(&rams(), 4);
        // ⊢ 1,2 against 1 ⊢ 3, 2 ⊢ and 3 ⊢
        let phi = g.positive(&mut rng, &[a(&[1]), a(&[2])].into());
        let p1 = g.negative(&mut rng, &a(&[1]), &[a(&[3])].into());
        let p2 = g.negative(&mut rng, &a(&[2]), &BTreeSet::new());
        let p3 = g.negative(&mut rng, &a(&[3]), &BTreeSet::new());
        let net = Net::with_bases(
            (phi, Base::positive([a(&[1]), a(&[2])])),
            vec![
                (p1, Base::negative(a(&[1]), [a(&[3])])),
                (p2, Base::negative(a(&[2]), [])),
                (p3, Base::negative(a(&[3]), [])),
            ],
        ).unwrap();
        let engine = weak_run(&net, 1000).unwrap();
        let terms = NetTerms::new(&net).unwrap();
        let run = terms.run(1000).unwrap();
        prop_assert_eq!(&run.outcome, &engine_outcome(&engine.outcome));
        let rams: Vec<&Ram> = run.steps.iter().map(|(_, r)| r).collect();
        let erams: Vec<&Ram> = engine.steps.iter().map(|(_, r)| r).collect();
        prop_assert_eq!(rams, erams);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fax_is_a_renaming(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rams();
        let g = DesignGen::new(&r, 3);
        let avail: BTreeSet<Address> = [a(&[7]), a(&[8])].into();
        let p = g.positive(&mut rng, &avail);
        let names: BTreeMap<Address, String> = [(a(&[7]), "x'".to_string()), (a(&[8]), "w".to_string())].into();
        let t = match design_to_term(&Design::Positive(p.clone()), &names).unwrap() {
            Term::Pos(t) => t,
            Term::Neg(_) => unreachable!(),
        };
        let alphabet: Vec<Ram> = r.into_iter().collect();
        let fax = fax_term("x", &alphabet, p.depth() + 1, &mut 0);
        let out = Env::empty().bind("x", Value::Free("x".into()));
        let env = Env::empty()
            .bind("w", Value::Free("w".into()))
            .bind("x'", Value::Closure(Closure { term: &fax, env: out }));
        let nf = machine_normalize(&t, env, 100_000).unwrap();
        prop_assert!(!nf.exhausted);
        let expected = rename_free(&t, "x'", "x");
        prop_assert_eq!(canonical(&Term::Pos(nf.term)), canonical(&Term::Pos(expected)));
    }
}

#[test]
fn shallow_fax_truncates() {
    let p = PosTerm::parse("x'{\\{a}.a{\\{b}.dai}}").unwrap();
    let alphabet: Vec<Ram> = vec![[1].into()];
    for (depth, text) in [(1, "x{{}}"), (2, "x{{}}"), (3, "x{\\{_0}._0{{}}}"), (4, "x{\\{_0}._0{\\{_1}.dai}}")] {
        let fax = fax_term("x", &alphabet, depth, &mut 0);
        let out = Env::empty().bind("x", Value::Free("x".into()));
        let env = Env::empty().bind("x'", Value::Closure(Closure { term: &fax, env: out }));
        assert_eq!(machine_normalize(&p, env, 100).unwrap().term.to_string(), text, "depth {depth}");
    }
}
