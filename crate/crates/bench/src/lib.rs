//! Workloads shared by the benches.

use locus_core::designs::{named, parse_design_list, Address};
use locus_core::mll::{generate, GenConfig, Mode};
use locus_core::{Design, Negative, Net, ParaproofStructure, Positive};

/// Seeded structures from the generator.
pub fn corpus(mode: Mode, leaves: usize, cuts: bool, n: u64) -> Vec<ParaproofStructure> {
    let mut cfg = GenConfig::new(mode, leaves);
    cfg.allow_cuts = cuts;
    cfg.min_cuts = usize::from(cuts);
    cfg.perturb = 0.5;
    (0..n).map(|seed| generate(seed, &cfg).structure).collect()
}

/// `k` rounds of `{1}` at `a`, then the daimon.
fn chain_pos(a: &str, k: usize) -> String {
    if k == 0 {
        return "dai".into();
    }
    let c = join(a, "1");
    format!("(+ {a} {{1}} (- {c} ({{1}} -> {})))", chain_pos(&join(&c, "1"), k - 1))
}

/// The partner of `chain_pos(a, k)`.
fn chain_neg(a: &str, k: usize) -> String {
    if k == 0 {
        return format!("(- {a})");
    }
    let c = join(a, "1");
    format!("(- {a} ({{1}} -> (+ {c} {{1}} {})))", chain_neg(&join(&c, "1"), k - 1))
}

fn join(a: &str, i: &str) -> String {
    if a == "." {
        i.into()
    } else {
        format!("{a}.{i}")
    }
}

fn designs(src: &str) -> Vec<Design> {
    parse_design_list(src).expect("bench designs parse").into_iter().map(|(d, _)| d).collect()
}

fn pos(d: &Design) -> Positive {
    match d {
        Design::Positive(p) => p.clone(),
        Design::Negative(_) => panic!("expected a positive design"),
    }
}

fn neg(d: &Design) -> Negative {
    match d {
        Design::Negative(n) => n.clone(),
        Design::Positive(_) => panic!("expected a negative design"),
    }
}

/// A closed pair converging after `2k` steps.
pub fn ping_pong(k: usize) -> (Positive, Negative) {
    let ds = designs(&format!("{}\n{}", chain_pos(".", k), chain_neg(".", k)));
    (pos(&ds[0]), neg(&ds[1]))
}

/// `chain_pos` on `⊢ 1` against a fax from 1 to 2 deep enough to copy it.
pub fn fax_net(k: usize) -> Net {
    let p = pos(&designs(&chain_pos("1", k))[0]);
    let one = Address::root().child(1);
    let two = Address::root().child(2);
    let f = named::fax(&one, &two, &named::alphabet(&[&[1]]), 2 * k + 1);
    Net::new(p, vec![f]).expect("fax net")
}

#[cfg(test)]
mod tests {
    use super::*;
    use locus_core::engine::{orthogonal, strong_normalize, weak_run, Frontier, Outcome};

    #[test]
    fn ping_pong_converges_after_2k_steps() {
        for k in [0, 1, 5] {
            let (p, n) = ping_pong(k);
            assert!(orthogonal(&p, &[n.clone()]).unwrap());
            let net = Net::new(p, vec![n]).unwrap();
            let r = weak_run(&net, 1000).unwrap();
            assert_eq!(r.outcome, Outcome::Daimon);
            assert_eq!(r.steps.len(), 2 * k);
        }
    }

    #[test]
    fn fax_copies_the_chain() {
        let nf = strong_normalize(&fax_net(3), &Frontier::default()).unwrap();
        assert!(!nf.truncated);
        assert_eq!(nf.design.to_string(), chain_pos("2", 3));
    }

    #[test]
    fn corpora_have_cuts_when_asked() {
        assert!(corpus(Mode::Proof, 10, true, 8).iter().all(|s| !s.cuts.is_empty()));
    }
}
