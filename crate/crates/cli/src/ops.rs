//! Commands as functions from options and input text to a document. The
//! binary and the service both go through here.

use std::collections::BTreeSet;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use locus_core::behaviours::{Additive, Behaviour, BehaviourError, Delocation, Universe, DEFAULT_CAP};
use locus_core::criteria::aj::DEFAULT_AJ_LEAF_CAP;
use locus_core::criteria::cp::DEFAULT_LEAF_CAP;
use locus_core::criteria::{check_acyclicity, check_aj, check_cp, check_dr, GuardError, Verdict, DEFAULT_PAR_CAP};
use locus_core::designs::{
    check_design, compare, minimal_base, named, parse_alphabet_text, parse_design_list, ram_text, Address, Base,
    Design, Negative, Order, Polarity, Ram,
};
use locus_core::engine::{
    orthogonal as orthogonal_net, strong_normalize, token_run, weak_run, Frontier, Net, DEFAULT_FUEL,
};
use locus_core::lambda::{address_name, design_to_term, slice_to_term, term_to_slice, NetTerms, Term};
use locus_core::mll::{generate, GenConfig, Mode, ParaproofStructure};
use locus_core::rewrite::{check_parsing, cut_normalize, sequentialize as seq, ParseMode, SequentializeError, DEFAULT_STATE_CAP};

use crate::doc::{Doc, InputError};

type Res = Result<Doc, InputError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Dr,
    Mix,
    Cp,
    Aj,
    ParseWeak,
    ParseStrong,
}

fn structure(src: &str) -> Result<ParaproofStructure, InputError> {
    Ok(ParaproofStructure::parse(src)?)
}

fn guard(e: GuardError) -> InputError {
    InputError::invalid(e)
}

fn verdict_doc(v: Verdict) -> Doc {
    let accepted = v.accepted;
    Doc::verdict(serde_json::to_value(&v).expect("verdicts serialize"), accepted)
}

pub fn check(c: Criterion, src: &str) -> Res {
    let s = structure(src)?;
    let v = match c {
        Criterion::Dr => check_dr(&s, DEFAULT_PAR_CAP),
        Criterion::Mix => check_acyclicity(&s, DEFAULT_PAR_CAP),
        Criterion::Cp => check_cp(&s, DEFAULT_LEAF_CAP),
        Criterion::Aj => check_aj(&s, DEFAULT_AJ_LEAF_CAP),
        Criterion::ParseWeak => check_parsing(&s, ParseMode::Weak, DEFAULT_STATE_CAP),
        Criterion::ParseStrong => check_parsing(&s, ParseMode::Strong, DEFAULT_STATE_CAP),
    }
    .map_err(guard)?;
    Ok(verdict_doc(v))
}

pub fn sequentialize(src: &str, mix: bool) -> Res {
    let s = structure(src)?;
    match seq(&s, mix, DEFAULT_STATE_CAP) {
        Ok(d) => Ok(Doc::new(json!({
            "sequentializable": true,
            "mix": mix,
            "rules": d.rule_count(),
            "derivation": d.to_string(),
        }))),
        Err(SequentializeError::Rejected(reason)) => {
            Ok(Doc::verdict(json!({ "sequentializable": false, "mix": mix, "reason": reason }), false))
        }
        Err(SequentializeError::Guard(g)) => Err(guard(g)),
    }
}

pub fn cut_elimination(src: &str, trace: bool) -> Res {
    let s = structure(src)?;
    let (nf, steps) = cut_normalize(&s, trace).map_err(InputError::invalid)?;
    let mut v = json!({
        "cut_free": nf.cuts.is_empty(),
        "normal_form": nf.to_string(),
    });
    if trace {
        v["steps"] = json!(steps.len());
        v["trace"] = json!(steps.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }
    Ok(Doc::new(v))
}

// ---- designs ----

fn design_list(src: &str) -> Result<Vec<(Design, Option<Base>)>, InputError> {
    Ok(parse_design_list(src)?)
}

fn one_design(src: &str) -> Result<(Design, Option<Base>), InputError> {
    let mut list = design_list(src)?;
    if list.len() != 1 {
        return Err(InputError::Invalid(format!("expected one design, found {}", list.len())));
    }
    Ok(list.remove(0))
}

pub fn alphabet(src: &str) -> Result<BTreeSet<Ram>, InputError> {
    Ok(parse_alphabet_text(src)?)
}

fn address(src: &str) -> Result<Address, InputError> {
    Ok(Address::parse(src)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    Obs,
    Left,
    Right,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Named {
    Dai,
    Skunk,
    DaiNeg,
    Ram,
    Dir,
    Fax,
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct NamedOpts {
    /// Address the design is based on.
    #[arg(long, default_value = ".")]
    #[serde(default = "root_text")]
    pub address: String,
    /// Ramification of the first action, for ram.
    #[arg(long)]
    #[serde(default)]
    pub ram: Option<String>,
    #[arg(long, default_value = "{1} {2}")]
    #[serde(default = "default_alphabet")]
    pub alphabet: String,
    /// Target address of a fax.
    #[arg(long)]
    #[serde(default)]
    pub to: Option<String>,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub depth: usize,
}

fn root_text() -> String {
    ".".into()
}

fn default_alphabet() -> String {
    "{1} {2}".into()
}

fn two() -> usize {
    2
}

fn two_u32() -> u32 {
    2
}

pub fn infer_base(src: &str) -> Res {
    let (d, _) = one_design(src)?;
    Ok(match minimal_base(&d) {
        Ok(b) => Doc::new(json!({ "design": d.to_string(), "typable": true, "base": b.to_string() })),
        Err(e) => Doc::verdict(json!({ "design": d.to_string(), "typable": false, "reason": e.to_string() }), false),
    })
}

pub fn check_typing(src: &str) -> Res {
    let (d, b) = one_design(src)?;
    let b = b.ok_or_else(|| InputError::invalid("expected `design : base`"))?;
    let ok = check_design(&d, &b);
    Ok(Doc::verdict(json!({ "design": d.to_string(), "base": b.to_string(), "typed": ok }), ok))
}

pub fn compare_designs(src: &str, order: OrderArg) -> Res {
    let list = design_list(src)?;
    let [(a, _), (b, _)] = <[_; 2]>::try_from(list).map_err(|l| InputError::Invalid(format!("expected two designs, found {}", l.len())))?;
    let (order, name) = match order {
        OrderArg::Obs => (Order::Obs, "obs"),
        OrderArg::Left => (Order::Left, "left"),
        OrderArg::Right => (Order::Right, "right"),
        OrderArg::Stable => (Order::Stable, "stable"),
    };
    let below = compare(&a, &b, order).map_err(InputError::invalid)?;
    Ok(Doc::verdict(json!({ "order": name, "first": a.to_string(), "second": b.to_string(), "below": below }), below))
}

pub fn named_design(which: Named, o: &NamedOpts) -> Res {
    let xi = address(&o.address)?;
    let alpha = alphabet(&o.alphabet)?;
    let d = match which {
        Named::Dai => Design::Positive(named::dai()),
        Named::Skunk => Design::Negative(named::skunk(xi)),
        Named::DaiNeg => Design::Negative(named::dai_neg(xi, &alpha)),
        Named::Ram => {
            let r = o.ram.as_deref().ok_or_else(|| InputError::invalid("ram needs --ram"))?;
            let r = locus_core::designs::parse_ram_text(r)?;
            Design::Positive(named::ram(xi, r, &alpha))
        }
        Named::Dir => Design::Negative(named::dir(&alpha)),
        Named::Fax => {
            let to = address(o.to.as_deref().ok_or_else(|| InputError::invalid("fax needs --to"))?)?;
            if !xi.disjoint(&to) {
                return Err(InputError::invalid("the two addresses of a fax must be disjoint"));
            }
            Design::Negative(named::fax(&xi, &to, &alpha, o.depth))
        }
    };
    let base = minimal_base(&d).map_err(InputError::invalid)?;
    Ok(Doc::new(json!({ "design": d.to_string(), "base": base.to_string() })))
}

// ---- nets ----

/// A principal positive design followed by its partners, each with an
/// optional `: base`.
pub fn net(src: &str) -> Result<Net, InputError> {
    let list = design_list(src)?;
    let mut it = list.into_iter();
    let (first, fb) = it.next().ok_or_else(|| InputError::invalid("empty net"))?;
    let Design::Positive(phi) = first else {
        return Err(InputError::invalid("the first design of a net must be positive"));
    };
    let mut partners = Vec::new();
    for (d, b) in it {
        match d {
            Design::Negative(n) => partners.push((n, b)),
            Design::Positive(p) => return Err(InputError::Invalid(format!("partner {p} is positive"))),
        }
    }
    let r = if fb.is_none() && partners.iter().all(|(_, b)| b.is_none()) {
        Net::new(phi, partners.into_iter().map(|(n, _)| n).collect())
    } else {
        let least = |d: Design| minimal_base(&d).map_err(InputError::invalid);
        let pb = match fb {
            Some(b) => b,
            None => least(Design::Positive(phi.clone()))?,
        };
        let mut ps = Vec::new();
        for (n, b) in partners {
            let b = match b {
                Some(b) => b,
                None => least(Design::Negative(n.clone()))?,
            };
            ps.push((n, b));
        }
        Net::with_bases((phi, pb), ps)
    };
    r.map_err(InputError::invalid)
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct NormalizeOpts {
    /// Strong reduction: explore every (i, J) at each head.
    #[arg(long)]
    #[serde(default)]
    pub strong: bool,
    /// Longest chronicle explored by strong reduction.
    #[arg(long)]
    #[serde(default)]
    pub depth: Option<usize>,
    /// Offer every ramification of this alphabet at heads, e.g. "{1} {1 2}".
    #[arg(long)]
    #[serde(default)]
    pub alphabet: Option<String>,
    /// (R) steps allowed along one branch.
    #[arg(long)]
    #[serde(default)]
    pub fuel: Option<usize>,
}

pub fn normalize(src: &str, o: &NormalizeOpts) -> Res {
    let n = net(src)?;
    let fuel = o.fuel.unwrap_or(DEFAULT_FUEL);
    if !o.strong {
        let run = weak_run(&n, fuel).map_err(InputError::invalid)?;
        let steps: Vec<String> = run.steps.iter().map(|(f, r)| format!("{} {}", f, ram_text(r))).collect();
        return Ok(Doc::new(json!({ "mode": "weak", "outcome": run.outcome, "steps": steps })));
    }
    let mut frontier = Frontier { fuel, ..Frontier::default() };
    if let Some(d) = o.depth {
        frontier.depth = d;
    }
    if let Some(a) = &o.alphabet {
        frontier.alphabet = Some(alphabet(a)?);
    }
    let nf = strong_normalize(&n, &frontier).map_err(InputError::invalid)?;
    Ok(Doc::new(json!({
        "mode": "strong",
        "design": nf.design.to_string(),
        "chronicles": nf.chronicles,
        "truncated": nf.truncated,
    })))
}

pub fn orthogonal(src: &str, token: bool) -> Res {
    let n = net(src)?;
    let partners: Vec<Negative> = n.partners.iter().map(|(p, _)| p.clone()).collect();
    let ok = orthogonal_net(&n.principal, &partners).map_err(InputError::invalid)?;
    let mut v = json!({ "orthogonal": ok });
    if token {
        let [psi] = partners.as_slice() else {
            return Err(InputError::invalid("the token machine runs on a pair ⊢ξ, ξ⊢"));
        };
        let run = token_run(&n.principal, psi).map_err(InputError::invalid)?;
        v["token"] = json!({
            "outcome": run.outcome,
            "trace": run.trace.iter().map(|(p, a)| format!("{p} {a}")).collect::<Vec<_>>(),
            "pullback": { "positive": run.pullback.0.to_string(), "negative": run.pullback.1.to_string() },
        });
    }
    Ok(Doc::verdict(v, ok))
}

// ---- behaviours ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BehaviourOp {
    Biorth,
    Incarnation,
    Directory,
    With,
    Plus,
    Delocate,
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct UniverseOpts {
    /// Base address of the universe.
    #[arg(long, default_value = ".")]
    #[serde(default = "root_text")]
    pub base: String,
    #[arg(long, default_value = "{1} {2}")]
    #[serde(default = "default_alphabet")]
    pub alphabet: String,
    /// Longest chronicle, in actions.
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub depth: usize,
    /// Delocation `i -> k*i + offset` on the first bias below the base.
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two_u32")]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub offset: u32,
}

/// Universe size cap, from `LOCUS_UNIVERSE_CAP` when set.
pub fn universe_cap() -> usize {
    std::env::var("LOCUS_UNIVERSE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// Input sections are separated by lines holding `---`.
fn sections(src: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    for line in src.lines() {
        if line.trim() == "---" {
            out.push(String::new());
        } else {
            let cur = out.last_mut().expect("nonempty");
            cur.push_str(line);
            cur.push('\n');
        }
    }
    out
}

fn designs_of(src: &str) -> Result<Vec<Design>, InputError> {
    Ok(design_list(src)?.into_iter().map(|(d, _)| d).collect())
}

fn polarity_of(ds: &[Design]) -> Result<Polarity, InputError> {
    let p = |d: &Design| match d {
        Design::Positive(_) => Polarity::Positive,
        Design::Negative(_) => Polarity::Negative,
    };
    let first = ds.first().ok_or_else(|| InputError::invalid("no generators"))?;
    if ds.iter().any(|d| p(d) != p(first)) {
        return Err(InputError::invalid("generators of mixed polarity"));
    }
    Ok(p(first))
}

fn closure(u: &Universe, src: &str) -> Result<Behaviour, InputError> {
    let gens = designs_of(src)?;
    let pol = polarity_of(&gens)?;
    u.biorthogonal(&gens, pol).map_err(InputError::invalid)
}

fn behaviour_failure(e: BehaviourError) -> Res {
    match e {
        BehaviourError::NotDisjoint(_) | BehaviourError::NotInternallyComplete | BehaviourError::NotMember(_) => {
            Ok(Doc::verdict(json!({ "ok": false, "reason": e.to_string() }), false))
        }
        e => Err(InputError::invalid(e)),
    }
}

pub fn behaviour(op: BehaviourOp, src: &str, o: &UniverseOpts) -> Res {
    let xi = address(&o.base)?;
    let parts = sections(src);
    let need = match op {
        BehaviourOp::Incarnation | BehaviourOp::With | BehaviourOp::Plus => 2,
        _ => 1,
    };
    if parts.len() != need {
        return Err(InputError::Invalid(format!("expected {need} section(s) separated by ---, found {}", parts.len())));
    }
    if op == BehaviourOp::Delocate {
        let ds = designs_of(&parts[0])?;
        let theta = Delocation::tagging(xi, o.k, o.offset);
        if let Err(e) = theta.validate(&ds) {
            return Ok(Doc::verdict(json!({ "ok": false, "reason": e.to_string() }), false));
        }
        let out: Vec<String> = ds.iter().map(|d| theta.design(d).expect("validated").to_string()).collect();
        return Ok(Doc::new(json!({ "ok": true, "designs": out })));
    }
    let u = Universe::new(xi, alphabet(&o.alphabet)?, o.depth, universe_cap()).map_err(InputError::invalid)?;
    let summary = |g: &Behaviour| u.summary_of(g).map_err(InputError::invalid);
    match op {
        BehaviourOp::Biorth => Ok(Doc::of(&summary(&closure(&u, &parts[0])?)?)),
        BehaviourOp::Directory => {
            let g = closure(&u, &parts[0])?;
            let dual = u.dual(&g).map_err(InputError::invalid)?;
            let text = |s: BTreeSet<Ram>| s.iter().map(ram_text).collect::<Vec<_>>();
            let d = u.directory(&g).map_err(InputError::invalid)?;
            let dd = u.directory(&dual).map_err(InputError::invalid)?;
            Ok(Doc::new(json!({ "directory": text(d), "dual_directory": text(dd) })))
        }
        BehaviourOp::Incarnation => {
            let (d, _) = one_design(&parts[0])?;
            let g = closure(&u, &parts[1])?;
            match u.incarnation(&d, &g) {
                Ok(inc) => Ok(Doc::new(json!({ "design": d.to_string(), "incarnation": inc.to_string() }))),
                Err(e) => behaviour_failure(e),
            }
        }
        BehaviourOp::With | BehaviourOp::Plus => {
            let g = closure(&u, &parts[0])?;
            let h = closure(&u, &parts[1])?;
            let a = if op == BehaviourOp::With { Additive::With } else { Additive::Plus };
            match u.additive(&g, &h, a) {
                Ok(r) => Ok(Doc::of(&summary(&r)?)),
                Err(e) => behaviour_failure(e),
            }
        }
        BehaviourOp::Delocate => unreachable!("handled above"),
    }
}

// ---- terms ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaOp {
    ToTerm,
    ToSlice,
    Run,
}

pub fn lambda(op: LambdaOp, src: &str, base: Option<&str>, fuel: Option<usize>) -> Res {
    let fail = |e: locus_core::lambda::LambdaError| Doc::verdict(json!({ "ok": false, "reason": e.to_string() }), false);
    match op {
        LambdaOp::ToTerm => {
            let (d, b) = one_design(src)?;
            let b = match (b, base) {
                (Some(b), _) => b,
                (None, Some(s)) => Base::parse(s)?,
                (None, None) => minimal_base(&d).map_err(InputError::invalid)?,
            };
            let r = if d.is_slice() {
                slice_to_term(&d, &b)
            } else {
                let names = b.right.iter().map(|a| (a.clone(), address_name(a))).collect();
                design_to_term(&d, &names)
            };
            Ok(match r {
                Ok(t) => Doc::new(json!({ "term": t.to_string(), "slice": d.is_slice(), "base": b.to_string() })),
                Err(e) => fail(e),
            })
        }
        LambdaOp::ToSlice => {
            let b = Base::parse(base.ok_or_else(|| InputError::invalid("to-slice needs --base"))?)?;
            let t = Term::parse(src)?;
            Ok(match term_to_slice(&t, &b) {
                Ok(d) => Doc::new(json!({ "design": d.to_string(), "base": b.to_string() })),
                Err(e) => fail(e),
            })
        }
        LambdaOp::Run => {
            let n = net(src)?;
            let terms = NetTerms::new(&n).map_err(InputError::invalid)?;
            let run = match terms.run(fuel.unwrap_or(DEFAULT_FUEL)) {
                Ok(r) => r,
                Err(e) => return Ok(fail(e)),
            };
            let partners: Vec<Value> =
                terms.partners.iter().map(|(a, t)| json!({ "address": a.to_string(), "term": t.to_string() })).collect();
            let steps: Vec<String> = run.steps.iter().map(|(x, r)| format!("{} {}", x, ram_text(r))).collect();
            Ok(Doc::new(json!({
                "principal": terms.principal.to_string(),
                "partners": partners,
                "outcome": run.outcome,
                "steps": steps,
            })))
        }
    }
}

// ---- corpora ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    Proof,
    Paraproof,
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct GenOpts {
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    /// Structures generated, from seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    #[serde(default = "one")]
    pub count: u64,
    #[arg(long, value_enum, default_value = "paraproof")]
    #[serde(default = "paraproof")]
    pub mode: GenMode,
    #[arg(long, default_value_t = 8)]
    #[serde(default = "eight")]
    pub leaves: usize,
    #[arg(long)]
    #[serde(default)]
    pub cuts: bool,
    /// Probability of an adversarial perturbation.
    #[arg(long, default_value_t = 0.0)]
    #[serde(default)]
    pub perturb: f64,
}

fn one() -> u64 {
    1
}

fn paraproof() -> GenMode {
    GenMode::Paraproof
}

fn eight() -> usize {
    8
}

pub fn gen(o: &GenOpts) -> Res {
    let mode = match o.mode {
        GenMode::Proof => Mode::Proof,
        GenMode::Paraproof => Mode::Paraproof,
    };
    let mut cfg = GenConfig::new(mode, o.leaves.max(1));
    cfg.allow_cuts = o.cuts;
    cfg.perturb = o.perturb;
    let mut hash = Sha256::new();
    let mut out = Vec::new();
    for seed in o.seed..o.seed + o.count {
        let g = generate(seed, &cfg);
        let text = g.structure.to_string();
        hash.update(text.as_bytes());
        out.push(json!({ "seed": seed, "perturbed": g.perturbed, "structure": text }));
    }
    let digest: String = hash.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Ok(Doc::new(json!({ "structures": out, "digest": digest })))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLE: &str = "tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n";

    #[test]
    fn criteria() {
        let ax = "tree 0: C @ {.}\ntree 1: C^ @ {.}\nclass {0:., 1:.}\n";
        for c in [Criterion::Dr, Criterion::Mix, Criterion::Cp, Criterion::Aj, Criterion::ParseWeak, Criterion::ParseStrong] {
            assert_eq!(check(c, ax).unwrap().exit_code(), 0, "{c:?}");
            assert_eq!(check(c, CYCLE).unwrap().exit_code(), 1, "{c:?}");
        }
        let d = check(Criterion::Dr, CYCLE).unwrap();
        assert_eq!(d.value["witness"]["kind"], "cycle");
    }

    #[test]
    fn input_errors() {
        assert!(matches!(check(Criterion::Dr, "tree 0: (C *"), Err(InputError::Parse(_))));
        assert!(matches!(normalize("(- . )", &NormalizeOpts::default()), Err(InputError::Invalid(_))));
    }

    #[test]
    fn strong_normal_form_of_ram_against_dai() {
        let src = "(+ . {1} (- 1 ({1} -> dai) ({2} -> dai))) (- . ({1} -> dai))";
        let d = normalize(src, &NormalizeOpts { strong: true, ..Default::default() }).unwrap();
        assert_eq!(d.value["chronicles"], json!(["dai"]));
        let d = normalize(src, &NormalizeOpts::default()).unwrap();
        assert_eq!(d.value["outcome"]["kind"], "daimon");
    }

    #[test]
    fn named_and_typing() {
        let o = NamedOpts { address: "1".into(), ram: Some("{1 2}".into()), alphabet: "{1}".into(), to: None, depth: 2 };
        let d = named_design(Named::Ram, &o).unwrap();
        assert_eq!(d.value["base"], "|- 1");
        let typed = check_typing(&format!("{} : {}", d.value["design"].as_str().unwrap(), "|- 1")).unwrap();
        assert_eq!(typed.exit_code(), 0);
        let cmp = compare_designs("dai omega", OrderArg::Obs).unwrap();
        assert_eq!(cmp.exit_code(), 1);
        assert_eq!(compare_designs("omega dai", OrderArg::Obs).unwrap().exit_code(), 0);
    }

    #[test]
    fn behaviours_and_terms() {
        let o = UniverseOpts { base: ".".into(), alphabet: "{1} {2}".into(), depth: 2, k: 2, offset: 0 };
        let d = behaviour(BehaviourOp::Directory, "(+ . {1})", &o).unwrap();
        assert_eq!(d.value["directory"], d.value["dual_directory"]);
        assert!(behaviour(BehaviourOp::Plus, "(+ . {1})", &o).is_err());
        let t = lambda(LambdaOp::ToTerm, "(+ . {1 2} (- 1 ({1} -> (+ 1.1 {1}))) (- 2 ({1} -> dai)))", None, None).unwrap();
        assert_eq!(t.value["term"], "v{\\{x0}.x0{{}} \\{x1}.dai}");
        let back = lambda(LambdaOp::ToSlice, t.value["term"].as_str().unwrap(), Some("|- ."), None).unwrap();
        assert_eq!(back.value["design"], "(+ . {1 2} (- 1 ({1} -> (+ 1.1 {1} (- 1.1.1)))) (- 2 ({1} -> dai)))");
    }

    #[test]
    fn corpora_are_stable() {
        let o = GenOpts { seed: 7, count: 3, mode: GenMode::Paraproof, leaves: 8, cuts: true, perturb: 0.5 };
        assert_eq!(gen(&o).unwrap(), gen(&o).unwrap());
    }
}
