//! Terms with named variables and their text format.
//!
//! `\{x y}.P` binds one variable per bias of `{1 2}`; `\{x y}@{1 3}.P` names
//! the biases. `x{M N}` is `(x·{1 2}){M, N}` and `x{M N}@{2 5}` names them.
//! A negative with several branches is written `{{1} = \{x}.P; {2} = \{y}.Q}`
//! and `{}` has none.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::designs::{ram_text, Ram};
use crate::designs::address::parse_ram;
use crate::text::{Cursor, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosTerm {
    Omega,
    Daimon,
    /// `(x·I){M_i | i ∈ I}`, arguments in increasing bias order.
    App { head: String, ram: Ram, args: Vec<NegTerm> },
}

/// `λ{x_j | j ∈ J}.P`, variables in increasing bias order of `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lambda {
    pub vars: Vec<String>,
    pub body: PosTerm,
}

/// A family of abstractions indexed by ramifications. Branches with body Ω
/// are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NegTerm {
    pub branches: BTreeMap<Ram, Lambda>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Pos(PosTerm),
    Neg(NegTerm),
}

fn standard(n: usize) -> Ram {
    (1..=n as u32).collect()
}

impl NegTerm {
    pub fn new(branches: impl IntoIterator<Item = (Ram, Lambda)>) -> NegTerm {
        NegTerm { branches: branches.into_iter().filter(|(_, l)| l.body != PosTerm::Omega).collect() }
    }

    pub fn lambda(ram: Ram, vars: Vec<String>, body: PosTerm) -> NegTerm {
        assert_eq!(ram.len(), vars.len(), "one variable per bias");
        NegTerm::new([(ram, Lambda { vars, body })])
    }

    pub fn is_slice(&self) -> bool {
        self.branches.len() <= 1 && self.branches.values().all(|l| l.body.is_slice())
    }
}

impl PosTerm {
    pub fn app(head: &str, ram: Ram, args: Vec<NegTerm>) -> PosTerm {
        assert_eq!(ram.len(), args.len(), "one argument per bias");
        PosTerm::App { head: head.to_string(), ram, args }
    }

    pub fn is_slice(&self) -> bool {
        match self {
            PosTerm::App { args, .. } => args.iter().all(|m| m.is_slice()),
            _ => true,
        }
    }

    /// Number of positive layers on the longest path.
    pub fn depth(&self) -> usize {
        match self {
            PosTerm::App { args, .. } => 1 + args.iter().map(|m| m.depth()).max().unwrap_or(0),
            _ => 0,
        }
    }
}

impl NegTerm {
    pub fn depth(&self) -> usize {
        self.branches.values().map(|l| l.body.depth()).max().unwrap_or(0)
    }
}

impl Term {
    pub fn is_slice(&self) -> bool {
        match self {
            Term::Pos(p) => p.is_slice(),
            Term::Neg(m) => m.is_slice(),
        }
    }
}

/// Occurrence counts per binding site. Occurrences in different branches of
/// one negative are alternatives and count once.
#[derive(Default)]
struct Uses {
    counts: BTreeMap<(usize, String), usize>,
}

fn merge_max(a: &mut BTreeMap<(usize, String), usize>, b: BTreeMap<(usize, String), usize>) {
    for (k, v) in b {
        let e = a.entry(k).or_default();
        *e = (*e).max(v);
    }
}

fn merge_sum(a: &mut BTreeMap<(usize, String), usize>, b: BTreeMap<(usize, String), usize>) {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
}

/// Scope entries are (binder id, name); free variables have binder id 0.
fn uses_pos(p: &PosTerm, scope: &mut Vec<(usize, String)>, next: &mut usize) -> Uses {
    let mut u = Uses::default();
    if let PosTerm::App { head, args, .. } = p {
        let site = scope.iter().rev().find(|(_, n)| n == head).map_or(0, |(b, _)| *b);
        *u.counts.entry((site, head.clone())).or_default() += 1;
        for m in args {
            merge_sum(&mut u.counts, uses_neg(m, scope, next).counts);
        }
    }
    u
}

fn uses_neg(m: &NegTerm, scope: &mut Vec<(usize, String)>, next: &mut usize) -> Uses {
    let mut u = Uses::default();
    for l in m.branches.values() {
        *next += 1;
        let b = *next;
        let before = scope.len();
        scope.extend(l.vars.iter().map(|v| (b, v.clone())));
        merge_max(&mut u.counts, uses_pos(&l.body, scope, next).counts);
        scope.truncate(before);
    }
    u
}

/// Whether every variable occurs at most once along each branch choice.
pub fn affine_check(t: &Term) -> bool {
    let mut scope = Vec::new();
    let mut next = 0;
    let u = match t {
        Term::Pos(p) => uses_pos(p, &mut scope, &mut next),
        Term::Neg(m) => uses_neg(m, &mut scope, &mut next),
    };
    u.counts.values().all(|&c| c <= 1)
}

pub fn free_vars(p: &PosTerm) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fv_pos(p, &mut Vec::new(), &mut out);
    out
}

pub fn free_vars_neg(m: &NegTerm) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fv_neg(m, &mut Vec::new(), &mut out);
    out
}

fn fv_pos(p: &PosTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    if let PosTerm::App { head, args, .. } = p {
        if !bound.contains(head) {
            out.insert(head.clone());
        }
        for m in args {
            fv_neg(m, bound, out);
        }
    }
}

fn fv_neg(m: &NegTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    for l in m.branches.values() {
        let before = bound.len();
        bound.extend(l.vars.iter().cloned());
        fv_pos(&l.body, bound, out);
        bound.truncate(before);
    }
}

/// Renames bound variables to `x0, x1, ..` in traversal order; free ones are
/// kept. Two terms are α-equivalent iff their canonical forms are equal.
pub fn canonical(t: &Term) -> Term {
    struct Ren {
        next: usize,
        scope: Vec<(String, String)>,
    }
    impl Ren {
        fn pos(&mut self, p: &PosTerm) -> PosTerm {
            match p {
                PosTerm::App { head, ram, args } => {
                    let head = self
                        .scope
                        .iter()
                        .rev()
                        .find(|(old, _)| old == head)
                        .map_or_else(|| head.clone(), |(_, new)| new.clone());
                    PosTerm::App { head, ram: ram.clone(), args: args.iter().map(|m| self.neg(m)).collect() }
                }
                other => other.clone(),
            }
        }
        fn neg(&mut self, m: &NegTerm) -> NegTerm {
            let mut out = BTreeMap::new();
            for (j, l) in &m.branches {
                let before = self.scope.len();
                let vars: Vec<String> = l
                    .vars
                    .iter()
                    .map(|v| {
                        let new = format!("x{}", self.next);
                        self.next += 1;
                        self.scope.push((v.clone(), new.clone()));
                        new
                    })
                    .collect();
                let body = self.pos(&l.body);
                self.scope.truncate(before);
                out.insert(j.clone(), Lambda { vars, body });
            }
            NegTerm { branches: out }
        }
    }
    let mut r = Ren { next: 0, scope: Vec::new() };
    match t {
        Term::Pos(p) => Term::Pos(r.pos(p)),
        Term::Neg(m) => Term::Neg(r.neg(m)),
    }
}

/// Substitutes variable names for free occurrences of `from`.
pub fn rename_free(p: &PosTerm, from: &str, to: &str) -> PosTerm {
    fn pos(p: &PosTerm, from: &str, to: &str) -> PosTerm {
        match p {
            PosTerm::App { head, ram, args } => PosTerm::App {
                head: if head == from { to.to_string() } else { head.clone() },
                ram: ram.clone(),
                args: args.iter().map(|m| neg(m, from, to)).collect(),
            },
            other => other.clone(),
        }
    }
    fn neg(m: &NegTerm, from: &str, to: &str) -> NegTerm {
        NegTerm {
            branches: m
                .branches
                .iter()
                .map(|(j, l)| {
                    let body = if l.vars.iter().any(|v| v == from) { l.body.clone() } else { pos(&l.body, from, to) };
                    (j.clone(), Lambda { vars: l.vars.clone(), body })
                })
                .collect(),
        }
    }
    pos(p, from, to)
}

fn write_ram_suffix(f: &mut fmt::Formatter<'_>, ram: &Ram, n: usize) -> fmt::Result {
    if *ram != standard(n) {
        write!(f, "@{}", ram_text(ram))?;
    }
    Ok(())
}

fn write_lambda(f: &mut fmt::Formatter<'_>, l: &Lambda, ram: Option<&Ram>) -> fmt::Result {
    write!(f, "\\{{{}}}", l.vars.join(" "))?;
    if let Some(r) = ram {
        write_ram_suffix(f, r, l.vars.len())?;
    }
    write!(f, ".{}", l.body)
}

impl fmt::Display for PosTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosTerm::Omega => write!(f, "omega"),
            PosTerm::Daimon => write!(f, "dai"),
            PosTerm::App { head, ram, args } => {
                write!(f, "{}{{", head)?;
                for (k, m) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", m)?;
                }
                write!(f, "}}")?;
                write_ram_suffix(f, ram, args.len())
            }
        }
    }
}

impl fmt::Display for NegTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.branches.len() == 1 {
            let (j, l) = self.branches.iter().next().expect("one branch");
            return write_lambda(f, l, Some(j));
        }
        write!(f, "{{")?;
        for (k, (j, l)) in self.branches.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} = ", ram_text(j))?;
            write_lambda(f, l, None)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Pos(p) => p.fmt(f),
            Term::Neg(m) => m.fmt(f),
        }
    }
}

fn parse_vars(c: &mut Cursor) -> Result<Vec<String>, ParseError> {
    c.expect('\\')?;
    c.expect('{')?;
    let mut vars = Vec::new();
    while !c.eat('}') {
        let v = c.ident()?;
        if vars.contains(&v) {
            return Err(c.error(format!("variable {v} bound twice")));
        }
        vars.push(v);
    }
    Ok(vars)
}

fn parse_suffix(c: &mut Cursor, n: usize) -> Result<Ram, ParseError> {
    if c.eat('@') {
        let r = parse_ram(c)?;
        if r.len() != n {
            return Err(c.error(format!("{} has {} biases for {} entries", ram_text(&r), r.len(), n)));
        }
        Ok(r)
    } else {
        Ok(standard(n))
    }
}

pub(crate) fn parse_pos(c: &mut Cursor) -> Result<PosTerm, ParseError> {
    if c.eat_keyword("dai") {
        return Ok(PosTerm::Daimon);
    }
    if c.eat_keyword("omega") {
        return Ok(PosTerm::Omega);
    }
    let head = c.ident()?;
    c.expect('{')?;
    let mut args = Vec::new();
    while !c.eat('}') {
        args.push(parse_neg(c)?);
    }
    let ram = parse_suffix(c, args.len())?;
    Ok(PosTerm::App { head, ram, args })
}

pub(crate) fn parse_neg(c: &mut Cursor) -> Result<NegTerm, ParseError> {
    if c.peek() == Some('\\') {
        let vars = parse_vars(c)?;
        let ram = parse_suffix(c, vars.len())?;
        c.expect('.')?;
        let body = parse_pos(c)?;
        return Ok(NegTerm::new([(ram, Lambda { vars, body })]));
    }
    c.expect('{')?;
    let mut branches = BTreeMap::new();
    while !c.eat('}') {
        let j = parse_ram(c)?;
        c.expect('=')?;
        let vars = parse_vars(c)?;
        if vars.len() != j.len() {
            return Err(c.error(format!("{} needs {} variables", ram_text(&j), j.len())));
        }
        if c.eat('@') {
            let r = parse_ram(c)?;
            if r != j {
                return Err(c.error("branch key and '@' disagree"));
            }
        }
        c.expect('.')?;
        let body = parse_pos(c)?;
        if branches.contains_key(&j) {
            return Err(c.error(format!("branch {} given twice", ram_text(&j))));
        }
        branches.insert(j, Lambda { vars, body });
        if !c.eat(';') && c.peek() != Some('}') {
            return Err(c.error("expected ';' or '}'"));
        }
    }
    Ok(NegTerm::new(branches))
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Cursor) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut c = Cursor::new(src);
    let v = f(&mut c)?;
    c.expect_end()?;
    Ok(v)
}

impl PosTerm {
    pub fn parse(src: &str) -> Result<PosTerm, ParseError> {
        whole(src, parse_pos)
    }
}

impl NegTerm {
    pub fn parse(src: &str) -> Result<NegTerm, ParseError> {
        whole(src, parse_neg)
    }
}

impl Term {
    /// A negative starts with `\` or `{`.
    pub fn parse(src: &str) -> Result<Term, ParseError> {
        whole(src, |c| match c.peek() {
            Some('\\') | Some('{') => parse_neg(c).map(Term::Neg),
            _ => parse_pos(c).map(Term::Pos),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for src in [
            "dai",
            "omega",
            "x{}",
            "x{\\{y}.y{}}",
            "x{\\{y}.y{} \\{}.dai}@{2 5}",
            "{{1} = \\{a}.a{}; {2} = \\{b}.dai}",
            "\\{a b}@{1 3}.a{\\{c}.b{}}",
            "{}",
        ] {
            let t = Term::parse(src).unwrap();
            assert_eq!(t.to_string(), src);
            assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn omega_branches_disappear() {
        assert_eq!(Term::parse("\\{x}.omega").unwrap().to_string(), "{}");
        assert_eq!(Term::parse("{{1} = \\{x}.omega; {2} = \\{y}.dai}").unwrap().to_string(), "\\{y}@{2}.dai");
    }

    #[test]
    fn bad_text() {
        assert!(Term::parse("x{\\{y}.dai}@{1 2}").is_err());
        assert!(Term::parse("{{1 2} = \\{x}.dai}").is_err());
        assert!(Term::parse("\\{x x}.dai").is_err());
        assert!(Term::parse("{{1} = \\{x}.dai {2} = \\{y}.dai}").is_err());
    }

    #[test]
    fn affinity() {
        let t = |s| Term::parse(s).unwrap();
        assert!(affine_check(&t("\\{x}.x{}")));
        assert!(!affine_check(&t("\\{x}.x{\\{}.x{}}")));
        // free variables count too
        assert!(!affine_check(&t("z{\\{}.z{}}")));
        assert!(!affine_check(&t("f{\\{}.z{} \\{}.z{}}")));
        // alternatives may share
        assert!(affine_check(&t("{{1} = \\{a}.z{}; {2} = \\{b}.z{}}")));
        // shadowing makes a new variable
        assert!(affine_check(&t("\\{x}.x{\\{x}.x{}}")));
    }

    #[test]
    fn alpha() {
        let a = Term::parse("\\{x}.x{\\{y}.f{}}").unwrap();
        let b = Term::parse("\\{u}.u{\\{v}.f{}}").unwrap();
        let c = Term::parse("\\{u}.u{\\{v}.g{}}").unwrap();
        assert_eq!(canonical(&a), canonical(&b));
        assert_ne!(canonical(&a), canonical(&c));
    }

    #[test]
    fn renaming_respects_binders() {
        let p = PosTerm::parse("x{\\{x}.x{} \\{y}.x{}}").unwrap();
        assert_eq!(rename_free(&p, "x", "z").to_string(), "z{\\{x}.x{} \\{y}.z{}}");
        assert_eq!(free_vars(&p), ["x".to_string()].into());
    }
}
