//! Environment machine on terms. The arguments of a head take the whole
//! current environment with them, so terms need not be affine.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::designs::{ram_text, Address, Ram};
use crate::engine::Net;

use super::term::{Lambda, NegTerm, PosTerm};
use super::translate::{address_name, design_to_term, LambdaError};
use crate::designs::Design;

/// What a variable is bound to.
#[derive(Clone)]
pub enum Value<'a> {
    Closure(Closure<'a>),
    /// A variable of the result, for strong normalization.
    Free(String),
}

#[derive(Clone)]
pub struct Closure<'a> {
    pub term: &'a NegTerm,
    pub env: Env<'a>,
}

struct Frame<'a> {
    name: String,
    value: Value<'a>,
    next: Env<'a>,
}

/// A persistent environment; extension shares the tail.
#[derive(Clone, Default)]
pub struct Env<'a>(Option<Rc<Frame<'a>>>);

impl<'a> Env<'a> {
    pub fn empty() -> Env<'a> {
        Env(None)
    }

    pub fn bind(&self, name: &str, value: Value<'a>) -> Env<'a> {
        Env(Some(Rc::new(Frame { name: name.to_string(), value, next: self.clone() })))
    }

    pub fn lookup(&self, name: &str) -> Option<&Value<'a>> {
        let mut cur = &self.0;
        while let Some(f) = cur {
            if f.name == name {
                return Some(&f.value);
            }
            cur = &f.next.0;
        }
        None
    }

    pub fn len(&self) -> usize {
        let mut n = 0;
        let mut cur = &self.0;
        while let Some(f) = cur {
            n += 1;
            cur = &f.next.0;
        }
        n
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Daimon,
    SyntacticOmega,
    CreatedOmega,
    /// Stopped on a variable bound to `Value::Free`.
    Head { var: String, ram: String },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Daimon => write!(f, "dai"),
            Outcome::SyntacticOmega => write!(f, "omega"),
            Outcome::CreatedOmega => write!(f, "omega (fuel exhausted)"),
            Outcome::Head { var, ram } => write!(f, "head {var}{ram}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineRun {
    pub outcome: Outcome,
    /// Head variable and ramification of every step.
    pub steps: Vec<(String, Ram)>,
}

fn enter<'a>(lam: &'a Lambda, closure_env: &Env<'a>, args: &'a [NegTerm], env: &Env<'a>) -> Env<'a> {
    let mut out = closure_env.clone();
    for (v, m) in lam.vars.iter().zip(args) {
        out = out.bind(v, Value::Closure(Closure { term: m, env: env.clone() }));
    }
    out
}

/// Runs `⟨p | env⟩` until ✠, Ω, a free head or `fuel` steps.
pub fn machine_run<'a>(p: &'a PosTerm, env: Env<'a>, fuel: usize) -> Result<MachineRun, LambdaError> {
    let mut code = p;
    let mut env = env;
    let mut steps = Vec::new();
    loop {
        let (head, ram, args) = match code {
            PosTerm::Daimon => return Ok(MachineRun { outcome: Outcome::Daimon, steps }),
            PosTerm::Omega => return Ok(MachineRun { outcome: Outcome::SyntacticOmega, steps }),
            PosTerm::App { head, ram, args } => (head, ram, args),
        };
        let c = match env.lookup(head) {
            None => return Err(LambdaError::Unbound(head.clone())),
            Some(Value::Free(v)) => {
                let outcome = Outcome::Head { var: v.clone(), ram: ram_text(ram) };
                return Ok(MachineRun { outcome, steps });
            }
            Some(Value::Closure(c)) => c.clone(),
        };
        if steps.len() == fuel {
            return Ok(MachineRun { outcome: Outcome::CreatedOmega, steps });
        }
        steps.push((head.clone(), ram.clone()));
        match c.term.branches.get(ram) {
            None => return Ok(MachineRun { outcome: Outcome::SyntacticOmega, steps }),
            Some(lam) => {
                env = enter(lam, &c.env, args, &env);
                code = &lam.body;
            }
        }
    }
}

/// Result of strong normalization. `exhausted` marks a run that hit the fuel
/// somewhere; the affected subterms are Ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normal {
    pub term: PosTerm,
    pub exhausted: bool,
}

struct Strong {
    fuel: usize,
    used: usize,
    exhausted: bool,
    next: usize,
}

impl Strong {
    fn fresh(&mut self) -> String {
        let v = format!("_{}", self.next);
        self.next += 1;
        v
    }

    fn pos<'a>(&mut self, p: &'a PosTerm, env: Env<'a>) -> Result<PosTerm, LambdaError> {
        let mut code = p;
        let mut env = env;
        loop {
            let (head, ram, args) = match code {
                PosTerm::App { head, ram, args } => (head, ram, args),
                other => return Ok(other.clone()),
            };
            match env.lookup(head) {
                None => return Err(LambdaError::Unbound(head.clone())),
                Some(Value::Free(v)) => {
                    let v = v.clone();
                    let mut out = Vec::new();
                    for m in args {
                        out.push(self.neg(m, env.clone())?);
                    }
                    return Ok(PosTerm::App { head: v, ram: ram.clone(), args: out });
                }
                Some(Value::Closure(c)) => {
                    if self.used == self.fuel {
                        self.exhausted = true;
                        return Ok(PosTerm::Omega);
                    }
                    self.used += 1;
                    let c = c.clone();
                    match c.term.branches.get(ram) {
                        None => return Ok(PosTerm::Omega),
                        Some(lam) => {
                            env = enter(lam, &c.env, args, &env);
                            code = &lam.body;
                        }
                    }
                }
            }
        }
    }

    fn neg<'a>(&mut self, m: &'a NegTerm, env: Env<'a>) -> Result<NegTerm, LambdaError> {
        let mut branches = BTreeMap::new();
        for (j, lam) in &m.branches {
            let mut e = env.clone();
            let mut vars = Vec::new();
            for v in &lam.vars {
                let z = self.fresh();
                e = e.bind(v, Value::Free(z.clone()));
                vars.push(z);
            }
            let body = self.pos(&lam.body, e)?;
            branches.insert(j.clone(), Lambda { vars, body });
        }
        Ok(NegTerm::new(branches))
    }
}

/// Normal form of `⟨p | env⟩`: run to a free head and continue inside its
/// arguments. Bound variables of the result are `_0, _1, ..`.
pub fn machine_normalize<'a>(p: &'a PosTerm, env: Env<'a>, fuel: usize) -> Result<Normal, LambdaError> {
    let mut s = Strong { fuel, used: 0, exhausted: false, next: 0 };
    let term = s.pos(p, env)?;
    Ok(Normal { term, exhausted: s.exhausted })
}

/// Terms of a net with the environment that binds every cut address to the
/// closure of its partner. Addresses of the type stay free, named by
/// `address_name`.
pub struct NetTerms {
    pub principal: PosTerm,
    pub partners: Vec<(Address, NegTerm)>,
}

impl NetTerms {
    pub fn new(net: &Net) -> Result<NetTerms, LambdaError> {
        let names = |b: &std::collections::BTreeSet<Address>| -> BTreeMap<Address, String> {
            b.iter().map(|a| (a.clone(), address_name(a))).collect()
        };
        let principal = match design_to_term(&Design::Positive(net.principal.clone()), &names(&net.principal_base))? {
            super::term::Term::Pos(p) => p,
            super::term::Term::Neg(_) => unreachable!(),
        };
        let mut partners = Vec::new();
        for (n, ctx) in &net.partners {
            match design_to_term(&Design::Negative(n.clone()), &names(ctx))? {
                super::term::Term::Neg(m) => partners.push((n.focus.clone(), m)),
                super::term::Term::Pos(_) => unreachable!(),
            }
        }
        Ok(NetTerms { principal, partners })
    }

    /// The environment of a free variable list: partners' closures where a
    /// partner sits, `Free` elsewhere. Nets are acyclic, so this terminates.
    pub fn env_for<'a>(&'a self, free: impl IntoIterator<Item = String>) -> Env<'a> {
        let mut env = Env::empty();
        for v in free {
            let value = match self.partners.iter().find(|(a, _)| address_name(a) == v) {
                Some((_, m)) => {
                    let inner = self.env_for(super::term::free_vars_neg(m));
                    Value::Closure(Closure { term: m, env: inner })
                }
                None => Value::Free(v.clone()),
            };
            env = env.bind(&v, value);
        }
        env
    }

    pub fn run(&self, fuel: usize) -> Result<MachineRun, LambdaError> {
        machine_run(&self.principal, self.env_for(super::term::free_vars(&self.principal)), fuel)
    }
}
