//! Weak reduction (R) and strong reduction (S) of nets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::net::{analyze, Net, NetError};
use crate::designs::{infer_negative, ram_text, Action, Address, Negative, Positive, Ram};

pub const DEFAULT_FUEL: usize = 100_000;

/// Negative designs indexed by the address they accept.
pub type Env<'a> = BTreeMap<&'a Address, &'a Negative>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Daimon,
    SyntacticOmega,
    CreatedOmega,
    Head { focus: Address, ram: Ram },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Daimon => write!(f, "dai"),
            Outcome::SyntacticOmega => write!(f, "omega"),
            Outcome::CreatedOmega => write!(f, "omega (fuel exhausted)"),
            Outcome::Head { focus, ram } => write!(f, "head (+ {} {})", focus, ram_text(ram)),
        }
    }
}

/// A machine state `<code | env>`.
#[derive(Debug, Clone)]
pub struct State<'a> {
    pub code: &'a Positive,
    pub env: Env<'a>,
}

impl<'a> State<'a> {
    pub fn new(code: &'a Positive, partners: impl IntoIterator<Item = &'a Negative>) -> State<'a> {
        State { code, env: partners.into_iter().map(|n| (&n.focus, n)).collect() }
    }

    pub fn initial(net: &'a Net) -> State<'a> {
        State::new(&net.principal, net.partners.iter().map(|(n, _)| n))
    }

    /// The outcome if no (R) step applies.
    pub fn terminal(&self) -> Option<Outcome> {
        match self.code {
            Positive::Omega => Some(Outcome::SyntacticOmega),
            Positive::Daimon => Some(Outcome::Daimon),
            Positive::Proper { focus, ram, .. } if !self.env.contains_key(focus) => {
                Some(Outcome::Head { focus: focus.clone(), ram: ram.clone() })
            }
            Positive::Proper { .. } => None,
        }
    }

    /// One (R) step. The state must not be terminal.
    pub fn step(&mut self) -> (&'a Address, &'a Ram) {
        let Positive::Proper { focus, ram, children } = self.code else {
            panic!("step on a terminal state");
        };
        let psi = self.env.remove(focus).expect("step on a head state");
        for c in children.values() {
            let clash = self.env.insert(&c.focus, c);
            debug_assert!(clash.is_none(), "address {} accepted twice", c.focus);
        }
        self.code = psi.branch(ram);
        (focus, ram)
    }

    /// Rule (S) at a head: continue in branch `j` of the child at `i`.
    pub fn choose(&self, i: u32, j: &Ram) -> Option<State<'a>> {
        let Some(Outcome::Head { .. }) = self.terminal() else { return None };
        let Positive::Proper { children, .. } = self.code else { return None };
        let child = children.get(&i)?;
        Some(State { code: child.branch(j), env: self.env.clone() })
    }

    /// The (i, J) choices with a stored branch at a head.
    pub fn offered(&self) -> Vec<(u32, Ram)> {
        match (self.terminal(), self.code) {
            (Some(Outcome::Head { .. }), Positive::Proper { children, .. }) => children
                .iter()
                .flat_map(|(i, c)| c.branches.keys().map(move |j| (*i, j.clone())))
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Orthogonality on a closed pair, without validation. Terminates on finite
/// designs since each step descends into the code.
pub fn orth(phi: &Positive, psi: &Negative) -> bool {
    let mut st = State::new(phi, [psi]);
    loop {
        match st.terminal() {
            Some(o) => return o == Outcome::Daimon,
            None => {
                st.step();
            }
        }
    }
}

/// Orthogonality of `phi` with a family of partners forming a closed net.
pub fn orthogonal(phi: &Positive, partners: &[Negative]) -> Result<bool, NetError> {
    let net = Net::new(phi.clone(), partners.to_vec())?;
    let info = net.validate()?;
    if !info.typ.is_empty() {
        return Err(NetError::Open(crate::designs::text::addresses_text(&info.typ)));
    }
    let mut st = State::initial(&net);
    loop {
        match st.terminal() {
            Some(o) => return Ok(o == Outcome::Daimon),
            None => {
                st.step();
            }
        }
    }
}

/// A weak run: outcome, the (R) steps taken and the final state.
#[derive(Debug, Clone)]
pub struct Run<'a> {
    pub outcome: Outcome,
    pub steps: Vec<(Address, Ram)>,
    pub state: State<'a>,
}

/// Bases along a run, used to check that (R) preserves the type.
struct Bases {
    code: BTreeSet<Address>,
    env: BTreeMap<Address, BTreeSet<Address>>,
}

impl Bases {
    fn typ(&self) -> BTreeSet<Address> {
        let partners: Vec<(&Address, &BTreeSet<Address>)> = self.env.iter().collect();
        analyze(&self.code, &partners).expect("net conditions lost during reduction").typ
    }

    fn step(&mut self, code: &Positive) {
        let Positive::Proper { focus, ram, children } = code else { unreachable!() };
        let mut rest = std::mem::take(&mut self.code);
        rest.remove(focus);
        let psi = self.env.remove(focus).unwrap_or_default();
        for c in children.values() {
            let used = infer_negative(c, &BTreeSet::new()).unwrap_or_default();
            for a in &used {
                rest.remove(a);
            }
            self.env.insert(c.focus.clone(), used);
        }
        self.code = focus.children(ram).into_iter().chain(psi).chain(rest).collect();
    }
}

/// Iterates (R) from the initial state of `net`.
pub fn weak_run(net: &Net, fuel: usize) -> Result<Run<'_>, NetError> {
    let info = net.validate()?;
    let mut bases = cfg!(debug_assertions).then(|| Bases {
        code: net.principal_base.clone(),
        env: net.partners.iter().map(|(n, r)| (n.focus.clone(), r.clone())).collect(),
    });
    let mut st = State::initial(net);
    let mut steps = Vec::new();
    loop {
        if let Some(outcome) = st.terminal() {
            if let Outcome::Head { focus, .. } = &outcome {
                debug_assert!(info.typ.contains(focus), "head {focus} is not in the type");
            }
            return Ok(Run { outcome, steps, state: st });
        }
        if steps.len() >= fuel {
            return Ok(Run { outcome: Outcome::CreatedOmega, steps, state: st });
        }
        if let Some(b) = bases.as_mut() {
            b.step(st.code);
        }
        let (f, r) = st.step();
        steps.push((f.clone(), r.clone()));
        if let Some(b) = &bases {
            debug_assert_eq!(b.typ(), info.typ, "type changed after (R) on {f}");
        }
    }
}

/// Bounds for strong reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    /// Longest chronicle explored.
    pub depth: usize,
    /// (R) steps allowed along one branch.
    pub fuel: usize,
    /// When set, every J in it is offered, absent branches giving Ω entries.
    pub alphabet: Option<BTreeSet<Ram>>,
}

impl Default for Frontier {
    fn default() -> Self {
        Frontier { depth: 64, fuel: DEFAULT_FUEL, alphabet: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Positive,
    Daimon,
    SyntacticOmega,
    CreatedOmega,
}

/// A chronicle of a normal form with its terminal marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfChronicle {
    pub actions: Vec<Action>,
    pub end: End,
}

impl fmt::Display for NfChronicle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.actions.iter().map(|a| a.to_string()).collect();
        match self.end {
            End::Positive => {}
            End::Daimon => parts.push("dai".into()),
            End::SyntacticOmega => parts.push("omega".into()),
            End::CreatedOmega => parts.push("omega!".into()),
        }
        if parts.is_empty() {
            return write!(f, "()");
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for NfChronicle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One application of (R) or (S) during strong reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum TraceStep {
    R { focus: Address, ram: Ram },
    S { focus: Address, ram: Ram, i: u32, branch: Ram },
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::R { focus, ram } => write!(f, "(R) {} {}", focus, ram_text(ram)),
            TraceStep::S { focus, ram, i, branch } => {
                write!(f, "(S) {} {} i={} J={}", focus, ram_text(ram), i, ram_text(branch))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub design: Positive,
    pub chronicles: BTreeSet<NfChronicle>,
    pub truncated: bool,
    #[serde(skip)]
    pub trace: Vec<TraceStep>,
}

impl NormalForm {
    /// Sorted chronicle lines.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.chronicles {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    pub fn is_daimon(&self) -> bool {
        self.design.is_daimon()
    }
}

struct Explorer<'f> {
    frontier: &'f Frontier,
    out: BTreeSet<NfChronicle>,
    trace: Vec<TraceStep>,
    truncated: bool,
}

impl Explorer<'_> {
    fn emit(&mut self, q: &[Action], end: End) {
        self.out.insert(NfChronicle { actions: q.to_vec(), end });
    }

    fn explore(&mut self, mut st: State<'_>, q: &mut Vec<Action>, mut used: usize) -> Positive {
        loop {
            match st.terminal() {
                Some(Outcome::Daimon) => {
                    self.emit(q, End::Daimon);
                    return Positive::Daimon;
                }
                Some(Outcome::SyntacticOmega) => {
                    self.emit(q, End::SyntacticOmega);
                    return Positive::Omega;
                }
                Some(Outcome::Head { focus, ram }) => return self.head(&st, focus, ram, q, used),
                Some(Outcome::CreatedOmega) => unreachable!(),
                None if used >= self.frontier.fuel => {
                    self.emit(q, End::CreatedOmega);
                    return Positive::Omega;
                }
                None => {
                    let (f, r) = st.step();
                    used += 1;
                    self.trace.push(TraceStep::R { focus: f.clone(), ram: r.clone() });
                }
            }
        }
    }

    fn head(&mut self, st: &State<'_>, focus: Address, ram: Ram, q: &mut Vec<Action>, used: usize) -> Positive {
        let Positive::Proper { children, .. } = st.code else { unreachable!() };
        q.push(Action::pos(focus.clone(), ram.clone()));
        self.emit(q, End::Positive);
        let mut out = BTreeMap::new();
        for (i, child) in children {
            let mut js: BTreeSet<&Ram> = child.branches.keys().collect();
            if let Some(a) = &self.frontier.alphabet {
                js.extend(a.iter());
            }
            let mut neg = Negative::skunk(child.focus.clone());
            if !js.is_empty() && q.len() + 2 > self.frontier.depth {
                self.truncated = true;
                js.clear();
            }
            for j in js {
                q.push(Action::neg(child.focus.clone(), j.clone()));
                let sub = if child.branches.contains_key(j) {
                    self.trace.push(TraceStep::S { focus: focus.clone(), ram: ram.clone(), i: *i, branch: j.clone() });
                    self.explore(State { code: child.branch(j), env: st.env.clone() }, q, used)
                } else {
                    self.emit(q, End::SyntacticOmega);
                    Positive::Omega
                };
                neg.set_branch(j.clone(), sub);
                q.pop();
            }
            out.insert(*i, neg);
        }
        q.pop();
        Positive::Proper { focus, ram, children: out }
    }
}

/// Explores every (i, J) continuation within `frontier`.
pub fn strong_normalize(net: &Net, frontier: &Frontier) -> Result<NormalForm, NetError> {
    net.validate()?;
    Ok(normalize_state(State::initial(net), frontier))
}

/// Strong reduction from an arbitrary state, without validation.
pub fn normalize_state(st: State<'_>, frontier: &Frontier) -> NormalForm {
    let mut ex = Explorer { frontier, out: BTreeSet::new(), trace: Vec::new(), truncated: false };
    let design = ex.explore(st, &mut Vec::new(), 0);
    NormalForm { design, chronicles: ex.out, truncated: ex.truncated, trace: ex.trace }
}

/// `⟦phi, partners⟧` as a design, on least bases and the default frontier.
pub fn normal_form(phi: &Positive, partners: &[Negative]) -> Result<Positive, NetError> {
    let net = Net::new(phi.clone(), partners.to_vec())?;
    Ok(strong_normalize(&net, &Frontier::default())?.design)
}
