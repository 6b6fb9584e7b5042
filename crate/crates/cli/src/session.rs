//! Exploration sessions: the user plays Opponent at each head, (R) runs by
//! itself in between. A session is its net plus the list of choices made;
//! the state is recomputed from that list, so replaying it is exact.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use locus_core::designs::{parse_ram_text, ram_text, Action, Design, Ram};
use locus_core::engine::{Net, Outcome, State, DEFAULT_FUEL};

use crate::doc::InputError;
use crate::ops;

/// An Opponent move: continue in branch `j` of the child at bias `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Choice {
    pub i: u32,
    /// Ramification text, e.g. `{1 2}`.
    pub j: String,
}

impl Choice {
    pub fn new(i: u32, j: &Ram) -> Choice {
        Choice { i, j: ram_text(j) }
    }

    fn ram(&self) -> Result<Ram, InputError> {
        Ok(parse_ram_text(&self.j)?)
    }
}

/// The state document of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SessionState {
    pub id: u64,
    pub outcome: Outcome,
    /// The chronicle of the normal form explored so far.
    pub q: Vec<Action>,
    pub offered: Vec<Choice>,
    pub history: Vec<Choice>,
    /// (R) steps taken since the start.
    pub steps: usize,
}

#[derive(Debug)]
pub struct Session {
    pub id: u64,
    pub source: String,
    pub alphabet_text: Option<String>,
    pub fuel: usize,
    net: Net,
    alphabet: BTreeSet<Ram>,
    history: Vec<Choice>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChooseError {
    #[error("session not found")]
    NotFound,
    #[error("illegal choice")]
    Illegal { offered: Vec<Choice> },
    #[error(transparent)]
    Input(#[from] InputError),
}

fn net_alphabet(net: &Net) -> BTreeSet<Ram> {
    let mut out = BTreeSet::new();
    let mut add = |d: Design| {
        let acts = match d {
            Design::Positive(p) => p.actions(),
            Design::Negative(n) => n.actions(),
        };
        out.extend(acts.into_keys().map(|a| a.ram));
    };
    add(Design::Positive(net.principal.clone()));
    for (n, _) in &net.partners {
        add(Design::Negative(n.clone()));
    }
    out
}

/// (R) until a terminal state, at most `fuel` steps.
fn advance(st: &mut State<'_>, fuel: usize, steps: &mut usize) -> Outcome {
    for _ in 0..fuel {
        if let Some(o) = st.terminal() {
            return o;
        }
        st.step();
        *steps += 1;
    }
    st.terminal().unwrap_or(Outcome::CreatedOmega)
}

impl Session {
    /// A session on the net in `source`. Heads offer every ramification of
    /// `alphabet`, by default those occurring in the net.
    pub fn new(id: u64, source: &str, alphabet: Option<&str>, fuel: Option<usize>) -> Result<Session, InputError> {
        let net = ops::net(source)?;
        net.validate().map_err(InputError::invalid)?;
        let alpha = match alphabet {
            Some(a) => ops::alphabet(a)?,
            None => net_alphabet(&net),
        };
        Ok(Session {
            id,
            source: source.to_string(),
            alphabet_text: alphabet.map(str::to_string),
            fuel: fuel.unwrap_or(DEFAULT_FUEL),
            net,
            alphabet: alpha,
            history: Vec::new(),
        })
    }

    fn offered(&self, outcome: &Outcome) -> Vec<Choice> {
        match outcome {
            Outcome::Head { ram, .. } => {
                ram.iter().flat_map(|&i| self.alphabet.iter().map(move |j| Choice::new(i, j))).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Recomputes the state from the net and the history.
    pub fn state(&self) -> Result<SessionState, InputError> {
        let mut st = State::initial(&self.net);
        let mut steps = 0;
        let mut q = Vec::new();
        let mut outcome = advance(&mut st, self.fuel, &mut steps);
        for c in &self.history {
            let Outcome::Head { focus, ram } = &outcome else {
                return Err(InputError::invalid("choice after the end of the exploration"));
            };
            let j = c.ram()?;
            q.push(Action::pos(focus.clone(), ram.clone()));
            q.push(Action::neg(focus.child(c.i), j.clone()));
            st = st.choose(c.i, &j).ok_or_else(|| InputError::Invalid(format!("no child at bias {}", c.i)))?;
            outcome = advance(&mut st, self.fuel, &mut steps);
        }
        let offered = self.offered(&outcome);
        Ok(SessionState { id: self.id, outcome, q, offered, history: self.history.clone(), steps })
    }

    /// Applies (S) with `c`, then (R) up to the next terminal state.
    pub fn choose(&mut self, c: Choice) -> Result<SessionState, ChooseError> {
        let now = self.state()?;
        // compare as rams so `{2, 1}` and `{1 2}` are the same choice
        let j = c.ram()?;
        let legal = now.offered.iter().any(|o| o.i == c.i && o.ram().ok().as_ref() == Some(&j));
        if !legal {
            return Err(ChooseError::Illegal { offered: now.offered });
        }
        self.history.push(Choice::new(c.i, &j));
        Ok(self.state()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
enum LogEntry {
    Create { id: u64, net: String, alphabet: Option<String>, fuel: usize },
    Choice { id: u64, choice: Choice },
}

/// Sessions of a running service, with an optional append-only log.
#[derive(Default)]
pub struct Store {
    sessions: Mutex<HashMap<u64, Arc<Mutex<Session>>>>,
    next: AtomicU64,
    log: Option<Mutex<File>>,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    /// A store persisted to `path`; sessions already logged there are
    /// replayed first.
    pub fn with_log(path: &Path) -> io::Result<Store> {
        let mut store = Store::new();
        if path.exists() {
            let bad = |e: String| io::Error::new(io::ErrorKind::InvalidData, e);
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: LogEntry = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
                store.apply(entry).map_err(|e| bad(e.to_string()))?;
            }
        }
        store.log = Some(Mutex::new(OpenOptions::new().create(true).append(true).open(path)?));
        Ok(store)
    }

    fn apply(&self, entry: LogEntry) -> Result<(), ChooseError> {
        match entry {
            LogEntry::Create { id, net, alphabet, fuel } => {
                let s = Session::new(id, &net, alphabet.as_deref(), Some(fuel))?;
                self.next.fetch_max(id + 1, Ordering::SeqCst);
                self.sessions.lock().expect("store lock").insert(id, Arc::new(Mutex::new(s)));
            }
            LogEntry::Choice { id, choice } => {
                let s = self.session(id).ok_or(ChooseError::NotFound)?;
                let mut s = s.lock().expect("session lock");
                s.choose(choice)?;
            }
        }
        Ok(())
    }

    fn record(&self, entry: &LogEntry) {
        if let Some(f) = &self.log {
            let mut f = f.lock().expect("log lock");
            let line = serde_json::to_string(entry).expect("log entries serialize");
            // the log is best effort: a failed write leaves the session usable
            let _ = writeln!(f, "{line}").and_then(|_| f.flush());
        }
    }

    fn session(&self, id: u64) -> Option<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("store lock").get(&id).cloned()
    }

    pub fn create(&self, net: &str, alphabet: Option<&str>, fuel: Option<usize>) -> Result<SessionState, InputError> {
        let id = self.next.fetch_add(1, Ordering::SeqCst);
        let s = Session::new(id, net, alphabet, fuel)?;
        let state = s.state()?;
        self.record(&LogEntry::Create { id, net: s.source.clone(), alphabet: s.alphabet_text.clone(), fuel: s.fuel });
        self.sessions.lock().expect("store lock").insert(id, Arc::new(Mutex::new(s)));
        Ok(state)
    }

    pub fn get(&self, id: u64) -> Result<SessionState, ChooseError> {
        let s = self.session(id).ok_or(ChooseError::NotFound)?;
        let s = s.lock().expect("session lock");
        Ok(s.state()?)
    }

    /// Choices on one session are applied one at a time.
    pub fn choose(&self, id: u64, c: Choice) -> Result<SessionState, ChooseError> {
        let s = self.session(id).ok_or(ChooseError::NotFound)?;
        let mut s = s.lock().expect("session lock");
        let state = s.choose(c)?;
        let last = state.history.last().cloned().expect("a choice was made");
        self.record(&LogEntry::Choice { id, choice: last });
        Ok(state)
    }

    /// Ids of the live sessions, ascending.
    pub fn ids(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.sessions.lock().expect("store lock").keys().copied().collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // no partner at the root, so the first action is a head
    const OPEN: &str = "(+ . {1 2} (- 1 ({1} -> dai) ({2} -> omega)) (- 2 ({1} -> (+ 2.1 {1}))))";

    #[test]
    fn daimon_at_once() {
        let s = Session::new(0, "dai", None, None).unwrap();
        let st = s.state().unwrap();
        assert_eq!(st.outcome, Outcome::Daimon);
        assert!(st.q.is_empty() && st.offered.is_empty());
    }

    #[test]
    fn heads_offer_the_whole_alphabet() {
        let s = Session::new(0, OPEN, Some("{1} {2} {1 2}"), None).unwrap();
        let st = s.state().unwrap();
        assert!(matches!(st.outcome, Outcome::Head { .. }));
        assert_eq!(st.offered.len(), 6);
        let s = Session::new(0, OPEN, None, None).unwrap();
        let st = s.state().unwrap();
        // the net's own alphabet: {1} and {1 2}; the Ω branch on {2} is not stored
        assert_eq!(st.offered.len(), 4);
    }

    #[test]
    fn choices_extend_the_chronicle() {
        let mut s = Session::new(0, OPEN, Some("{1} {2}"), None).unwrap();
        let st = s.choose(Choice { i: 1, j: "{1}".into() }).unwrap();
        assert_eq!(st.outcome, Outcome::Daimon);
        assert_eq!(st.q.iter().map(|a| a.to_string()).collect::<Vec<_>>(), ["(+ . {1 2})", "(- 1 {1})"]);
        let err = s.choose(Choice { i: 1, j: "{1}".into() }).unwrap_err();
        assert_eq!(err, ChooseError::Illegal { offered: vec![] });

        let mut s = Session::new(0, OPEN, Some("{1} {2}"), None).unwrap();
        assert_eq!(s.choose(Choice { i: 1, j: "{2}".into() }).unwrap().outcome, Outcome::SyntacticOmega);
        let mut s = Session::new(0, OPEN, Some("{1} {2}"), None).unwrap();
        let st = s.choose(Choice { i: 2, j: "{1}".into() }).unwrap();
        assert!(matches!(st.outcome, Outcome::Head { .. }));
        assert_eq!(st.q.len(), 2);
        assert!(matches!(s.choose(Choice { i: 3, j: "{1}".into() }), Err(ChooseError::Illegal { .. })));
    }

    #[test]
    fn replay_is_exact() {
        let mut a = Session::new(0, OPEN, Some("{1} {2}"), None).unwrap();
        a.choose(Choice { i: 2, j: "{1}".into() }).unwrap();
        a.choose(Choice { i: 1, j: "{1}".into() }).unwrap();
        let mut b = Session::new(0, OPEN, Some("{1} {2}"), None).unwrap();
        for c in a.state().unwrap().history {
            b.choose(c).unwrap();
        }
        assert_eq!(serde_json::to_string(&a.state().unwrap()).unwrap(), serde_json::to_string(&b.state().unwrap()).unwrap());
    }

    #[test]
    fn log_restores_sessions() {
        let dir = std::env::temp_dir().join(format!("locus-log-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let store = Store::with_log(&dir).unwrap();
        let id = store.create(OPEN, Some("{1} {2}"), None).unwrap().id;
        store.choose(id, Choice { i: 2, j: "{1}".into() }).unwrap();
        let before = store.get(id).unwrap();
        drop(store);
        let again = Store::with_log(&dir).unwrap();
        assert_eq!(again.get(id).unwrap(), before);
        assert_eq!(again.create(OPEN, None, None).unwrap().id, id + 1);
        std::fs::remove_file(&dir).unwrap();
    }
}
