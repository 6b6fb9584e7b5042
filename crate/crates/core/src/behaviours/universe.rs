//! Finite universes of designs and behaviours relative to them.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::designs::text::addresses_text;
use crate::designs::{ram_text, Address, CapExceeded, Design, Enumerator, Negative, Polarity, Positive, Ram};
use crate::engine::orth;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
pub enum BehaviourError {
    #[error("{0} is not a design of the universe")]
    NotInUniverse(String),
    #[error("expected a {0} behaviour")]
    Polarity(&'static str),
    #[error("behaviours from different universes")]
    CrossUniverse,
    #[error("{0} is not a member")]
    NotMember(String),
    #[error("directories share {0}")]
    NotDisjoint(String),
    #[error("the union is not closed under biorthogonal")]
    NotInternallyComplete,
    #[error("universe too large: {0}")]
    Cap(String),
}

impl From<CapExceeded> for BehaviourError {
    fn from(e: CapExceeded) -> Self {
        BehaviourError::Cap(e.to_string())
    }
}

/// Designs on `⊢ξ` and `ξ⊢` whose chronicles have at most `depth` actions
/// over `alphabet`, with their orthogonality relation. The positive design
/// Ω is left out.
#[derive(Debug, Clone)]
pub struct Universe {
    pub xi: Address,
    pub alphabet: BTreeSet<Ram>,
    pub depth: usize,
    positives: Vec<Positive>,
    negatives: Vec<Negative>,
    pos_index: HashMap<Positive, usize>,
    neg_index: HashMap<Negative, usize>,
    /// For each positive, the negatives orthogonal to it.
    pos_orth: Vec<FixedBitSet>,
    /// For each negative, the positives orthogonal to it.
    neg_orth: Vec<FixedBitSet>,
    id: u64,
}

/// A set of designs of one polarity, closed under biorthogonal within its
/// universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Behaviour {
    pub polarity: Polarity,
    pub members: FixedBitSet,
    pub generators: Vec<Design>,
    pub provenance: String,
    universe: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniverseSummary {
    pub base: String,
    pub alphabet: Vec<String>,
    pub depth: usize,
    pub positives: usize,
    pub negatives: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BehaviourSummary {
    pub universe: UniverseSummary,
    pub polarity: Polarity,
    pub provenance: String,
    pub generators: Vec<String>,
    pub member_count: usize,
    pub directory: Vec<String>,
}

pub const DEFAULT_CAP: usize = 200_000;

impl Universe {
    pub fn new(xi: Address, alphabet: BTreeSet<Ram>, depth: usize, cap: usize) -> Result<Universe, BehaviourError> {
        let e = Enumerator { alphabet: &alphabet, cap };
        let positives: Vec<Positive> =
            e.positives(&[xi.clone()].into(), depth)?.into_iter().filter(|p| !p.is_omega()).collect();
        let negatives = e.negatives(&xi, &BTreeSet::new(), depth)?;
        let mut pos_orth = vec![FixedBitSet::with_capacity(negatives.len()); positives.len()];
        let mut neg_orth = vec![FixedBitSet::with_capacity(positives.len()); negatives.len()];
        for (i, p) in positives.iter().enumerate() {
            for (j, n) in negatives.iter().enumerate() {
                if orth(p, n) {
                    pos_orth[i].insert(j);
                    neg_orth[j].insert(i);
                }
            }
        }
        let mut h = DefaultHasher::new();
        (&xi, &alphabet, depth).hash(&mut h);
        Ok(Universe {
            pos_index: positives.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(),
            neg_index: negatives.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect(),
            xi,
            alphabet,
            depth,
            positives,
            negatives,
            pos_orth,
            neg_orth,
            id: h.finish(),
        })
    }

    pub fn positives(&self) -> &[Positive] {
        &self.positives
    }

    pub fn negatives(&self) -> &[Negative] {
        &self.negatives
    }

    /// Designs of a polarity, in enumeration order.
    pub fn designs(&self, polarity: Polarity) -> Vec<Design> {
        match polarity {
            Polarity::Positive => self.positives.iter().cloned().map(Design::Positive).collect(),
            Polarity::Negative => self.negatives.iter().cloned().map(Design::Negative).collect(),
        }
    }

    pub fn size(&self, polarity: Polarity) -> usize {
        match polarity {
            Polarity::Positive => self.positives.len(),
            Polarity::Negative => self.negatives.len(),
        }
    }

    pub fn design(&self, polarity: Polarity, i: usize) -> Design {
        match polarity {
            Polarity::Positive => Design::Positive(self.positives[i].clone()),
            Polarity::Negative => Design::Negative(self.negatives[i].clone()),
        }
    }

    pub fn index_of(&self, d: &Design) -> Option<usize> {
        match d {
            Design::Positive(p) => self.pos_index.get(p).copied(),
            Design::Negative(n) => self.neg_index.get(n).copied(),
        }
    }

    pub fn summary(&self) -> UniverseSummary {
        UniverseSummary {
            base: format!("|- {}", addresses_text(&[self.xi.clone()].into())),
            alphabet: self.alphabet.iter().map(ram_text).collect(),
            depth: self.depth,
            positives: self.positives.len(),
            negatives: self.negatives.len(),
        }
    }

    fn check(&self, g: &Behaviour) -> Result<(), BehaviourError> {
        if g.universe != self.id {
            return Err(BehaviourError::CrossUniverse);
        }
        Ok(())
    }

    /// `A⊥` for a set of designs given by indices of `polarity`.
    pub fn perp(&self, polarity: Polarity, set: &FixedBitSet) -> FixedBitSet {
        let (rows, n) = match polarity {
            Polarity::Positive => (&self.pos_orth, self.negatives.len()),
            Polarity::Negative => (&self.neg_orth, self.positives.len()),
        };
        let mut out = FixedBitSet::with_capacity(n);
        out.insert_range(..);
        for i in set.ones() {
            out.intersect_with(&rows[i]);
        }
        out
    }

    fn indices(&self, a: &[Design]) -> Result<(Polarity, FixedBitSet), BehaviourError> {
        let polarity = a.first().map(|d| d.polarity()).unwrap_or(Polarity::Positive);
        let mut set = FixedBitSet::with_capacity(self.size(polarity));
        for d in a {
            if d.polarity() != polarity {
                return Err(BehaviourError::Polarity(if polarity == Polarity::Positive { "positive" } else { "negative" }));
            }
            set.insert(self.index_of(d).ok_or_else(|| BehaviourError::NotInUniverse(d.to_string()))?);
        }
        Ok((polarity, set))
    }

    fn make(&self, polarity: Polarity, members: FixedBitSet, generators: Vec<Design>, provenance: String) -> Behaviour {
        Behaviour { polarity, members, generators, provenance, universe: self.id }
    }

    /// `A⊥`. An empty `A` is read as a set of designs of `polarity`.
    pub fn orthogonal_set(&self, a: &[Design], polarity: Polarity) -> Result<Behaviour, BehaviourError> {
        let (pa, set) = if a.is_empty() { (polarity, FixedBitSet::with_capacity(self.size(polarity))) } else { self.indices(a)? };
        let dual = opposite(pa);
        Ok(self.make(dual, self.perp(pa, &set), a.to_vec(), format!("orthogonal of {} designs", a.len())))
    }

    /// `A⊥⊥`. An empty `A` is read as a set of designs of `polarity`.
    pub fn biorthogonal(&self, a: &[Design], polarity: Polarity) -> Result<Behaviour, BehaviourError> {
        let (pa, set) = if a.is_empty() { (polarity, FixedBitSet::with_capacity(self.size(polarity))) } else { self.indices(a)? };
        if pa != polarity {
            return Err(BehaviourError::Polarity(if polarity == Polarity::Positive { "positive" } else { "negative" }));
        }
        let members = self.perp(opposite(polarity), &self.perp(polarity, &set));
        Ok(self.make(polarity, members, a.to_vec(), format!("biorthogonal of {} designs", a.len())))
    }

    /// All designs of a polarity.
    pub fn top(&self, polarity: Polarity) -> Behaviour {
        let mut all = FixedBitSet::with_capacity(self.size(polarity));
        all.insert_range(..);
        self.make(polarity, all, Vec::new(), "top".into())
    }

    pub fn dual(&self, g: &Behaviour) -> Result<Behaviour, BehaviourError> {
        self.check(g)?;
        Ok(self.make(opposite(g.polarity), self.perp(g.polarity, &g.members), Vec::new(), format!("dual of {}", g.provenance)))
    }

    /// Whether a set of designs equals its biorthogonal.
    pub fn is_closed(&self, polarity: Polarity, set: &FixedBitSet) -> bool {
        self.perp(opposite(polarity), &self.perp(polarity, set)) == *set
    }

    /// Membership, also for designs outside the enumeration (decided
    /// against the dual).
    pub fn contains(&self, g: &Behaviour, d: &Design) -> Result<bool, BehaviourError> {
        self.check(g)?;
        if d.polarity() != g.polarity {
            return Ok(false);
        }
        if let Some(i) = self.index_of(d) {
            return Ok(g.members.contains(i));
        }
        let dual = self.perp(g.polarity, &g.members);
        Ok(match d {
            Design::Positive(p) => dual.ones().all(|j| orth(p, &self.negatives[j])),
            Design::Negative(n) => dual.ones().all(|j| orth(&self.positives[j], n)),
        })
    }

    pub fn members(&self, g: &Behaviour) -> Vec<Design> {
        g.members.ones().map(|i| self.design(g.polarity, i)).collect()
    }

    pub fn summary_of(&self, g: &Behaviour) -> Result<BehaviourSummary, BehaviourError> {
        let dir = self.directory(g)?;
        Ok(BehaviourSummary {
            universe: self.summary(),
            polarity: g.polarity,
            provenance: g.provenance.clone(),
            generators: g.generators.iter().map(|d| d.to_string()).collect(),
            member_count: g.members.count_ones(..),
            directory: dir.iter().map(ram_text).collect(),
        })
    }

    pub(crate) fn with_members(&self, polarity: Polarity, members: FixedBitSet, provenance: String) -> Behaviour {
        self.make(polarity, members, Vec::new(), provenance)
    }

    pub(crate) fn same(&self, g: &Behaviour, h: &Behaviour) -> Result<(), BehaviourError> {
        self.check(g)?;
        self.check(h)?;
        if g.polarity != h.polarity {
            return Err(BehaviourError::Polarity("matching"));
        }
        Ok(())
    }
}

fn opposite(p: Polarity) -> Polarity {
    p.opposite()
}
