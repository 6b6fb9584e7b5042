//! The standard designs, over a finite ramification alphabet where the
//! definition ranges over all finite sets.

use std::collections::BTreeSet;

use super::address::{Address, Ram};
use super::design::{Negative, Positive};

pub fn alphabet(rams: &[&[u32]]) -> BTreeSet<Ram> {
    rams.iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn dai() -> Positive {
    Positive::Daimon
}

/// `Dai⁻_ξ`: ✠ after every `J` of the alphabet.
pub fn dai_neg(xi: Address, alphabet: &BTreeSet<Ram>) -> Negative {
    Negative::new(xi, alphabet.iter().map(|j| (j.clone(), Positive::Daimon)))
}

pub fn skunk(xi: Address) -> Negative {
    Negative::skunk(xi)
}

pub fn skunk_pos(xi: Address, ram: Ram) -> Positive {
    Positive::with_children(xi, ram, Negative::skunk)
}

pub fn ram(xi: Address, ram: Ram, alphabet: &BTreeSet<Ram>) -> Positive {
    Positive::with_children(xi, ram, |a| dai_neg(a, alphabet))
}

/// `Dir_N` on the empty address.
pub fn dir(n: &BTreeSet<Ram>) -> Negative {
    Negative::new(Address::root(), n.iter().map(|j| (j.clone(), Positive::Daimon)))
}

/// The fax on `ξ ⊢ ξ'`, cut after `depth` negative/positive layers.
pub fn fax(xi: &Address, xi2: &Address, alphabet: &BTreeSet<Ram>, depth: usize) -> Negative {
    if depth == 0 {
        return Negative::skunk(xi.clone());
    }
    Negative::new(
        xi.clone(),
        alphabet.iter().map(|j| {
            let p = Positive::with_children(xi2.clone(), j.clone(), |a| {
                let (_, i) = a.parent().expect("child");
                fax(&a, &xi.child(i), alphabet, depth - 1)
            });
            (j.clone(), p)
        }),
    )
}
