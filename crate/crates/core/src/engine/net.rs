//! Nets: a principal positive design cut against negative partners.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::designs::{check_design, infer_base, infer_negative, Address, Base, Design, Negative, Positive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub principal: Positive,
    pub principal_base: BTreeSet<Address>,
    pub partners: Vec<(Negative, BTreeSet<Address>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
pub enum NetError {
    #[error("design {index} is not typable on {base}")]
    Untyped { index: usize, base: String },
    #[error("condition 1: {0} and {1} overlap without being equal")]
    Overlap(String, String),
    #[error("condition 2: {0} appears more than twice")]
    Thrice(String),
    #[error("condition 3: {0} appears twice on the same side")]
    SameSide(String),
    #[error("condition 4: the cut graph has a cycle through design {0}")]
    Cycle(usize),
    #[error("the net is not closed: type {0}")]
    Open(String),
}

/// What validation learns about a net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetInfo {
    /// Uncut right-hand addresses of the principal's component.
    pub typ: BTreeSet<Address>,
    /// Cuts as (address, design holding it on the right, design with it on the left).
    pub cuts: Vec<(Address, usize, usize)>,
    /// Partners outside the principal's component.
    pub unreachable: Vec<usize>,
}

impl Net {
    /// A net whose designs sit on their least bases.
    pub fn new(principal: Positive, partners: Vec<Negative>) -> Result<Net, NetError> {
        let pb = infer_base(&principal, &BTreeSet::new())
            .map_err(|_| NetError::Untyped { index: 0, base: "any base".into() })?;
        let mut ps = Vec::new();
        for (k, n) in partners.into_iter().enumerate() {
            let b = infer_negative(&n, &BTreeSet::new())
                .map_err(|_| NetError::Untyped { index: k + 1, base: "any base".into() })?;
            ps.push((n, b));
        }
        Ok(Net { principal, principal_base: pb, partners: ps })
    }

    /// A net with explicit bases, each checked.
    pub fn with_bases(principal: (Positive, Base), partners: Vec<(Negative, Base)>) -> Result<Net, NetError> {
        let (p, pb) = principal;
        if pb.left.is_some() || !check_design(&Design::Positive(p.clone()), &pb) {
            return Err(NetError::Untyped { index: 0, base: pb.to_string() });
        }
        let mut ps = Vec::new();
        for (k, (n, b)) in partners.into_iter().enumerate() {
            if !check_design(&Design::Negative(n.clone()), &b) {
                return Err(NetError::Untyped { index: k + 1, base: b.to_string() });
            }
            ps.push((n, b.right));
        }
        Ok(Net { principal: p, principal_base: pb.right, partners: ps })
    }

    pub fn bases(&self) -> Vec<Base> {
        let mut out = vec![Base::positive(self.principal_base.iter().cloned())];
        out.extend(self.partners.iter().map(|(n, r)| Base::negative(n.focus.clone(), r.iter().cloned())));
        out
    }

    /// Checks the four net conditions and computes the type.
    pub fn validate(&self) -> Result<NetInfo, NetError> {
        let partners: Vec<(&Address, &BTreeSet<Address>)> = self.partners.iter().map(|(n, r)| (&n.focus, r)).collect();
        analyze(&self.principal_base, &partners)
    }
}

/// Net conditions over bases alone. Partner `k` is design `k + 1`.
pub(crate) fn analyze(principal: &BTreeSet<Address>, partners: &[(&Address, &BTreeSet<Address>)]) -> Result<NetInfo, NetError> {
    // (address, design, on the left)
    let mut occ: Vec<(&Address, usize, bool)> = Vec::new();
    for a in principal {
        occ.push((a, 0, false));
    }
    for (k, (z, r)) in partners.iter().enumerate() {
        occ.push((z, k + 1, true));
        for a in r.iter() {
            occ.push((a, k + 1, false));
        }
    }
    for (x, (a, _, _)) in occ.iter().enumerate() {
        for (b, _, _) in &occ[x + 1..] {
            if a != b && !a.disjoint(b) {
                return Err(NetError::Overlap(a.to_string(), b.to_string()));
            }
        }
    }
    let mut by_addr: BTreeMap<&Address, Vec<(usize, bool)>> = BTreeMap::new();
    for (a, d, left) in &occ {
        by_addr.entry(a).or_default().push((*d, *left));
    }
    let mut cuts = Vec::new();
    for (a, v) in &by_addr {
        match v[..] {
            [_] => {}
            [(d1, l1), (d2, l2)] => {
                if l1 == l2 {
                    return Err(NetError::SameSide(a.to_string()));
                }
                let (right, left) = if l1 { (d2, d1) } else { (d1, d2) };
                cuts.push(((*a).clone(), right, left));
            }
            _ => return Err(NetError::Thrice(a.to_string())),
        }
    }
    let n = partners.len() + 1;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (_, a, b) in &cuts {
        let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
        if ra == rb {
            return Err(NetError::Cycle(*b));
        }
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    let in_comp: Vec<bool> = (0..n).map(|d| find(&mut parent, d) == root).collect();
    let cut_addrs: BTreeSet<&Address> = cuts.iter().map(|(a, _, _)| a).collect();
    let typ = occ
        .iter()
        .filter(|(a, d, left)| !left && in_comp[*d] && !cut_addrs.contains(a))
        .map(|(a, _, _)| (*a).clone())
        .collect();
    let unreachable = (1..n).filter(|&d| !in_comp[d]).map(|d| d - 1).collect();
    Ok(NetInfo { typ, cuts, unreachable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        Address::parse(s).unwrap()
    }

    #[test]
    fn single_cut() {
        let n = Net::new(Positive::parse("(+ . {})").unwrap(), vec![Negative::parse("(- . ({} -> dai))").unwrap()]).unwrap();
        let info = n.validate().unwrap();
        assert!(info.typ.is_empty());
        assert_eq!(info.cuts.len(), 1);
    }

    #[test]
    fn address_thrice() {
        let p = Positive::parse("(+ 1 {})").unwrap();
        let psi = Negative::parse("(- 1)").unwrap();
        let n = Net::new(p, vec![psi.clone(), psi]).unwrap();
        assert!(matches!(n.validate(), Err(NetError::Thrice(_))));
    }

    #[test]
    fn cyclic_cuts() {
        let p = (Positive::Daimon, Base::positive([a("1"), a("2")]));
        let n1 = (Negative::skunk(a("1")), Base::negative(a("1"), [a("3")]));
        let n2 = (Negative::skunk(a("2")), Base::negative(a("2"), [a("4")]));
        let n3 = (Negative::skunk(a("3")), Base::negative(a("3"), []));
        let ok = Net::with_bases(p.clone(), vec![n1.clone(), n2.clone(), n3]).unwrap();
        assert_eq!(ok.validate().unwrap().typ, [a("4")].into());
        // 1 -> 3 -> 4 -> back to the principal through 4 and 2
        let cyc = (Negative::skunk(a("4")), Base::negative(a("4"), [a("3")]));
        let bad = Net::with_bases(p, vec![n1, n2, (Negative::skunk(a("3")), Base::negative(a("3"), [])), cyc]).unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn three_cycle() {
        let p = (Positive::Daimon, Base::positive([a("1"), a("2")]));
        let n1 = (Negative::skunk(a("1")), Base::negative(a("1"), [a("3")]));
        let n2 = (Negative::skunk(a("2")), Base::negative(a("2"), []));
        let n3 = (Negative::skunk(a("3")), Base::negative(a("3"), []));
        assert!(Net::with_bases(p.clone(), vec![n1.clone(), n2, n3]).unwrap().validate().is_ok());
        let m2 = (Negative::skunk(a("2")), Base::negative(a("2"), [a("5")]));
        let m3 = (Negative::skunk(a("3")), Base::negative(a("3"), [a("5")]));
        let e = Net::with_bases(p, vec![n1, m2, m3]).unwrap().validate().unwrap_err();
        assert!(matches!(e, NetError::SameSide(_)));
    }
}
