use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::text::{Cursor, ParseError};

/// A locus: a word of biases. The empty word prints as `.`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(pub Vec<u32>);

/// A ramification: a finite set of biases.
pub type Ram = BTreeSet<u32>;

impl Address {
    pub fn root() -> Address {
        Address(Vec::new())
    }

    pub fn from_slice(v: &[u32]) -> Address {
        Address(v.to_vec())
    }

    pub fn child(&self, i: u32) -> Address {
        let mut v = self.0.clone();
        v.push(i);
        Address(v)
    }

    pub fn children(&self, ram: &Ram) -> BTreeSet<Address> {
        ram.iter().map(|&i| self.child(i)).collect()
    }

    pub fn parent(&self) -> Option<(Address, u32)> {
        let (&last, init) = self.0.split_last()?;
        Some((Address(init.to_vec()), last))
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Neither is a prefix of the other.
    pub fn disjoint(&self, other: &Address) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, suffix: &[u32]) -> Address {
        let mut v = self.0.clone();
        v.extend_from_slice(suffix);
        Address(v)
    }

    pub fn parse(src: &str) -> Result<Address, ParseError> {
        let mut c = Cursor::new(src);
        let a = parse_address(&mut c)?;
        c.expect_end()?;
        Ok(a)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, ".");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Pairwise disjointness of a set of addresses.
pub fn well_formed<'a>(addrs: impl IntoIterator<Item = &'a Address>) -> bool {
    let v: Vec<&Address> = addrs.into_iter().collect();
    for (k, a) in v.iter().enumerate() {
        for b in &v[k + 1..] {
            if !a.disjoint(b) {
                return false;
            }
        }
    }
    true
}

pub fn ram_text(r: &Ram) -> String {
    let parts: Vec<String> = r.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(" "))
}

pub(crate) fn parse_address(c: &mut Cursor) -> Result<Address, ParseError> {
    match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let mut v = vec![c.number()?];
            while c.peek_raw() == Some('.') && c.rest()[1..].starts_with(|ch: char| ch.is_ascii_digit()) {
                c.bump();
                v.push(c.number()?);
            }
            Ok(Address(v))
        }
        Some('.') => {
            c.bump();
            Ok(Address::root())
        }
        _ => Err(c.error("expected an address")),
    }
}

pub(crate) fn parse_ram(c: &mut Cursor) -> Result<Ram, ParseError> {
    c.expect('{')?;
    let mut r = Ram::new();
    while !c.eat('}') {
        let i = c.number()?;
        if !r.insert(i) {
            return Err(c.error(format!("bias {} repeated", i)));
        }
        c.eat(',');
    }
    Ok(r)
}

pub fn parse_ram_text(src: &str) -> Result<Ram, ParseError> {
    let mut c = Cursor::new(src);
    let r = parse_ram(&mut c)?;
    c.expect_end()?;
    Ok(r)
}

/// A set of ramifications such as `{1} {2} {1 2}`.
pub fn parse_alphabet_text(src: &str) -> Result<BTreeSet<Ram>, ParseError> {
    let mut c = Cursor::new(src);
    let mut out = BTreeSet::new();
    while !c.at_end() {
        out.insert(parse_ram(&mut c)?);
        c.eat(',');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text() {
        for s in [".", "1", "1.2.30"] {
            assert_eq!(Address::parse(s).unwrap().to_string(), s);
        }
        assert!(Address::parse("1.").is_err());
        assert_eq!(parse_ram_text("{3, 1 2}").unwrap(), [1, 2, 3].into());
        assert_eq!(ram_text(&[1, 2].into()), "{1 2}");
        assert_eq!(parse_alphabet_text("{1} {1 2}, {}").unwrap().len(), 3);
        assert!(parse_alphabet_text("{1} 2").is_err());
    }

    #[test]
    fn disjointness() {
        let a = Address::from_slice(&[1]);
        assert!(!a.disjoint(&a.child(2)));
        assert!(a.disjoint(&Address::from_slice(&[2])));
        assert!(!Address::root().disjoint(&a));
        assert!(well_formed(&[a.child(1), a.child(2)]));
    }
}
