//! Text syntax: `dai`, `omega`, `(+ ξ {i..} neg..)` and `(- ζ ({J} -> pos) ..)`.

use std::collections::BTreeSet;

use crate::text::{Cursor, ParseError};

use super::address::{parse_address, parse_ram, Address};
use super::design::{Design, Negative, Positive};
use super::typing::Base;

pub(crate) fn parse_positive(c: &mut Cursor) -> Result<Positive, ParseError> {
    if c.eat_keyword("dai") {
        return Ok(Positive::Daimon);
    }
    if c.eat_keyword("omega") {
        return Ok(Positive::Omega);
    }
    let start = c.clone();
    c.expect('(')?;
    if !c.eat('+') {
        return Err(c.error("expected 'dai', 'omega' or '(+'"));
    }
    let focus = parse_address(c)?;
    let ram = parse_ram(c)?;
    // omitted children are skunks
    let mut given = std::collections::BTreeMap::new();
    while !c.eat(')') {
        let n = parse_negative(c)?;
        if given.insert(n.focus.clone(), n).is_some() {
            return Err(start.error("child given twice"));
        }
    }
    let children = focus
        .children(&ram)
        .into_iter()
        .map(|a| given.remove(&a).unwrap_or_else(|| Negative::skunk(a)))
        .collect();
    if let Some(a) = given.keys().next() {
        return Err(start.error(format!("child at {a} does not match ({focus}, {})", super::address::ram_text(&ram))));
    }
    Positive::proper(focus, ram, children).map_err(|e| start.error(e.to_string()))
}

pub(crate) fn parse_negative(c: &mut Cursor) -> Result<Negative, ParseError> {
    c.expect('(')?;
    if !c.eat('-') {
        return Err(c.error("expected '(-'"));
    }
    let focus = parse_address(c)?;
    let mut n = Negative::skunk(focus);
    while !c.eat(')') {
        c.expect('(')?;
        let j = parse_ram(c)?;
        c.expect_str("->")?;
        let p = parse_positive(c)?;
        c.expect(')')?;
        if n.branches.contains_key(&j) {
            return Err(c.error("ramification answered twice"));
        }
        n.set_branch(j, p);
    }
    Ok(n)
}

pub(crate) fn parse_any(c: &mut Cursor) -> Result<Design, ParseError> {
    let mut probe = c.clone();
    if probe.eat('(') && probe.eat('-') {
        Ok(Design::Negative(parse_negative(c)?))
    } else {
        Ok(Design::Positive(parse_positive(c)?))
    }
}

/// `|- a b` or `z |- a b`.
pub(crate) fn parse_base(c: &mut Cursor) -> Result<Base, ParseError> {
    let left = if c.peek() == Some('|') { None } else { Some(parse_address(c)?) };
    c.expect_str("|-")?;
    let mut right = BTreeSet::new();
    while matches!(c.peek(), Some(ch) if ch == '.' || ch.is_ascii_digit()) {
        right.insert(parse_address(c)?);
    }
    Ok(Base { left, right })
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Cursor) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut c = Cursor::new(src);
    let v = f(&mut c)?;
    c.expect_end()?;
    Ok(v)
}

impl Positive {
    pub fn parse(src: &str) -> Result<Positive, ParseError> {
        whole(src, parse_positive)
    }
}

impl Negative {
    pub fn parse(src: &str) -> Result<Negative, ParseError> {
        whole(src, parse_negative)
    }
}

impl Design {
    pub fn parse(src: &str) -> Result<Design, ParseError> {
        whole(src, parse_any)
    }
}

impl Base {
    pub fn parse(src: &str) -> Result<Base, ParseError> {
        whole(src, parse_base)
    }
}

/// A sequence of designs, each optionally followed by `: base`.
pub fn parse_design_list(src: &str) -> Result<Vec<(Design, Option<Base>)>, ParseError> {
    let mut c = Cursor::new(src);
    let mut out = Vec::new();
    while !c.at_end() {
        let d = parse_any(&mut c)?;
        let b = if c.eat(':') { Some(parse_base(&mut c)?) } else { None };
        c.eat(';');
        out.push((d, b));
    }
    Ok(out)
}

pub fn addresses_text(a: &BTreeSet<Address>) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "dai",
            "omega",
            "(+ . {1 2} (- 1) (- 2 ({} -> dai)))",
            "(+ . {1} (- 1 ({1} -> (+ 1.1 {}))))",
        ] {
            assert_eq!(Positive::parse(s).unwrap().to_string(), s);
        }
        let n = "(- . ({1} -> dai) ({2} -> (+ 2 {})))";
        assert_eq!(Negative::parse(n).unwrap().to_string(), n);
    }

    #[test]
    fn omega_branches_are_dropped() {
        let n = Negative::parse("(- 3 ({1} -> omega))").unwrap();
        assert!(n.branches.is_empty());
    }

    #[test]
    fn child_mismatch_reports_position() {
        let e = Positive::parse("(+ . {1} (- 2))").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let p = Positive::parse("(+ . {1 2} (- 1))").unwrap();
        assert_eq!(p.to_string(), "(+ . {1 2} (- 1) (- 2))");
    }

    #[test]
    fn lists_with_bases() {
        let l = parse_design_list("(+ . {1} (- 1)) : |- .\n(- . ({1} -> dai)) : . |-").unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[1].1.as_ref().unwrap().left, Some(Address::root()));
    }
}
