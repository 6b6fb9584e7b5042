use std::fmt;

use serde::{Deserialize, Serialize};

use crate::text::{Cursor, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(String),
    Dual(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(x) => Formula::Dual(x.clone()),
            Formula::Dual(x) => Formula::Atom(x.clone()),
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Dual(_))
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn subformula_at(&self, u: &Occ) -> Option<&Formula> {
        let mut f = self;
        for &step in &u.0 {
            let (a, b) = f.children()?;
            f = if step == 1 { a } else { b };
        }
        Some(f)
    }

    pub fn size(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.size() + b.size(),
            None => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.depth().max(b.depth()),
            None => 0,
        }
    }

    /// Occurrences of all atomic subformulas, left to right.
    pub fn atom_occurrences(&self) -> Vec<Occ> {
        let mut out = Vec::new();
        fn go(f: &Formula, at: &mut Vec<u8>, out: &mut Vec<Occ>) {
            match f.children() {
                Some((a, b)) => {
                    at.push(1);
                    go(a, at, out);
                    at.pop();
                    at.push(2);
                    go(b, at, out);
                    at.pop();
                }
                None => out.push(Occ(at.clone())),
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn parse(src: &str) -> Result<Formula, ParseError> {
        let mut c = Cursor::new(src);
        let f = parse_formula(&mut c)?;
        c.expect_end()?;
        Ok(f)
    }
}

pub(crate) fn parse_formula(c: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = if c.eat('(') {
        let a = parse_formula(c)?;
        let tensor = if c.eat('*') {
            true
        } else if c.eat('%') {
            false
        } else {
            return Err(c.error("expected '*' or '%'"));
        };
        let b = parse_formula(c)?;
        c.expect(')')?;
        if tensor {
            Formula::tensor(a, b)
        } else {
            Formula::par(a, b)
        }
    } else {
        Formula::Atom(c.ident()?)
    };
    while c.eat('^') {
        f = f.dual();
    }
    Ok(f)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(x) => write!(f, "{}", x),
            Formula::Dual(x) => write!(f, "{}^", x),
            Formula::Tensor(a, b) => write!(f, "({} * {})", a, b),
            Formula::Par(a, b) => write!(f, "({} % {})", a, b),
        }
    }
}

/// A word over {1, 2} addressing a subformula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Occ(pub Vec<u8>);

impl Occ {
    pub fn root() -> Occ {
        Occ(Vec::new())
    }

    pub fn child(&self, i: u8) -> Occ {
        let mut v = self.0.clone();
        v.push(i);
        Occ(v)
    }

    pub fn parent(&self) -> Option<Occ> {
        let mut v = self.0.clone();
        v.pop()?;
        Some(Occ(v))
    }

    pub fn is_prefix_of(&self, other: &Occ) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str) -> Option<Occ> {
        if s == "." {
            return Some(Occ::root());
        }
        if s.is_empty() {
            return None;
        }
        s.chars()
            .map(|c| match c {
                '1' => Some(1),
                '2' => Some(2),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()
            .map(Occ)
    }
}

impl fmt::Display for Occ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, ".");
        }
        for d in &self.0 {
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(f("X").dual(), f("X^"));
        assert_eq!(f("(X * Y)").dual().dual(), f("(X * Y)"));
        assert_eq!(f("(X * Y)").dual(), f("(X^ % Y^)"));
        assert_eq!(f("(X * Y)^"), f("(X^ % Y^)"));
    }

    #[test]
    fn subformula_examples() {
        let g = f("((X * Y) % Z)");
        assert_eq!(g.subformula_at(&Occ::root()), Some(&g));
        assert_eq!(g.subformula_at(&Occ(vec![1, 2])), Some(&f("Y")));
        assert_eq!(f("X").subformula_at(&Occ(vec![1])), None);
    }

    #[test]
    fn print_round_trip() {
        for s in ["X", "X^", "((A * B^) % C)", "(x1 % (y * z^))"] {
            assert_eq!(f(s).to_string(), s);
        }
    }

    #[test]
    fn occ_text() {
        assert_eq!(Occ::parse(".").unwrap(), Occ::root());
        assert_eq!(Occ::parse("12").unwrap().to_string(), "12");
        assert!(Occ::parse("3").is_none());
    }
}
