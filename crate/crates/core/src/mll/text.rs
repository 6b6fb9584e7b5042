//! Line-oriented text format for paraproof structures.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{parse_formula, Occ};
use super::structure::{class_text, LeafRef, ParaproofStructure, Tree};
use crate::text::{relocate, Cursor, ParseError};

impl fmt::Display for ParaproofStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            let occs: Vec<String> = t.leaves.iter().map(|u| u.to_string()).collect();
            writeln!(f, "tree {}: {} @ {{{}}}", i, t.formula, occs.join(", "))?;
        }
        for c in &self.classes {
            writeln!(f, "class {}", class_text(c))?;
        }
        for (i, j) in &self.cuts {
            writeln!(f, "cut {{{},{}}}", i, j)?;
        }
        Ok(())
    }
}

fn occ_token(c: &mut Cursor) -> Result<Occ, ParseError> {
    c.skip_ws();
    let r = c.rest();
    let end = r.find(|ch: char| !(ch == '.' || ch.is_ascii_digit())).unwrap_or(r.len());
    let tok = &r[..end];
    let occ = Occ::parse(tok).ok_or_else(|| c.error(format!("bad occurrence '{}'", tok)))?;
    for _ in 0..end {
        c.bump();
    }
    Ok(occ)
}

fn braced<T>(c: &mut Cursor, mut item: impl FnMut(&mut Cursor) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
    c.expect('{')?;
    let mut out = Vec::new();
    if c.eat('}') {
        return Ok(out);
    }
    loop {
        out.push(item(c)?);
        if c.eat('}') {
            return Ok(out);
        }
        c.expect(',')?;
    }
}

impl ParaproofStructure {
    pub fn parse(src: &str) -> Result<ParaproofStructure, ParseError> {
        let mut trees = Vec::new();
        let mut classes = Vec::new();
        let mut cuts = Vec::new();
        for (n, line) in src.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            parse_line(body, &mut trees, &mut classes, &mut cuts).map_err(|e| relocate(e, n + 1, 0))?;
        }
        Ok(ParaproofStructure::new(trees, classes, cuts))
    }
}

fn parse_line(
    body: &str,
    trees: &mut Vec<Tree>,
    classes: &mut Vec<BTreeSet<LeafRef>>,
    cuts: &mut Vec<(usize, usize)>,
) -> Result<(), ParseError> {
    let mut c = Cursor::new(body);
    if c.eat_keyword("tree") {
        let idx = c.number()? as usize;
        if idx != trees.len() {
            return Err(c.error(format!("expected tree index {}", trees.len())));
        }
        c.expect(':')?;
        let formula = parse_formula(&mut c)?;
        c.expect('@')?;
        let occs = braced(&mut c, occ_token)?;
        trees.push(Tree::new(formula, occs));
    } else if c.eat_keyword("class") {
        let leaves = braced(&mut c, |c| {
            let t = c.number()? as usize;
            c.expect(':')?;
            Ok(LeafRef::new(t, occ_token(c)?))
        })?;
        classes.push(leaves.into_iter().collect());
    } else if c.eat_keyword("cut") {
        let ends = braced(&mut c, |c| Ok(c.number()? as usize))?;
        if ends.len() != 2 {
            return Err(c.error("a cut joins exactly two conclusions"));
        }
        cuts.push((ends[0], ends[1]));
    } else {
        return Err(c.error("expected 'tree', 'class' or 'cut'"));
    }
    c.expect_end()
}
