//! Designs and terms. A variable stands for an address: free variables for
//! the addresses of the base, bound ones for the subaddresses a negative
//! action opens.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::designs::{check_design, well_formed, Address, Base, Design, Negative, Positive, Ram};

use super::term::{affine_check, Lambda, NegTerm, PosTerm, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("not affine: a variable is used twice")]
    Affine,
    #[error("ill-typed: {0}")]
    Typing(String),
    #[error("not a slice")]
    NotSlice,
    #[error("polarity of the base does not match")]
    Polarity,
}

/// Name of the free variable standing for an address of a base.
pub fn address_name(a: &Address) -> String {
    let parts: Vec<String> = a.0.iter().map(|i| i.to_string()).collect();
    format!("v{}", parts.join("_"))
}

struct ToTerm<'a> {
    names: BTreeMap<Address, String>,
    next: &'a mut usize,
}

impl ToTerm<'_> {
    fn fresh(&mut self) -> String {
        let v = format!("x{}", self.next);
        *self.next += 1;
        v
    }

    fn pos(&mut self, p: &Positive) -> Result<PosTerm, LambdaError> {
        Ok(match p {
            Positive::Omega => PosTerm::Omega,
            Positive::Daimon => PosTerm::Daimon,
            Positive::Proper { focus, ram, children } => {
                let head = self
                    .names
                    .get(focus)
                    .cloned()
                    .ok_or_else(|| LambdaError::Typing(format!("{focus} is not in the base")))?;
                let mut args = Vec::new();
                for n in children.values() {
                    args.push(self.neg(n)?);
                }
                PosTerm::App { head, ram: ram.clone(), args }
            }
        })
    }

    fn neg(&mut self, n: &Negative) -> Result<NegTerm, LambdaError> {
        let mut branches = BTreeMap::new();
        for (j, p) in &n.branches {
            let mut vars = Vec::new();
            for &i in j {
                let v = self.fresh();
                self.names.insert(n.focus.child(i), v.clone());
                vars.push(v);
            }
            let body = self.pos(p)?;
            for &i in j {
                self.names.remove(&n.focus.child(i));
            }
            branches.insert(j.clone(), Lambda { vars, body });
        }
        Ok(NegTerm { branches })
    }
}

/// Term of a design, free variables named by `names`, bound ones `x0, x1, ..`
/// from a monotone counter.
pub fn design_to_term(d: &Design, names: &BTreeMap<Address, String>) -> Result<Term, LambdaError> {
    let mut next = 0;
    let mut t = ToTerm { names: names.clone(), next: &mut next };
    match d {
        Design::Positive(p) => t.pos(p).map(Term::Pos),
        Design::Negative(n) => t.neg(n).map(Term::Neg),
    }
}

fn to_pos(p: &PosTerm, scope: &mut Vec<(String, Address)>) -> Result<Positive, LambdaError> {
    Ok(match p {
        PosTerm::Omega => Positive::Omega,
        PosTerm::Daimon => Positive::Daimon,
        PosTerm::App { head, ram, args } => {
            let focus = scope
                .iter()
                .rev()
                .find(|(v, _)| v == head)
                .map(|(_, a)| a.clone())
                .ok_or_else(|| LambdaError::Unbound(head.clone()))?;
            if ram.len() != args.len() {
                return Err(LambdaError::Typing(format!("{head} applied to {} arguments", args.len())));
            }
            let mut children = BTreeMap::new();
            for (&i, m) in ram.iter().zip(args) {
                children.insert(i, to_neg(m, &focus.child(i), scope)?);
            }
            Positive::Proper { focus, ram: ram.clone(), children }
        }
    })
}

fn to_neg(m: &NegTerm, focus: &Address, scope: &mut Vec<(String, Address)>) -> Result<Negative, LambdaError> {
    let mut n = Negative::skunk(focus.clone());
    for (j, l) in &m.branches {
        if j.len() != l.vars.len() {
            return Err(LambdaError::Typing(format!("branch with {} variables", l.vars.len())));
        }
        let before = scope.len();
        scope.extend(l.vars.iter().cloned().zip(j.iter().map(|&i| focus.child(i))));
        let p = to_pos(&l.body, scope);
        scope.truncate(before);
        n.set_branch(j.clone(), p?);
    }
    Ok(n)
}

/// Design of an affine term whose free variables are placed by `scope`.
/// `focus` is required for a negative term.
pub fn term_to_design(
    t: &Term,
    focus: Option<&Address>,
    scope: &BTreeMap<String, Address>,
) -> Result<Design, LambdaError> {
    let mut sc: Vec<(String, Address)> = scope.iter().map(|(v, a)| (v.clone(), a.clone())).collect();
    let d = match (t, focus) {
        (Term::Pos(p), None) => Design::Positive(to_pos(p, &mut sc)?),
        (Term::Neg(m), Some(z)) => Design::Negative(to_neg(m, z, &mut sc)?),
        _ => return Err(LambdaError::Polarity),
    };
    if !affine_check(t) {
        return Err(LambdaError::Affine);
    }
    let right: Vec<Address> = scope.values().cloned().collect();
    let base = match focus {
        None => Base::positive(right),
        Some(z) => Base::negative(z.clone(), right),
    };
    if !well_formed(base.addresses()) {
        return Err(LambdaError::Typing(format!("{base} is not a base")));
    }
    if !check_design(&d, &base) {
        return Err(LambdaError::Typing(format!("{d} does not have base {base}")));
    }
    Ok(d)
}

fn base_names(b: &Base) -> BTreeMap<Address, String> {
    b.right.iter().map(|a| (a.clone(), address_name(a))).collect()
}

fn check_polarity(d: &Design, b: &Base) -> Result<(), LambdaError> {
    match (d, &b.left) {
        (Design::Positive(_), None) | (Design::Negative(_), Some(_)) => Ok(()),
        _ => Err(LambdaError::Polarity),
    }
}

/// Term of a slice on `b`; the address `ξ` of the base is the free variable
/// `address_name(ξ)`.
pub fn slice_to_term(d: &Design, b: &Base) -> Result<Term, LambdaError> {
    check_polarity(d, b)?;
    if !b.is_well_formed() {
        return Err(LambdaError::Typing(format!("{b} is not a base")));
    }
    if !d.is_slice() {
        return Err(LambdaError::NotSlice);
    }
    if !check_design(d, b) {
        return Err(LambdaError::Typing(format!("{d} does not have base {b}")));
    }
    design_to_term(d, &base_names(b))
}

/// Converse of `slice_to_term`.
pub fn term_to_slice(t: &Term, b: &Base) -> Result<Design, LambdaError> {
    if !t.is_slice() {
        return Err(LambdaError::NotSlice);
    }
    let scope = base_names(b).into_iter().map(|(a, v)| (v, a)).collect();
    term_to_design(t, b.left.as_ref(), &scope)
}

/// The term fax: copies whatever arrives on its address to `target`, up to
/// `depth` layers, over `alphabet`.
pub fn fax_term(target: &str, alphabet: &[Ram], depth: usize, next: &mut usize) -> NegTerm {
    if depth == 0 {
        return NegTerm::default();
    }
    let mut branches = BTreeMap::new();
    for j in alphabet {
        let vars: Vec<String> = j
            .iter()
            .map(|_| {
                *next += 1;
                format!("y{}", next)
            })
            .collect();
        let args = vars.iter().map(|v| fax_term(v, alphabet, depth - 1, next)).collect();
        branches.insert(j.clone(), Lambda { vars, body: PosTerm::App { head: target.to_string(), ram: j.clone(), args } });
    }
    NegTerm { branches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::named::{alphabet, dai_neg, fax};
    use crate::lambda::term::canonical;

    fn a(v: &[u32]) -> Address {
        Address::from_slice(v)
    }

    #[test]
    fn running_pair() {
        let phi = Design::parse("(+ . {1 2} (- 1 ({1} -> (+ 1.1 {1}))) (- 2 ({1} -> dai)))").unwrap();
        let t = slice_to_term(&phi, &Base::positive([Address::root()])).unwrap();
        assert_eq!(t.to_string(), "v{\\{x0}.x0{{}} \\{x1}.dai}");
        assert_eq!(term_to_slice(&t, &Base::positive([Address::root()])).unwrap(), phi);
        let psi = Design::parse("(- . ({1 2} -> (+ 1 {1} (- 1.1 ({1} -> (+ 2 {1}))))))").unwrap();
        let b = Base::negative(Address::root(), []);
        let t = slice_to_term(&psi, &b).unwrap();
        assert_eq!(t.to_string(), "\\{x0 x1}.x0{\\{x2}.x1{{}}}");
        assert_eq!(term_to_slice(&t, &b).unwrap(), psi);
    }

    #[test]
    fn skunk_and_dai() {
        let b = Base::negative(a(&[3]), []);
        assert_eq!(slice_to_term(&Design::Negative(Negative::skunk(a(&[3]))), &b).unwrap().to_string(), "{}");
        let d = Design::Negative(dai_neg(a(&[3]), &alphabet(&[&[1], &[2]])));
        assert_eq!(slice_to_term(&d, &b), Err(LambdaError::NotSlice));
        assert_eq!(design_to_term(&d, &BTreeMap::new()).unwrap().to_string(), "{{1} = \\{x0}.dai; {2} = \\{x1}.dai}");
    }

    #[test]
    fn failures() {
        let b = Base::positive([Address::root()]);
        let twice = Term::parse("v{\\{x}.v{}@{}}@{1}").unwrap();
        assert_eq!(term_to_slice(&twice, &b), Err(LambdaError::Affine));
        let unbound = Term::parse("w{}").unwrap();
        assert_eq!(term_to_slice(&unbound, &b), Err(LambdaError::Unbound("w".into())));
        assert_eq!(term_to_slice(&Term::parse("{}").unwrap(), &b), Err(LambdaError::Polarity));
    }

    #[test]
    fn fax_matches_the_design() {
        let r = alphabet(&[&[1], &[1, 2]]);
        let rams: Vec<Ram> = r.iter().cloned().collect();
        let design = fax(&a(&[4]), &a(&[5]), &r, 2);
        let names = [(a(&[5]), "x".to_string())].into();
        let t = design_to_term(&Design::Negative(design), &names).unwrap();
        let f = fax_term("x", &rams, 2, &mut 0);
        assert_eq!(canonical(&t), canonical(&Term::Neg(f)));
    }
}
