//! Sparse multivariate polynomials in the doubly indexed variables `x_i^{(s)}`.
//!
//! A variable carries a factor index `i` (which tensor factor it belongs to)
//! and a color `s`, a residue mod `n` stored by its canonical representative
//! in `1..=n`. These polynomials house the loop elementary symmetric
//! functions, loop Schur functions, and the energy function.

use crate::error::{Error, Result};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Canonical residue representative in `1..=n` (color 0 is stored as `n`).
pub fn canon_color(s: i64, n: usize) -> usize {
    let n = n as i64;
    let r = s.rem_euclid(n);
    if r == 0 {
        n as usize
    } else {
        r as usize
    }
}

/// Identifier of the variable `x_factor^{(color)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId {
    pub factor: usize,
    pub color: usize,
}

impl VarId {
    pub fn new(factor: usize, color: i64, n: usize) -> Self {
        VarId {
            factor,
            color: canon_color(color, n),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}^({})", self.factor, self.color)
    }
}

/// A monomial: variables mapped to positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<VarId, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Monomial(m)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(*v).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = (&VarId, &u32)> {
        self.0.iter()
    }

    /// Lexicographic monomial order: the monomial with the higher power of
    /// the earliest variable is greater. Unlike the derived [`Ord`], this is
    /// compatible with multiplication, as leading-term division requires.
    fn lex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }

    /// Whether `other` divides `self`; on success returns the quotient.
    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let cur = out.get_mut(v)?;
            if *cur < *e {
                return None;
            }
            *cur -= e;
            if *cur == 0 {
                out.remove(v);
            }
        }
        Some(Monomial(out))
    }
}

/// Sparse polynomial over [`Rat`]; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopVarPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl LoopVarPoly {
    pub fn zero() -> Self {
        LoopVarPoly::default()
    }

    pub fn one() -> Self {
        LoopVarPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LoopVarPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        LoopVarPoly::from_monomial(Monomial::var(v), Rat::one())
    }

    pub fn from_monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LoopVarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Exact value at the assignment; errors on any uncovered variable.
    pub fn eval(&self, assignment: &BTreeMap<VarId, Rat>) -> Result<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let val = assignment.get(v).ok_or(Error::MissingVariable(*v))?;
                term *= val.pow(*e);
            }
            total += term;
        }
        Ok(total)
    }

    /// True iff `self - other` is the zero polynomial.
    pub fn poly_equal(&self, other: &LoopVarPoly) -> bool {
        self == other
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    ///
    /// Division by leading-term elimination in the lex monomial order; used
    /// by the fraction-free determinant, where divisibility is guaranteed.
    pub fn div_exact(&self, divisor: &LoopVarPoly) -> Result<LoopVarPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero("polynomial divisor".into()));
        }
        let lex_max = |p: &LoopVarPoly| -> (Monomial, Rat) {
            let (m, c) = p
                .terms
                .iter()
                .max_by(|a, b| a.0.lex_cmp(b.0))
                .expect("nonzero polynomial");
            (m.clone(), c.clone())
        };
        let (lead_m, lead_c) = lex_max(divisor);
        let mut rem = self.clone();
        let mut quot = LoopVarPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = lex_max(&rem);
            let qm = rm.try_div(&lead_m).ok_or_else(|| {
                Error::InvalidInput("inexact polynomial division".into())
            })?;
            let qc = &rc / &lead_c;
            let q = LoopVarPoly::from_monomial(qm, qc);
            rem = rem - &q * divisor;
            quot = quot + q;
        }
        Ok(quot)
    }
}

impl Add for LoopVarPoly {
    type Output = LoopVarPoly;
    fn add(mut self, rhs: LoopVarPoly) -> LoopVarPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for LoopVarPoly {
    type Output = LoopVarPoly;
    fn sub(mut self, rhs: LoopVarPoly) -> LoopVarPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for LoopVarPoly {
    type Output = LoopVarPoly;
    fn neg(self) -> LoopVarPoly {
        LoopVarPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &LoopVarPoly {
    type Output = LoopVarPoly;
    fn mul(self, rhs: &LoopVarPoly) -> LoopVarPoly {
        let mut out = LoopVarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LoopVarPoly {
    type Output = LoopVarPoly;
    fn mul(self, rhs: LoopVarPoly) -> LoopVarPoly {
        (&self) * (&rhs)
    }
}

impl fmt::Display for LoopVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.0.is_empty() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                let mut vfirst = true;
                for (v, e) in m.vars() {
                    if !vfirst {
                        write!(f, "*")?;
                    }
                    vfirst = false;
                    if *e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, s: usize) -> VarId {
        VarId { factor: i, color: s }
    }

    #[test]
    fn eval_direct_substitution() {
        // x_1^(1) + x_2^(1) at {2, 5} -> 7
        let p = LoopVarPoly::var(v(1, 1)) + LoopVarPoly::var(v(2, 1));
        let mut a = BTreeMap::new();
        a.insert(v(1, 1), Rat::from(2));
        a.insert(v(2, 1), Rat::from(5));
        assert_eq!(p.eval(&a).unwrap(), Rat::from(7));
    }

    #[test]
    fn eval_constant_ignores_assignment() {
        let p = LoopVarPoly::one();
        assert_eq!(p.eval(&BTreeMap::new()).unwrap(), Rat::one());
    }

    #[test]
    fn eval_product_monomial() {
        // x_1^(1) * x_2^(2) at {2, 7} -> 14
        let p = LoopVarPoly::var(v(1, 1)) * LoopVarPoly::var(v(2, 2));
        let mut a = BTreeMap::new();
        a.insert(v(1, 1), Rat::from(2));
        a.insert(v(2, 2), Rat::from(7));
        assert_eq!(p.eval(&a).unwrap(), Rat::from(14));
    }

    #[test]
    fn eval_missing_variable_names_it() {
        let p = LoopVarPoly::var(v(3, 2));
        match p.eval(&BTreeMap::new()) {
            Err(Error::MissingVariable(var)) => assert_eq!(var, v(3, 2)),
            other => panic!("expected missing-variable error, got {other:?}"),
        }
    }

    #[test]
    fn difference_of_squares() {
        let x = LoopVarPoly::var(v(1, 1));
        let y = LoopVarPoly::var(v(2, 1));
        let lhs = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let rhs = x.clone() * x - y.clone() * y;
        assert!(lhs.poly_equal(&rhs));
    }

    #[test]
    fn distinct_variables_differ() {
        assert!(!LoopVarPoly::var(v(1, 1)).poly_equal(&LoopVarPoly::var(v(1, 2))));
    }

    #[test]
    fn div_exact_recovers_factor() {
        let x = LoopVarPoly::var(v(1, 1));
        let y = LoopVarPoly::var(v(2, 2));
        let a = x.clone() + LoopVarPoly::constant(Rat::new(3, 2)) * y.clone();
        let b = &x * &x + y.clone() * LoopVarPoly::constant(Rat::from(5));
        let prod = &a * &b;
        assert!(prod.div_exact(&a).unwrap().poly_equal(&b));
        assert!(prod.div_exact(&b).unwrap().poly_equal(&a));
    }

    #[test]
    fn canon_color_wraps() {
        assert_eq!(canon_color(0, 3), 3);
        assert_eq!(canon_color(4, 3), 1);
        assert_eq!(canon_color(-1, 3), 2);
        assert_eq!(canon_color(3, 3), 3);
    }
}
