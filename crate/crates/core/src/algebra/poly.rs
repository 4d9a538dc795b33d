//! Sparse multivariate polynomials over [`Rational`] with a graded variable table.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Maximum number of variables a table may hold (one byte of exponent each).
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub weight: u32,
}

/// Ordered, named, weighted variables. Index order drives the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Var>,
}

impl VarTable {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>> {
        let vars: Vec<Var> = vars
            .into_iter()
            .map(|(name, weight)| Var { name: name.into(), weight })
            .collect();
        if vars.len() > MAX_VARS {
            return Err(Error::Range(format!(
                "variable table holds at most {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Invalid(format!("duplicate variable name `{}`", v.name)));
            }
        }
        Ok(Arc::new(VarTable { vars }))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }
}

/// Exponent vector packed one byte per variable, variable 0 in the most
/// significant byte, so integer order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

const CARRY_MASK: u128 = {
    let mut m = 0u128;
    let mut i = 1;
    while i < 16 {
        m |= 1u128 << (8 * i);
        i += 1;
    }
    m
};

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(i: usize) -> u32 {
        debug_assert!(i < MAX_VARS);
        (8 * (MAX_VARS - 1 - i)) as u32
    }

    pub fn var(i: usize) -> Self {
        Monomial(1u128 << Self::shift(i))
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Range("too many exponents for a monomial".into()));
        }
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            if e > 255 {
                return Err(Error::Range(format!("exponent {e} exceeds 255")));
            }
            m |= (e as u128) << Self::shift(i);
        }
        Ok(Monomial(m))
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn exponents(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn weight(self, table: &VarTable) -> u32 {
        (0..table.len()).map(|i| self.exp(i) * table.weight(i)).sum()
    }

    /// Product of monomials; `None` when an exponent would exceed 255.
    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        let s = self.0.checked_add(other.0)?;
        if (self.0 ^ other.0 ^ s) & CARRY_MASK != 0 {
            None
        } else {
            Some(Monomial(s))
        }
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    /// Restriction to the variables whose indices are listed.
    pub fn restrict(self, vars: &[usize]) -> Monomial {
        let mut m = 0u128;
        for &i in vars {
            m |= (self.exp(i) as u128) << Self::shift(i);
        }
        Monomial(m)
    }
}

/// A polynomial with rational coefficients over a shared variable table.
#[derive(Clone)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        Self::term(table, Monomial::ONE, c)
    }

    pub fn term(table: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { table: table.clone(), terms }
    }

    pub fn var(table: &Arc<VarTable>, i: usize) -> Self {
        assert!(i < table.len(), "variable index {i} out of range");
        Self::term(table, Monomial::var(i), Rational::one())
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let i = table
            .index_of(name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable `{name}`")))?;
        Ok(Self::var(table, i))
    }

    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            add_into(&mut acc, m, &c);
        }
        Poly { table: table.clone(), terms: acc }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    pub fn weight_of(&self, m: Monomial) -> u32 {
        m.weight(&self.table)
    }

    /// Largest weight of a term, `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|&m| self.weight_of(m)).max()
    }

    /// The common weight of all terms, if any. Zero is homogeneous of every weight.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|&m| self.weight_of(m));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_weight().is_some()
    }

    pub fn graded_component(&self, w: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.weight_of(**m) == w)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Poly { table: self.table.clone(), terms }
    }

    /// All nonzero graded components, by increasing weight.
    pub fn graded_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.weight_of(*m))
                .or_insert_with(|| Poly::zero(&self.table))
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    /// Leading term in graded-lex order (weight first, then lex by variable index).
    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        let mut best: Option<(u32, Monomial, &Rational)> = None;
        for (m, c) in &self.terms {
            let w = self.weight_of(*m);
            match best {
                Some((bw, bm, _)) if (bw, bm) >= (w, *m) => {}
                _ => best = Some((w, *m, c)),
            }
        }
        best.map(|(_, m, c)| (m, c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Poly { table: self.table.clone(), terms }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_into(&mut terms, *m, c);
        }
        Ok(Poly { table: self.table.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.table));
        }
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        acc.reserve(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma
                    .checked_mul(*mb)
                    .ok_or_else(|| Error::Range("monomial exponent exceeds 255".into()))?;
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Poly { table: self.table.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.table);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Replace variable `i` by `images[i]` for every variable of this table.
    /// All images must share one table, which becomes the result's table.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.table.len() {
            return Err(Error::Invalid(format!(
                "substitution needs {} images, got {}",
                self.table.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.table.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !same_table(&p.table, &target)) {
            return Err(Error::TableMismatch);
        }
        // Cache powers per variable.
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().checked_mul(&images[i])?;
                    pw.push(next);
                }
                t = t.checked_mul(&pw[e])?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Group terms by their restriction to `vars`: returns `m -> coefficient
    /// polynomial` so that `self = Σ m · coeff(m)` and no coefficient mentions `vars`.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(vars);
            let rest = key.quotient_of(*m);
            out.entry(key)
                .or_insert_with(|| Poly::zero(&self.table))
                .terms
                .insert(rest, c.clone());
        }
        out
    }

    /// True when no term involves variable `i`.
    pub fn free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.exp(i) == 0)
    }
}

fn add_into(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Poly { table: self.table.clone(), terms }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on a variable-table mismatch; use the `checked_` form to recover.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order, e.g. `3*x1^2*t - 1/2*v1 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(u32, &Monomial, &Rational)> =
            self.terms.iter().map(|(m, c)| (self.weight_of(*m), m, c)).collect();
        ordered.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        for (k, (_, m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for i in 0..self.table.len() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.table.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.table.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> Arc<VarTable> {
        VarTable::new([("x1", 1), ("x2", 1), ("t", 1)]).unwrap()
    }

    #[test]
    fn monomial_packing() {
        let m = Monomial::from_exponents(&[2, 0, 3]).unwrap();
        assert_eq!(m.exp(0), 2);
        assert_eq!(m.exp(2), 3);
        assert_eq!(m.degree(), 5);
        let big = Monomial::from_exponents(&[200]).unwrap();
        assert!(big.checked_mul(big).is_none());
        assert!(Monomial::var(0) > Monomial::var(1));
    }

    #[test]
    fn difference_of_squares() {
        let t = table();
        let x1 = Poly::var(&t, 0);
        let x2 = Poly::var(&t, 1);
        let lhs = (&x1 + &x2) * (&x1 - &x2);
        assert_eq!(lhs, x1.pow(2) - x2.pow(2));
        assert_eq!(lhs.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Poly::var(&table(), 0);
        let other = VarTable::new([("y", 1)]).unwrap();
        let b = Poly::var(&other, 0);
        assert_eq!(a.checked_add(&b).unwrap_err().to_string(), "variable-table mismatch");
    }

    #[test]
    fn graded_pieces_and_leading_term() {
        let t = table();
        let x1 = Poly::var(&t, 0);
        let tt = Poly::var(&t, 2);
        let p = x1.pow(2) + tt.clone();
        assert_eq!(p.graded_component(1), tt);
        assert!(Poly::zero(&t).graded_component(4).is_zero());
        let q = &x1 * &tt + Poly::var(&t, 1).pow(2);
        assert_eq!(q.leading_term().unwrap().0, Monomial::from_exponents(&[1, 0, 1]).unwrap());
        assert_eq!(p.leading_term().unwrap().0, Monomial::from_exponents(&[2]).unwrap());
    }

    #[test]
    fn substitution_and_split() {
        let t = table();
        let x1 = Poly::var(&t, 0);
        let x2 = Poly::var(&t, 1);
        let tt = Poly::var(&t, 2);
        let p = &x1 * &tt + tt.pow(2);
        let images = vec![x2.clone(), x1.clone(), &x1 + &x2];
        assert_eq!(p.substitute(&images).unwrap(), &x2 * (&x1 + &x2) + (&x1 + &x2).pow(2));
        let parts = p.split_by(&[2]);
        assert_eq!(parts[&Monomial::var(2)], x1);
        assert_eq!(parts[&Monomial::from_exponents(&[0, 0, 2]).unwrap()], Poly::one(&t));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
        prop::collection::vec(([0u32..3, 0u32..3, 0u32..3], -5i64..6), 0..6)
    }

    fn build(t: &Arc<VarTable>, spec: &[([u32; 3], i64)]) -> Poly {
        Poly::from_terms(
            t,
            spec.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), Rational::from(*c))),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let t = table();
            let (p, q, r) = (build(&t, &a), build(&t, &b), build(&t, &c));
            prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
            prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + Poly::zero(&t), p.clone());
            prop_assert_eq!(&p * Poly::one(&t), p.clone());
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn graded_components_partition(a in arb_poly()) {
            let t = table();
            let p = build(&t, &a);
            let mut sum = Poly::zero(&t);
            for w in 0..=9 {
                let g = p.graded_component(w);
                prop_assert_eq!(g.graded_component(w), g.clone());
                sum = sum + g;
            }
            prop_assert_eq!(sum, p);
        }
    }
}
