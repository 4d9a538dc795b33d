//! Legendrian classes in canonical coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{binomial, Rational};
use crate::bundle::QtForm;
use crate::error::{Error, Result};
use crate::partitions::StrictPartition;

/// Basis key `(I, a, b)` for `Q̃_I · v1^a · v2^b`. Under a one-parameter
/// specialization the key is `(I, j, 0)` for `Q̃_I · t^j`.
///
/// Ordered by total weight, then `I` lex-descending, then `a`, then `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegKey {
    pub shape: StrictPartition,
    pub a: u32,
    pub b: u32,
}

impl LegKey {
    pub fn new(shape: StrictPartition, a: u32, b: u32) -> Self {
        LegKey { shape, a, b }
    }

    pub fn weight(&self) -> u32 {
        self.shape.weight() + self.a + self.b
    }
}

impl Ord for LegKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.shape.cmp(&self.shape))
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for LegKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point `(p, q)` of the family: `v1 = p·t`, `v2 = q·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    p: u32,
    q: u32,
}

impl FamilySpec {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Invalid("family parameters (0,0) are excluded".into()));
        }
        if q == 3 * p {
            return Err(Error::Invalid(format!("family parameters ({p},{q}) have q = 3p")));
        }
        Ok(FamilySpec { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The diagonal `v1 = v2 = t`.
    pub fn diagonal() -> Self {
        FamilySpec { p: 1, q: 1 }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    /// `p,q`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(inner);
        let (p, q) = inner
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("expected `p,q`, got `{s}`")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad family parameter `{}`", x.trim())))
        };
        FamilySpec::new(parse(p)?, parse(q)?)
    }
}

/// Coordinates: both parameters free, or the line `v1 = p·t, v2 = q·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Params {
    Plane,
    Line(FamilySpec),
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Plane => write!(f, "(v1,v2)"),
            Params::Line(s) => write!(f, "{s}"),
        }
    }
}

/// A finite combination of canonical basis keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegClass {
    params: Params,
    coeffs: BTreeMap<LegKey, Rational>,
}

impl LegClass {
    pub fn zero(params: Params) -> Self {
        LegClass { params, coeffs: BTreeMap::new() }
    }

    pub fn constant(params: Params, c: Rational) -> Self {
        Self::term(params, LegKey::new(StrictPartition::empty(), 0, 0), c)
            .expect("constant key is valid everywhere")
    }

    pub fn one(params: Params) -> Self {
        Self::constant(params, Rational::one())
    }

    pub fn term(params: Params, key: LegKey, c: Rational) -> Result<Self> {
        if matches!(params, Params::Line(_)) && key.b != 0 {
            return Err(Error::ParamMismatch(format!("key with v2-exponent {} on a line", key.b)));
        }
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(key, c);
        }
        Ok(LegClass { params, coeffs })
    }

    /// The canonical basis element `Q̃_I · v1^a · v2^b` (or `Q̃_I · t^a` on a line).
    pub fn basis(params: Params, shape: StrictPartition, a: u32, b: u32) -> Result<Self> {
        Self::term(params, LegKey::new(shape, a, b), Rational::one())
    }

    pub fn from_terms(params: Params, terms: impl IntoIterator<Item = (LegKey, Rational)>) -> Result<Self> {
        let mut out = Self::zero(params);
        for (k, c) in terms {
            out.add_term(k, &c)?;
        }
        Ok(out)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LegKey, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, key: &LegKey) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, key: LegKey, c: &Rational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if matches!(self.params, Params::Line(_)) && key.b != 0 {
            return Err(Error::ParamMismatch(format!("key with v2-exponent {} on a line", key.b)));
        }
        match self.coeffs.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.coeffs.remove(&key);
                }
            }
            None => {
                self.coeffs.insert(key, c.clone());
            }
        }
        Ok(())
    }

    fn check(&self, other: &LegClass) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamMismatch(format!("{} vs {}", self.params, other.params)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LegClass) -> Result<LegClass> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LegClass) -> Result<LegClass> {
        self.checked_add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> LegClass {
        if c.is_zero() {
            return LegClass::zero(self.params);
        }
        LegClass { params: self.params, coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Multiply by `v1^a v2^b` (on a line, by `t^a` with `b = 0`).
    pub fn shift(&self, a: u32, b: u32) -> Result<LegClass> {
        LegClass::from_terms(
            self.params,
            self.coeffs.iter().map(|(k, c)| (LegKey::new(k.shape.clone(), k.a + a, k.b + b), c.clone())),
        )
    }

    /// Common weight of all keys; `None` for zero or mixed weights.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.coeffs.keys().map(LegKey::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_weight().is_some()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.coeffs.keys().map(LegKey::weight).max()
    }

    /// Largest `|I|` among the keys.
    pub fn max_shape_weight(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.shape.weight()).max()
    }

    pub fn graded_components(&self) -> BTreeMap<u32, LegClass> {
        let mut out: BTreeMap<u32, LegClass> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            out.entry(k.weight()).or_insert_with(|| LegClass::zero(self.params)).coeffs.insert(k.clone(), c.clone());
        }
        out
    }

    /// The part free of `v1, v2` (or `t`): the Lagrangian part.
    pub fn lagrangian_part(&self) -> LegClass {
        LegClass {
            params: self.params,
            coeffs: self.coeffs.iter().filter(|(k, _)| k.a == 0 && k.b == 0).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Restrict to the line `v1 = p·t`, `v2 = q·t`.
    pub fn specialize(&self, spec: FamilySpec) -> Result<LegClass> {
        match self.params {
            Params::Line(s) if s == spec => Ok(self.clone()),
            Params::Line(s) => Err(Error::ParamMismatch(format!("class lives on {s}, not {spec}"))),
            Params::Plane => {
                let p = Rational::from(spec.p);
                let q = Rational::from(spec.q);
                LegClass::from_terms(
                    Params::Line(spec),
                    self.coeffs.iter().map(|(k, c)| {
                        (LegKey::new(k.shape.clone(), k.a + k.b, 0), c * &p.pow(k.a) * &q.pow(k.b))
                    }),
                )
            }
        }
    }

    /// Convert to the target coordinates (identity or a specialization).
    pub fn to_params(&self, params: Params) -> Result<LegClass> {
        match params {
            Params::Plane if self.params == Params::Plane => Ok(self.clone()),
            Params::Plane => Err(Error::ParamMismatch("cannot lift a line class to the plane".into())),
            Params::Line(spec) => self.specialize(spec),
        }
    }

    /// `(I, j) -> c` on the diagonal line, where `t = ½c_1(ξ*)`.
    pub fn to_qt_form(&self) -> Result<QtForm> {
        let diag = self.specialize(FamilySpec::diagonal())?;
        Ok(diag.coeffs.into_iter().map(|(k, c)| ((k.shape, k.a), c)).collect())
    }

    pub fn all_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True iff the class depends on `v1, v2` only through `s = v2 - 3v1`,
    /// i.e. it is killed by the derivation `∂/∂v1 + 3 ∂/∂v2`. Line classes
    /// always pass.
    pub fn is_legendrian(&self) -> bool {
        if self.params != Params::Plane {
            return true;
        }
        let mut d: BTreeMap<LegKey, Rational> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if k.a > 0 {
                *d.entry(LegKey::new(k.shape.clone(), k.a - 1, k.b)).or_default() += &(c * &Rational::from(k.a));
            }
            if k.b > 0 {
                *d.entry(LegKey::new(k.shape.clone(), k.a, k.b - 1)).or_default() += &(c * &Rational::from(3 * k.b));
            }
        }
        d.values().all(Rational::is_zero)
    }

    /// Lift a class on the diagonal line to the plane through
    /// `t = ½c_1(ξ*) = (3v1 - v2)/2`.
    pub fn lift_diagonal(&self) -> Result<LegClass> {
        if self.params != Params::Line(FamilySpec::diagonal()) {
            return Err(Error::ParamMismatch(format!("lift needs a class on {}, got {}", FamilySpec::diagonal(), self.params)));
        }
        let three_halves = Rational::new(3, 2);
        let minus_half = Rational::new(-1, 2);
        let mut out = LegClass::zero(Params::Plane);
        for (k, c) in &self.coeffs {
            let j = k.a;
            for m in 0..=j {
                let f = c * &binomial(j as i64, m) * &three_halves.pow(m) * &minus_half.pow(j - m);
                out.add_term(LegKey::new(k.shape.clone(), m, j - m), &f)?;
            }
        }
        Ok(out)
    }
}

/// Formats a single key as a monomial, e.g. `v1^2*v2*Q(2,1)` or `t*Q(1)`.
pub fn format_key(key: &LegKey, params: Params) -> String {
    let mut parts = Vec::new();
    let mut push = |name: &str, e: u32| match e {
        0 => {}
        1 => parts.push(name.to_string()),
        e => parts.push(format!("{name}^{e}")),
    };
    match params {
        Params::Plane => {
            push("v1", key.a);
            push("v2", key.b);
        }
        Params::Line(_) => push("t", key.a),
    }
    parts.push(format!("Q{}", key.shape));
    parts.join("*")
}

impl fmt::Display for LegClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}*{}", c.abs(), format_key(k, self.params))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn key_order() {
        let mut keys = vec![
            LegKey::new(sp("(1)"), 1, 0),
            LegKey::new(sp("(2,1)"), 0, 0),
            LegKey::new(sp("(3)"), 0, 0),
            LegKey::new(sp("(1)"), 0, 1),
            LegKey::new(sp("(2)"), 0, 0),
        ];
        keys.sort();
        let shown: Vec<String> = keys.iter().map(|k| format_key(k, Params::Plane)).collect();
        assert_eq!(shown, ["Q(2)", "v2*Q(1)", "v1*Q(1)", "Q(3)", "Q(2,1)"]);
    }

    #[test]
    fn family_spec_validation() {
        assert!(FamilySpec::new(0, 0).is_err());
        assert!(FamilySpec::new(1, 3).is_err());
        assert_eq!("1,0".parse::<FamilySpec>().unwrap(), FamilySpec::new(1, 0).unwrap());
        assert_eq!("(0,1)".parse::<FamilySpec>().unwrap().to_string(), "(0,1)");
    }

    #[test]
    fn specialization_collects_powers() {
        let x = LegClass::from_terms(
            Params::Plane,
            [
                (LegKey::new(sp("(1)"), 1, 0), Rational::from(3)),
                (LegKey::new(sp("(1)"), 0, 1), Rational::from(1)),
            ],
        )
        .unwrap();
        let y = x.specialize(FamilySpec::new(2, 1).unwrap()).unwrap();
        assert_eq!(y.coeff(&LegKey::new(sp("(1)"), 1, 0)), Rational::from(7));
        assert_eq!(y.to_string(), "7*t*Q(1)");
        assert!(y.specialize(FamilySpec::diagonal()).is_err());
    }

    #[test]
    fn legendrian_means_through_s() {
        let p = Params::Plane;
        // s * Q(1) = v2*Q(1) - 3 v1*Q(1)
        let s_q1 = LegClass::from_terms(
            p,
            [(LegKey::new(sp("(1)"), 0, 1), Rational::one()), (LegKey::new(sp("(1)"), 1, 0), Rational::from(-3))],
        )
        .unwrap();
        assert!(s_q1.is_legendrian());
        assert!(!LegClass::basis(p, sp("(1)"), 1, 0).unwrap().is_legendrian());
        let diag = LegClass::basis(Params::Line(FamilySpec::diagonal()), sp("(1)"), 1, 0).unwrap();
        let lifted = diag.lift_diagonal().unwrap();
        assert!(lifted.is_legendrian());
        assert_eq!(lifted.specialize(FamilySpec::diagonal()).unwrap(), diag);
    }
}
