//! Bounds on one unknown coefficient `k` from positivity.

use std::fmt;

use super::class::{format_key, FamilySpec, LegClass, Params};
use super::family::{Construction, FamilyBasis};
use super::ring::LegRing;
use crate::algebra::Rational;
use crate::bundle::{legendre_to_classical_in_k, QtForm};
use crate::error::{Error, Result};

/// A class whose coefficients are polynomials in `k`: `parts[p]` is the
/// coefficient of `k^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    parts: Vec<LegClass>,
}

impl KClass {
    pub fn new(mut parts: Vec<LegClass>) -> Result<Self> {
        if let Some(first) = parts.first() {
            if parts.iter().any(|p| p.params() != first.params()) {
                return Err(Error::ParamMismatch("k-coefficients live in different coordinates".into()));
            }
        }
        while parts.len() > 1 && parts.last().is_some_and(LegClass::is_zero) {
            parts.pop();
        }
        Ok(KClass { parts })
    }

    pub fn constant(x: LegClass) -> Self {
        KClass { parts: vec![x] }
    }

    pub fn parts(&self) -> &[LegClass] {
        &self.parts
    }

    /// Highest power of `k` present (0 for constants and zero).
    pub fn degree(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn params(&self) -> Option<Params> {
        self.parts.first().map(LegClass::params)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(LegClass::is_zero)
    }

    /// Substitute a value for `k`.
    pub fn at(&self, k: &Rational) -> Result<LegClass> {
        let mut out = LegClass::zero(self.params().unwrap_or(Params::Plane));
        let mut power = Rational::one();
        for p in &self.parts {
            out = out.checked_add(&p.scale(&power))?;
            power = &power * k;
        }
        Ok(out)
    }

    fn affine(&self) -> Result<(LegClass, LegClass)> {
        let params = self.params().unwrap_or(Params::Plane);
        match self.parts.len() {
            0 => Ok((LegClass::zero(params), LegClass::zero(params))),
            1 => Ok((self.parts[0].clone(), LegClass::zero(params))),
            2 => Ok((self.parts[0].clone(), self.parts[1].clone())),
            _ => Err(Error::Invalid("template is not affine in k".into())),
        }
    }
}

/// `constant + slope·k >= 0`, with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundConstraint {
    pub source: String,
    pub label: String,
    pub constant: Rational,
    pub slope: Rational,
}

impl fmt::Display for BoundConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} >= 0", self.source, self.label, format_affine(&self.constant, &self.slope))
    }
}

/// `c + m·k` rendered as e.g. `3/2 - 1/2*k`.
pub fn format_affine(c: &Rational, m: &Rational) -> String {
    format_k_poly(&[c.clone(), m.clone()])
}

/// A polynomial in `k` by increasing power, e.g. `12 - k`, `3/2*k^2`.
pub fn format_k_poly(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (p, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        let body = match p {
            0 => abs.to_string(),
            _ => {
                let var = if p == 1 { "k".to_string() } else { format!("k^{p}") };
                if abs.is_one() {
                    var
                } else {
                    format!("{abs}*{var}")
                }
            }
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Intersection of the half-lines `{k : constant + slope·k >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    /// `None` is −∞.
    pub lower: Option<Rational>,
    /// `None` is +∞.
    pub upper: Option<Rational>,
    pub constraints: Vec<BoundConstraint>,
    /// True when the constraints have no common solution.
    pub empty: bool,
}

impl BoundResult {
    pub fn from_constraints(constraints: Vec<BoundConstraint>) -> Self {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        let mut empty = false;
        for c in &constraints {
            if c.slope.is_zero() {
                empty |= c.constant.is_negative();
                continue;
            }
            let root = -(&c.constant / &c.slope);
            if c.slope.is_positive() {
                if lower.as_ref().is_none_or(|l| root > *l) {
                    lower = Some(root);
                }
            } else if upper.as_ref().is_none_or(|u| root < *u) {
                upper = Some(root);
            }
        }
        if let (Some(l), Some(u)) = (&lower, &upper) {
            empty |= l > u;
        }
        BoundResult { lower, upper, constraints, empty }
    }

    pub fn contains(&self, k: &Rational) -> bool {
        !self.empty
            && self.lower.as_ref().is_none_or(|l| k >= l)
            && self.upper.as_ref().is_none_or(|u| k <= u)
    }

    /// The interval alone, e.g. `1 <= k <= 3`, `k <= 6`, `-inf < k < +inf`.
    pub fn interval(&self) -> String {
        if self.empty {
            return "empty (inconsistent constraints)".into();
        }
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l == u => format!("k = {l}"),
            (Some(l), Some(u)) => format!("{l} <= k <= {u}"),
            (Some(l), None) => format!("k >= {l}"),
            (None, Some(u)) => format!("k <= {u}"),
            (None, None) => "-inf < k < +inf".into(),
        }
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.interval())
    }
}

/// Positivity constraints from expanding `template` in the family basis at each spec.
pub fn bounds_interval(ring: &LegRing, template: &KClass, specs: &[FamilySpec]) -> Result<BoundResult> {
    let (c0, c1) = template.affine()?;
    let mut constraints = Vec::new();
    for spec in specs {
        let params = Params::Line(*spec);
        let mut basis = FamilyBasis::new(ring, params, Construction::Flagged);
        let e0 = basis.expand(&c0)?;
        let e1 = basis.expand(&c1)?;
        let mut keys: Vec<_> = e0.coeffs.keys().chain(e1.coeffs.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            constraints.push(BoundConstraint {
                source: format!("basis {spec}"),
                label: format!("e[{}]", format_key(&key, params)),
                constant: e0.coeff(&key),
                slope: e1.coeff(&key),
            });
        }
    }
    Ok(BoundResult::from_constraints(constraints))
}

/// Sign constraints from the classical Schur expansion at each `n`.
pub fn classical_bounds(template: &KClass, ns: &[u32]) -> Result<BoundResult> {
    template.affine()?;
    let forms: Vec<QtForm> = template.parts().iter().map(LegClass::to_qt_form).collect::<Result<_>>()?;
    let mut constraints = Vec::new();
    for &n in ns {
        for (l, coeffs) in legendre_to_classical_in_k(&forms, n)?.into_iter().rev() {
            constraints.push(BoundConstraint {
                source: format!("n={n}"),
                label: format!("s{l}"),
                constant: coeffs.first().cloned().unwrap_or_default(),
                slope: coeffs.get(1).cloned().unwrap_or_default(),
            });
        }
    }
    Ok(BoundResult::from_constraints(constraints))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn constraint(constant: Rational, slope: Rational) -> BoundConstraint {
        BoundConstraint { source: String::new(), label: String::new(), constant, slope }
    }

    #[test]
    fn interval_arithmetic() {
        let r = BoundResult::from_constraints(vec![
            constraint(c(3, 2), c(-1, 2)),
            constraint(c(-3, 2), c(3, 2)),
            constraint(c(3, 1), c(0, 1)),
        ]);
        assert_eq!(r.interval(), "1 <= k <= 3");
        assert!(r.contains(&c(2, 1)));
        assert!(!r.contains(&c(4, 1)));
        let none = BoundResult::from_constraints(vec![]);
        assert_eq!(none.interval(), "-inf < k < +inf");
        let bad = BoundResult::from_constraints(vec![constraint(c(-1, 1), c(0, 1))]);
        assert!(bad.empty);
        let crossing = BoundResult::from_constraints(vec![constraint(c(-5, 1), c(1, 1)), constraint(c(1, 1), c(-1, 1))]);
        assert!(crossing.empty);
    }

    #[test]
    fn k_polynomials_render() {
        assert_eq!(format_affine(&c(3, 2), &c(-1, 2)), "3/2 - 1/2*k");
        assert_eq!(format_affine(&c(12, 1), &c(-1, 1)), "12 - k");
        assert_eq!(format_affine(&c(0, 1), &c(0, 1)), "0");
        assert_eq!(format_k_poly(&[c(0, 1), c(-1, 1), c(2, 1)]), "-k + 2*k^2");
    }
}
