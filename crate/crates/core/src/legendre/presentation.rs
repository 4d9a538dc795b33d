//! Classes given as polynomials in `a_i = c_i(A)`, `s`, `t`, `v1`, `v2`.
//!
//! Two independent routes to canonical coordinates: [`from_presentation`]
//! works in an explicit root model, [`evaluate_presentation`] multiplies in
//! the [`LegRing`].

use std::sync::Arc;

use super::class::{LegClass, LegKey, Params};
use super::ring::{half_dual_xi, s_class, v1, v2, LegRing};
use crate::algebra::{Monomial, Poly, Rational, VarTable};
use crate::bundle::{LineClass, VirtualBundle};
use crate::error::{Error, Result};
use crate::symfun::SymContext;

/// Variables `a1..a{max_a}` (weight `i`), then `s`, `t`, `v1`, `v2` (weight 1).
pub fn presentation_table(max_a: u32) -> Result<Arc<VarTable>> {
    let names = (1..=max_a)
        .map(|i| (format!("a{i}"), i))
        .chain(["s", "t", "v1", "v2"].into_iter().map(|n| (n.to_string(), 1)));
    VarTable::new(names)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PresVar {
    A(u32),
    S,
    T,
    V1,
    V2,
}

fn classify(table: &VarTable) -> Result<Vec<PresVar>> {
    (0..table.len())
        .map(|i| {
            let name = table.name(i);
            let weight = table.weight(i);
            match name {
                "s" if weight == 1 => Ok(PresVar::S),
                "t" if weight == 1 => Ok(PresVar::T),
                "v1" if weight == 1 => Ok(PresVar::V1),
                "v2" if weight == 1 => Ok(PresVar::V2),
                _ => match name.strip_prefix('a').and_then(|r| r.parse::<u32>().ok()) {
                    Some(j) if j >= 1 && j == weight => Ok(PresVar::A(j)),
                    _ => Err(Error::Invalid(format!("`{name}` (weight {weight}) is not a presentation variable"))),
                },
            }
        })
        .collect()
}

/// Canonical form by the root model: `A ⊗ ξ^{-1/2} = E* − E` with `E*` of rank
/// `D + 1`, `a_i = c_i` of its `ξ^{1/2}` twist, `s = v2 − 3v1`,
/// `t = (3v1 − v2)/2`; then a Q-decomposition per `(v1, v2)` monomial.
pub fn from_presentation(expr: &Poly) -> Result<LegClass> {
    let kinds = classify(expr.table())?;
    let weight = expr.max_weight().unwrap_or(0);
    let ctx = SymContext::with_aux(weight as usize + 1, weight, &[("v1", 1), ("v2", 1)])?;
    let table = ctx.table().clone();
    let n = ctx.n_vars();
    let v1p = Poly::var(&table, n);
    let v2p = Poly::var(&table, n + 1);
    let s = &v2p - &v1p.scale(&Rational::from(3));
    let roots: Vec<LineClass> = (1..=n).map(|i| LineClass::new(ctx.x(i))).collect::<Result<_>>()?;
    let canonical = VirtualBundle::new(&table, roots.clone(), roots.iter().map(|r| -r).collect())?;
    let a_bundle = canonical.twist(&LineClass::new(s.scale(&Rational::new(1, 2)))?);
    let max_a = kinds.iter().filter_map(|k| if let PresVar::A(i) = k { Some(*i) } else { None }).max().unwrap_or(0);
    let chern = a_bundle.chern_series(max_a);
    let images: Vec<Poly> = kinds
        .iter()
        .map(|k| match k {
            PresVar::A(i) => chern[*i as usize].clone(),
            PresVar::S => s.clone(),
            PresVar::T => (&v1p.scale(&Rational::from(3)) - &v2p).scale(&Rational::new(1, 2)),
            PresVar::V1 => v1p.clone(),
            PresVar::V2 => v2p.clone(),
        })
        .collect();
    let value = expr.substitute(&images)?;
    let mut out = LegClass::zero(Params::Plane);
    for (m, coeff) in value.split_by(&[n, n + 1]) {
        for (shape, c) in ctx.decompose_q(&coeff).map_err(|e| match e {
            Error::NotInQSpan | Error::NotSymmetric => Error::Internal("not in ring".into()),
            other => other,
        })? {
            out.add_term(LegKey::new(shape, m.exp(n), m.exp(n + 1)), &c)?;
        }
    }
    Ok(out)
}

/// Canonical form by multiplication in the ring, with `a_i` from [`LegRing::a`].
pub fn evaluate_presentation(ring: &LegRing, expr: &Poly, params: Params) -> Result<LegClass> {
    let kinds = classify(expr.table())?;
    let gens: Vec<LegClass> = kinds
        .iter()
        .map(|k| match k {
            PresVar::A(i) => ring.a(*i, params),
            PresVar::S => Ok(s_class(params)),
            PresVar::T => Ok(half_dual_xi(params)),
            PresVar::V1 => Ok(v1(params)),
            PresVar::V2 => Ok(v2(params)),
        })
        .collect::<Result<_>>()?;
    let mut out = LegClass::zero(params);
    for (m, c) in expr.terms() {
        out = out.checked_add(&monomial_value(ring, &gens, *m)?.scale(c))?;
    }
    Ok(out)
}

fn monomial_value(ring: &LegRing, gens: &[LegClass], m: Monomial) -> Result<LegClass> {
    let params = gens.first().map(LegClass::params).unwrap_or(Params::Plane);
    let mut out = LegClass::one(params);
    for (i, g) in gens.iter().enumerate() {
        for _ in 0..m.exp(i) {
            out = ring.mul(&out, g)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::StrictPartition;

    fn key(s: &str, a: u32, b: u32) -> LegKey {
        LegKey::new(s.parse::<StrictPartition>().unwrap(), a, b)
    }

    #[test]
    fn generators() {
        let t = presentation_table(2).unwrap();
        let a1 = Poly::var_named(&t, "a1").unwrap();
        let x = from_presentation(&a1).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.coeff(&key("(1)", 0, 0)), Rational::one());
        let s = from_presentation(&Poly::var_named(&t, "s").unwrap()).unwrap();
        assert_eq!(s.coeff(&key("()", 0, 1)), Rational::one());
        assert_eq!(s.coeff(&key("()", 1, 0)), Rational::from(-3));
    }

    #[test]
    fn routes_agree() {
        let t = presentation_table(3).unwrap();
        let v = |n: &str| Poly::var_named(&t, n).unwrap();
        let expr = v("a3") + v("a2") * v("s") - v("a1").pow(2) * v("t").scale(&Rational::new(5, 2)) + v("a1") * v("v1") * v("v2");
        let ring = LegRing::new(3).unwrap();
        assert_eq!(from_presentation(&expr).unwrap(), evaluate_presentation(&ring, &expr, Params::Plane).unwrap());
    }
}
