//! Multiplication of Legendrian classes through Q-function structure constants.

use std::collections::{BTreeMap, HashMap};

use super::class::{LegClass, LegKey, Params};
use crate::algebra::{binomial, Poly, Rational, RingOps};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_strict, StrictPartition};
use crate::symfun::SymContext;

/// Structure constants of `Q̃_I · Q̃_J` for `|I| + |J| <= D`, computed once in
/// `D + 1` root variables. Immutable after construction.
pub struct LegRing {
    max_weight: u32,
    products: HashMap<(StrictPartition, StrictPartition), Vec<(StrictPartition, Rational)>>,
}

impl LegRing {
    pub fn new(max_weight: u32) -> Result<Self> {
        let ctx = SymContext::new(max_weight)?;
        let qfuns: BTreeMap<u32, Vec<(StrictPartition, Poly)>> =
            (0..=max_weight).map(|w| ctx.qfuns_of_weight(w).map(|v| (w, v))).collect::<Result<_>>()?;
        let mut products = HashMap::new();
        let shapes: Vec<StrictPartition> = (1..=max_weight).flat_map(enumerate_strict).collect();
        for (x, i) in shapes.iter().enumerate() {
            for j in &shapes[x..] {
                if i.weight() + j.weight() > max_weight {
                    continue;
                }
                let c = ctx.q_structure_constants_fast(i, j, &qfuns)?;
                products.insert(pair_key(i, j), c.into_iter().collect());
            }
        }
        Ok(LegRing { max_weight, products })
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Expansion of `Q̃_I · Q̃_J`.
    pub fn structure(&self, i: &StrictPartition, j: &StrictPartition) -> Result<Vec<(StrictPartition, Rational)>> {
        if i.is_empty() {
            return Ok(vec![(j.clone(), Rational::one())]);
        }
        if j.is_empty() {
            return Ok(vec![(i.clone(), Rational::one())]);
        }
        if i.weight() + j.weight() > self.max_weight {
            return Err(Error::Unstable);
        }
        self.products.get(&pair_key(i, j)).cloned().ok_or_else(|| Error::Internal(format!("missing product Q{i}·Q{j}")))
    }

    pub fn mul(&self, x: &LegClass, y: &LegClass) -> Result<LegClass> {
        if x.params() != y.params() {
            return Err(Error::ParamMismatch(format!("{} vs {}", x.params(), y.params())));
        }
        let mut out = LegClass::zero(x.params());
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let c = cx * cy;
                for (shape, f) in self.structure(&kx.shape, &ky.shape)? {
                    out.add_term(LegKey::new(shape, kx.a + ky.a, kx.b + ky.b), &(&c * &f))?;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, x: &LegClass, e: u32) -> Result<LegClass> {
        let mut out = LegClass::one(x.params());
        for _ in 0..e {
            out = self.mul(&out, x)?;
        }
        Ok(out)
    }

    pub fn at(&self, params: Params) -> LegRingAt<'_> {
        LegRingAt { ring: self, params }
    }
}

fn pair_key(i: &StrictPartition, j: &StrictPartition) -> (StrictPartition, StrictPartition) {
    if i <= j {
        (i.clone(), j.clone())
    } else {
        (j.clone(), i.clone())
    }
}

/// `v1` as a class.
pub fn v1(params: Params) -> LegClass {
    linear(params, 1, 0)
}

/// `v2` as a class.
pub fn v2(params: Params) -> LegClass {
    linear(params, 0, 1)
}

/// `α v1 + β v2`, evaluated on a line when needed.
fn linear(params: Params, alpha: i64, beta: i64) -> LegClass {
    let empty = StrictPartition::empty();
    match params {
        Params::Plane => LegClass::from_terms(
            params,
            [
                (LegKey::new(empty.clone(), 1, 0), Rational::from(alpha)),
                (LegKey::new(empty, 0, 1), Rational::from(beta)),
            ],
        ),
        Params::Line(spec) => LegClass::term(
            params,
            LegKey::new(empty, 1, 0),
            Rational::from(alpha * spec.p() as i64 + beta * spec.q() as i64),
        ),
    }
    .expect("linear keys are valid")
}

/// The line parameter `t` (only on a line).
pub fn line_param(params: Params) -> Result<LegClass> {
    match params {
        Params::Plane => Err(Error::ParamMismatch("the plane has no line parameter".into())),
        Params::Line(_) => LegClass::basis(params, StrictPartition::empty(), 1, 0),
    }
}

/// `s = c_1(ξ) = v2 - 3 v1`.
pub fn s_class(params: Params) -> LegClass {
    linear(params, -3, 1)
}

/// `½ c_1(ξ*) = (3 v1 - v2)/2`; the diagonal's line parameter.
pub fn half_dual_xi(params: Params) -> LegClass {
    linear(params, 3, -1).scale(&Rational::new(1, 2))
}

/// `Q̃_(r)`, with `Q̃_(0) = 1`.
pub fn qtilde_row(params: Params, r: u32) -> LegClass {
    LegClass::basis(params, StrictPartition::row(r), 0, 0).expect("plain key")
}

impl LegRing {
    /// `a_i = c_i(A)` where `A = (A⊗ξ^{-1/2}) ⊗ ξ^{1/2}` has rank 0:
    /// `a_i = Σ_j C(-j, i-j) (s/2)^{i-j} Q̃_(j)`.
    pub fn a(&self, i: u32, params: Params) -> Result<LegClass> {
        let half_s = s_class(params).scale(&Rational::new(1, 2));
        let mut out = LegClass::zero(params);
        let mut power = LegClass::one(params);
        for m in 0..=i {
            // m = i - j
            let j = i - m;
            let c = binomial(-(j as i64), m);
            if !c.is_zero() {
                out = out.checked_add(&self.mul(&power, &qtilde_row(params, j))?.scale(&c))?;
            }
            power = self.mul(&power, &half_s)?;
        }
        Ok(out)
    }
}

/// A [`LegRing`] fixed to one coordinate system, usable with the generic
/// determinant and straightening routines.
#[derive(Clone, Copy)]
pub struct LegRingAt<'a> {
    pub ring: &'a LegRing,
    pub params: Params,
}

impl RingOps for LegRingAt<'_> {
    type Elem = LegClass;
    fn zero(&self) -> LegClass {
        LegClass::zero(self.params)
    }
    fn one(&self) -> LegClass {
        LegClass::one(self.params)
    }
    fn add(&self, a: &LegClass, b: &LegClass) -> Result<LegClass> {
        a.checked_add(b)
    }
    fn mul(&self, a: &LegClass, b: &LegClass) -> Result<LegClass> {
        self.ring.mul(a, b)
    }
    fn scale(&self, c: &Rational, a: &LegClass) -> LegClass {
        a.scale(c)
    }
    fn is_zero(&self, a: &LegClass) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn products_follow_q_functions() {
        let ring = LegRing::new(4).unwrap();
        let p = Params::Plane;
        let prod = ring.mul(&qtilde_row(p, 1), &qtilde_row(p, 2)).unwrap();
        assert_eq!(prod.coeff(&LegKey::new(sp("(3)"), 0, 0)), Rational::from(2));
        assert_eq!(prod.coeff(&LegKey::new(sp("(2,1)"), 0, 0)), Rational::from(1));
        let big = LegClass::basis(p, sp("(3)"), 0, 0).unwrap();
        assert_eq!(ring.mul(&big, &qtilde_row(p, 2)), Err(Error::Unstable));
    }

    #[test]
    fn low_a_classes() {
        let ring = LegRing::new(3).unwrap();
        let p = Params::Plane;
        assert_eq!(ring.a(1, p).unwrap(), qtilde_row(p, 1));
        // a_2 + s/2 a_1 = Q̃_2
        let lhs = ring
            .a(2, p)
            .unwrap()
            .checked_add(&ring.mul(&s_class(p).scale(&Rational::new(1, 2)), &ring.a(1, p).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, qtilde_row(p, 2));
    }
}
