//! The one-parameter family of positivity bases and expansions in it.
//!
//! Row `h` of a partition carries the bundle `E_h = (A + α^{⊕(h-1)}) ⊗ ξ^{-1/2}`
//! with `c_1(α) = -v1`. Writing `β = c_1(α ⊗ ξ^{-1/2}) = (v1 - v2)/2`,
//! `c_k(E_h) = Σ_j C(h-1, j) β^j Q̃_(k-j)`. The one-row element is
//! `c_h(E_h) = c_h(A + α^{⊕(h-1)})`; longer partitions use the Q-straightening
//! in which each row index reads the classes of its own bundle.

use std::collections::BTreeMap;
use std::fmt;

use super::class::{LegClass, LegKey, Params};
use super::ring::{qtilde_row, v1, v2, LegRing, LegRingAt};
use crate::algebra::{binomial, q_straighten, solve_linear, LinearSolution, Rational};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_strict, StrictPartition};

/// How multi-row family elements are assembled from one-row data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Construction {
    /// Each row `h` uses the Chern classes of its own bundle `E_h`.
    #[default]
    Flagged,
    /// The ordinary Q-straightening with `q_r` replaced by `c_r(E_r)`.
    /// Kept for comparison; it does not give a basis in which `D_4` is `Q_21`.
    Uniform,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Flagged => write!(f, "flagged"),
            Construction::Uniform => write!(f, "uniform"),
        }
    }
}

/// `β = (v1 - v2)/2`.
pub fn beta(params: Params) -> LegClass {
    v1(params).checked_sub(&v2(params)).expect("same params").scale(&Rational::new(1, 2))
}

/// `c_k(E_h)` for `h >= 1`.
pub fn row_chern(ring: &LegRing, params: Params, h: u32, k: u32) -> Result<LegClass> {
    let b = beta(params);
    let mut out = LegClass::zero(params);
    let mut power = LegClass::one(params);
    for j in 0..=k.min(h.saturating_sub(1)) {
        let c = binomial(h as i64 - 1, j);
        out = out.checked_add(&ring.mul(&power, &qtilde_row(params, k - j))?.scale(&c))?;
        power = ring.mul(&power, &b)?;
    }
    Ok(out)
}

/// One-row family element `c_h(A + α^{⊕(h-1)})`.
pub fn one_row_family(ring: &LegRing, h: u32, params: Params) -> Result<LegClass> {
    if h > ring.max_weight() {
        return Err(Error::Range(format!("row {h} exceeds ring weight {}", ring.max_weight())));
    }
    row_chern(ring, params, h, h)
}

/// Family element `e_{I,0,0}`.
pub fn family_element(ring: &LegRing, shape: &StrictPartition, params: Params, construction: Construction) -> Result<LegClass> {
    if shape.weight() > ring.max_weight() {
        return Err(Error::Range(format!("|I| = {} exceeds ring weight {}", shape.weight(), ring.max_weight())));
    }
    let at = LegRingAt { ring, params };
    match construction {
        Construction::Flagged => q_straighten(&at, shape.parts(), &mut |h, k| row_chern(ring, params, h, k)),
        Construction::Uniform => q_straighten(&at, shape.parts(), &mut |_, k| row_chern(ring, params, k, k)),
    }
}

/// Coefficients over the family basis `e_{I,a,b}` (or `e_{I,0,0} t^j` on a line).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyExpansion {
    pub params: Params,
    pub construction: Construction,
    pub coeffs: BTreeMap<LegKey, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    Pass,
    Fail { key: LegKey, coeff: Rational },
}

impl FamilyExpansion {
    pub fn coeff(&self, key: &LegKey) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    /// Pass iff every coefficient is nonnegative; otherwise the first offending key.
    pub fn positivity(&self) -> Positivity {
        match self.coeffs.iter().find(|(_, c)| c.is_negative()) {
            None => Positivity::Pass,
            Some((k, c)) => Positivity::Fail { key: k.clone(), coeff: c.clone() },
        }
    }

    pub fn all_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }

    /// The expansion read as a class in canonical coordinates with the same keys
    /// (useful for display and comparison, not a recombination).
    pub fn as_key_class(&self) -> LegClass {
        LegClass::from_terms(self.params, self.coeffs.clone()).expect("keys valid for params")
    }
}

pub fn positivity_check(e: &FamilyExpansion) -> Positivity {
    e.positivity()
}

/// Family basis at fixed coordinates, caching the elements `e_{I,0,0}`.
pub struct FamilyBasis<'a> {
    ring: &'a LegRing,
    params: Params,
    construction: Construction,
    elements: BTreeMap<StrictPartition, LegClass>,
}

impl<'a> FamilyBasis<'a> {
    pub fn new(ring: &'a LegRing, params: Params, construction: Construction) -> Self {
        FamilyBasis { ring, params, construction, elements: BTreeMap::new() }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn element(&mut self, shape: &StrictPartition) -> Result<LegClass> {
        if let Some(e) = self.elements.get(shape) {
            return Ok(e.clone());
        }
        let e = family_element(self.ring, shape, self.params, self.construction)?;
        self.elements.insert(shape.clone(), e.clone());
        Ok(e)
    }

    /// `e_{I,a,b}`.
    pub fn key_element(&mut self, key: &LegKey) -> Result<LegClass> {
        self.element(&key.shape)?.shift(key.a, key.b)
    }

    /// Every basis key of weight `w` in these coordinates.
    pub fn keys_of_weight(&self, w: u32) -> Vec<LegKey> {
        let mut keys = Vec::new();
        for m in 0..=w {
            for shape in enumerate_strict(m) {
                let rest = w - m;
                match self.params {
                    Params::Plane => {
                        for a in 0..=rest {
                            keys.push(LegKey::new(shape.clone(), a, rest - a));
                        }
                    }
                    Params::Line(_) => keys.push(LegKey::new(shape.clone(), rest, 0)),
                }
            }
        }
        keys.sort();
        keys
    }

    /// Exact coefficients of `x` over the family basis.
    pub fn expand(&mut self, x: &LegClass) -> Result<FamilyExpansion> {
        let x = x.to_params(self.params)?;
        let mut coeffs = BTreeMap::new();
        for (w, piece) in x.graded_components() {
            if w > self.ring.max_weight() {
                return Err(Error::Unstable);
            }
            let keys = self.keys_of_weight(w);
            let columns: Vec<LegClass> = keys.iter().map(|k| self.key_element(k)).collect::<Result<_>>()?;
            let rows: Vec<(Vec<Rational>, Rational)> =
                keys.iter().map(|row| (columns.iter().map(|col| col.coeff(row)).collect(), piece.coeff(row))).collect();
            // Keys of `piece` outside `keys` cannot occur: both enumerate all keys of weight w.
            match solve_linear(&rows) {
                LinearSolution::Unique(sol) => {
                    for (k, c) in keys.into_iter().zip(sol) {
                        if !c.is_zero() {
                            coeffs.insert(k, c);
                        }
                    }
                }
                LinearSolution::Inconsistent => return Err(Error::OutsideStableSpan),
                LinearSolution::Underdetermined => return Err(Error::Unstable),
            }
        }
        Ok(FamilyExpansion { params: self.params, construction: self.construction, coeffs })
    }

    /// `Σ c_{I,a,b} e_{I,a,b}` back in canonical coordinates.
    pub fn recombine(&mut self, e: &FamilyExpansion) -> Result<LegClass> {
        if e.params != self.params || e.construction != self.construction {
            return Err(Error::ParamMismatch("expansion belongs to a different basis".into()));
        }
        let mut out = LegClass::zero(self.params);
        for (k, c) in &e.coeffs {
            out = out.checked_add(&self.key_element(k)?.scale(c))?;
        }
        Ok(out)
    }
}

pub fn expand_family(ring: &LegRing, x: &LegClass, params: Params, construction: Construction) -> Result<FamilyExpansion> {
    FamilyBasis::new(ring, params, construction).expand(x)
}
