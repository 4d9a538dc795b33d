//! Symmetric polynomials in root variables `x_1..x_N`: the generators `q_r`,
//! Schur S- and Q-functions, and exact decomposition into either basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::algebra::{
    determinant, q_straighten, solve_linear, LinearSolution, Monomial, Poly, PolyRing, Rational, RingOps, VarTable,
};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, enumerate_strict, Partition, StrictPartition};

/// Root variables `x1..xN` (followed by any auxiliary variables) and a
/// maximum tracked weight `D`. Decompositions need `N >= D`.
pub struct SymContext {
    n: usize,
    max_weight: u32,
    table: Arc<VarTable>,
    q: OnceLock<Vec<Poly>>,
    h: OnceLock<Vec<Poly>>,
    e: OnceLock<Vec<Poly>>,
}

#[derive(Clone, Copy)]
enum Series {
    Q,
    H,
    E,
}

impl SymContext {
    /// Context with `N = D + 1` variables.
    pub fn new(max_weight: u32) -> Result<Self> {
        Self::with_vars(max_weight as usize + 1, max_weight)
    }

    pub fn with_vars(n: usize, max_weight: u32) -> Result<Self> {
        Self::with_aux(n, max_weight, &[])
    }

    /// Context whose table is `x1..xN` followed by `aux` (name, weight) pairs.
    pub fn with_aux(n: usize, max_weight: u32, aux: &[(&str, u32)]) -> Result<Self> {
        if n < max_weight as usize {
            return Err(Error::Range(format!(
                "{n} variables are below the stable range for weight {max_weight}"
            )));
        }
        let names = (1..=n)
            .map(|i| (format!("x{i}"), 1))
            .chain(aux.iter().map(|(s, w)| (s.to_string(), *w)));
        let table = VarTable::new(names)?;
        Ok(SymContext { n, max_weight, table, q: OnceLock::new(), h: OnceLock::new(), e: OnceLock::new() })
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing(self.table.clone())
    }

    /// The root variable `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Poly {
        assert!((1..=self.n).contains(&i), "root index {i} out of range");
        Poly::var(&self.table, i - 1)
    }

    fn series(&self, kind: Series) -> &[Poly] {
        let cell = match kind {
            Series::Q => &self.q,
            Series::H => &self.h,
            Series::E => &self.e,
        };
        cell.get_or_init(|| {
            let d = self.max_weight as usize;
            let mut s = vec![Poly::zero(&self.table); d + 1];
            s[0] = Poly::one(&self.table);
            for i in 1..=self.n {
                let x = self.x(i);
                if matches!(kind, Series::Q | Series::E) {
                    // times (1 + x u)
                    for k in (1..=d).rev() {
                        let t = &s[k - 1] * &x;
                        s[k] = &s[k] + &t;
                    }
                }
                if matches!(kind, Series::Q | Series::H) {
                    // divided by (1 - x u)
                    for k in 1..=d {
                        let t = &s[k - 1] * &x;
                        s[k] = &s[k] + &t;
                    }
                }
            }
            s
        })
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.max_weight {
            Err(Error::Range(format!("weight {w} exceeds the context maximum {}", self.max_weight)))
        } else {
            Ok(())
        }
    }

    /// Coefficient of `u^r` in `Π (1 + x_i u)/(1 - x_i u)`.
    pub fn q(&self, r: u32) -> Result<Poly> {
        self.check_weight(r)?;
        Ok(self.series(Series::Q)[r as usize].clone())
    }

    /// Complete homogeneous symmetric polynomial `h_r`.
    pub fn h(&self, r: u32) -> Result<Poly> {
        self.check_weight(r)?;
        Ok(self.series(Series::H)[r as usize].clone())
    }

    /// Elementary symmetric polynomial `e_r`.
    pub fn e(&self, r: u32) -> Result<Poly> {
        self.check_weight(r)?;
        Ok(self.series(Series::E)[r as usize].clone())
    }

    /// Schur polynomial by Jacobi–Trudi (in `h`, or in `e` on the conjugate
    /// when that matrix is smaller).
    pub fn schur(&self, lambda: &Partition) -> Result<Poly> {
        self.check_weight(lambda.weight())?;
        let hs = self.series(Series::H);
        let es = self.series(Series::E);
        jacobi_trudi(&self.ring(), lambda, &|r| hs[r as usize].clone(), &|r| es[r as usize].clone())
    }

    /// Schur Q-function by two-row straightening and Pfaffians in the `q_r`.
    pub fn qfun(&self, i: &StrictPartition) -> Result<Poly> {
        self.check_weight(i.weight())?;
        let qs = self.series(Series::Q);
        q_straighten(&self.ring(), i.parts(), &mut |_, k| Ok(qs[k as usize].clone()))
    }

    /// Every `Q_I` with `|I| = d`.
    pub fn qfuns_of_weight(&self, d: u32) -> Result<Vec<(StrictPartition, Poly)>> {
        enumerate_strict(d).into_iter().map(|i| self.qfun(&i).map(|p| (i, p))).collect()
    }

    fn check_root_only(&self, f: &Poly) -> Result<()> {
        if f.table() != &self.table && **f.table() != *self.table {
            return Err(Error::TableMismatch);
        }
        if (self.n..self.table.len()).any(|i| !f.free_of(i)) {
            return Err(Error::Invalid("input involves auxiliary variables".into()));
        }
        Ok(())
    }

    /// Monomial `x^λ` for a partition with at most `N` parts.
    pub fn dominant_monomial(&self, lambda: &[u32]) -> Option<Monomial> {
        (lambda.len() <= self.n).then(|| Monomial::from_exponents(lambda).expect("small exponents"))
    }

    /// Schur expansion by the leading-term loop: read the graded-lex leading
    /// monomial `x^α`, subtract `coeff · s_α`, repeat.
    pub fn decompose_schur(&self, f: &Poly) -> Result<BTreeMap<Partition, Rational>> {
        self.check_root_only(f)?;
        let mut rest = f.clone();
        let mut out = BTreeMap::new();
        let mut cache: HashMap<Partition, Poly> = HashMap::new();
        let bound: usize = (0..=self.max_weight).map(|w| enumerate_partitions(w).len()).sum();
        let mut steps = 0;
        while let Some((m, c)) = rest.leading_term() {
            steps += 1;
            if steps > bound {
                return Err(Error::NotSymmetric);
            }
            let c = c.clone();
            let alpha = m.exponents(self.n);
            let len = alpha.iter().take_while(|&&e| e > 0).count();
            if alpha[len..].iter().any(|&e| e > 0) {
                return Err(Error::NotSymmetric);
            }
            let lambda = Partition::new(alpha[..len].to_vec()).map_err(|_| Error::NotSymmetric)?;
            self.check_weight(lambda.weight())?;
            if !cache.contains_key(&lambda) {
                cache.insert(lambda.clone(), self.schur(&lambda)?);
            }
            rest = &rest - &cache[&lambda].scale(&c);
            out.insert(lambda, c);
        }
        Ok(out)
    }

    /// Q-expansion by an exact linear solve on the dominant monomial
    /// coefficients of each graded piece, verified by recombination.
    pub fn decompose_q(&self, f: &Poly) -> Result<BTreeMap<StrictPartition, Rational>> {
        self.check_root_only(f)?;
        let mut out = BTreeMap::new();
        let mut recombined = Poly::zero(&self.table);
        for (w, piece) in f.graded_components() {
            self.check_weight(w)?;
            let basis = self.qfuns_of_weight(w)?;
            let coeffs = self.solve_q_piece(w, &|m| piece.coeff(m), &basis)?;
            for ((i, q), c) in basis.into_iter().zip(coeffs) {
                if !c.is_zero() {
                    recombined = &recombined + &q.scale(&c);
                    out.insert(i, c);
                }
            }
        }
        if recombined != *f {
            return Err(Error::NotInQSpan);
        }
        Ok(out)
    }

    fn solve_q_piece(
        &self,
        w: u32,
        coeff: &dyn Fn(Monomial) -> Rational,
        basis: &[(StrictPartition, Poly)],
    ) -> Result<Vec<Rational>> {
        let rows: Vec<(Vec<Rational>, Rational)> = enumerate_partitions(w)
            .into_iter()
            .filter_map(|l| self.dominant_monomial(l.parts()))
            .map(|m| (basis.iter().map(|(_, q)| q.coeff(m)).collect(), coeff(m)))
            .collect();
        match solve_linear(&rows) {
            LinearSolution::Unique(x) => Ok(x),
            LinearSolution::Inconsistent => Err(Error::NotInQSpan),
            LinearSolution::Underdetermined => Err(Error::Unstable),
        }
    }

    /// Expansion of `Q_I · Q_J` in the Q-basis.
    pub fn q_structure_constants(&self, i: &StrictPartition, j: &StrictPartition) -> Result<BTreeMap<StrictPartition, Rational>> {
        self.check_weight(i.weight() + j.weight())?;
        self.decompose_q(&(&self.qfun(i)? * &self.qfun(j)?))
    }

    /// Same result as [`Self::q_structure_constants`], computed from the
    /// dominant coefficients of the product only (no full multiplication).
    /// `qfuns` must contain every `Q_K` with `|K| <= |I| + |J|`.
    pub fn q_structure_constants_fast(
        &self,
        i: &StrictPartition,
        j: &StrictPartition,
        qfuns: &BTreeMap<u32, Vec<(StrictPartition, Poly)>>,
    ) -> Result<BTreeMap<StrictPartition, Rational>> {
        let w = i.weight() + j.weight();
        self.check_weight(w)?;
        let find = |k: &StrictPartition| -> Result<&Poly> {
            qfuns
                .get(&k.weight())
                .and_then(|v| v.iter().find(|(p, _)| p == k))
                .map(|(_, q)| q)
                .ok_or_else(|| Error::Internal(format!("missing Q{k} in table")))
        };
        let (a, b) = (find(i)?, find(j)?);
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let product_coeff = |lambda: Monomial| -> Rational {
            let mut acc = Rational::zero();
            for (m, c) in small.terms() {
                if m.divides(lambda) {
                    let other = large.coeff(m.quotient_of(lambda));
                    if !other.is_zero() {
                        acc += c * &other;
                    }
                }
            }
            acc
        };
        let basis = qfuns.get(&w).ok_or_else(|| Error::Internal(format!("missing weight {w} in table")))?;
        let coeffs = self.solve_q_piece(w, &product_coeff, basis)?;
        Ok(basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((k, _), c)| (k.clone(), c))
            .collect())
    }
}

/// Jacobi–Trudi: `det(h_{λ_i - i + j})`, or `det(e_{λ'_i - i + j})` when the
/// conjugate is shorter. `h(r)`, `e(r)` are only called with `r >= 1`.
pub fn jacobi_trudi<R: RingOps>(
    ring: &R,
    lambda: &Partition,
    h: &dyn Fn(u32) -> R::Elem,
    e: &dyn Fn(u32) -> R::Elem,
) -> Result<R::Elem> {
    let conj = lambda.conjugate();
    let (shape, gen): (&Partition, &dyn Fn(u32) -> R::Elem) =
        if conj.len() < lambda.len() { (&conj, e) } else { (lambda, h) };
    let l = shape.len();
    let m: Vec<Vec<R::Elem>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let r = shape.part(i) as i64 - i as i64 + j as i64;
                    match r {
                        r if r < 0 => ring.zero(),
                        0 => ring.one(),
                        r => gen(r as u32),
                    }
                })
                .collect()
        })
        .collect();
    determinant(ring, &m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn first_generators() {
        let ctx = SymContext::with_vars(2, 2).unwrap();
        assert_eq!(ctx.q(0).unwrap(), Poly::one(ctx.table()));
        assert_eq!(ctx.q(1).unwrap(), (ctx.x(1) + ctx.x(2)).scale(&r(2)));
        let x1 = ctx.x(1);
        let x2 = ctx.x(2);
        assert_eq!(ctx.schur(&"(2)".parse().unwrap()).unwrap(), x1.pow(2) + &x1 * &x2 + x2.pow(2));
        assert!(ctx.q(3).is_err());
        assert!(SymContext::with_vars(2, 3).is_err());
    }

    #[test]
    fn two_row_and_pfaffian_shapes() {
        let ctx = SymContext::new(6).unwrap();
        let q = |k| ctx.q(k).unwrap();
        let qf = |s: &str| ctx.qfun(&sp(s)).unwrap();
        assert_eq!(qf("(2,1)"), q(2) * q(1) - q(3).scale(&r(2)));
        let lhs = qf("(3,2,1)");
        let rhs = qf("(3,2)") * qf("(1)") - qf("(3,1)") * qf("(2)") + qf("(3)") * qf("(2,1)");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompositions() {
        let ctx = SymContext::new(4).unwrap();
        let q2 = ctx.qfun(&sp("(2)")).unwrap();
        let s = ctx.decompose_schur(&q2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[&"(2)".parse().unwrap()], r(2));
        assert_eq!(s[&"(1,1)".parse().unwrap()], r(2));
        let q1q2 = ctx.q(1).unwrap() * ctx.q(2).unwrap();
        let d = ctx.decompose_q(&q1q2).unwrap();
        assert_eq!(d[&sp("(3)")], r(2));
        assert_eq!(d[&sp("(2,1)")], r(1));
        let s1 = ctx.schur(&"(1)".parse().unwrap()).unwrap();
        assert_eq!(ctx.decompose_q(&s1).unwrap()[&sp("(1)")], Rational::new(1, 2));
        assert_eq!(ctx.decompose_q(&ctx.x(1)), Err(Error::NotInQSpan));
        assert_eq!(ctx.decompose_schur(&ctx.x(2)), Err(Error::NotSymmetric));
    }

    #[test]
    fn fast_structure_constants_agree() {
        let ctx = SymContext::new(5).unwrap();
        let table: BTreeMap<u32, Vec<(StrictPartition, Poly)>> =
            (0..=5).map(|w| (w, ctx.qfuns_of_weight(w).unwrap())).collect();
        for (i, j) in [("(1)", "(2)"), ("(2,1)", "(1)"), ("(1)", "()"), ("(3)", "(2)"), ("(2,1)", "(2)")] {
            let (i, j) = (sp(i), sp(j));
            assert_eq!(
                ctx.q_structure_constants(&i, &j).unwrap(),
                ctx.q_structure_constants_fast(&i, &j, &table).unwrap()
            );
        }
        let c = ctx.q_structure_constants(&sp("(1)"), &sp("(2)")).unwrap();
        assert_eq!(c[&sp("(3)")], r(2));
        assert_eq!(c[&sp("(2,1)")], r(1));
    }
}
