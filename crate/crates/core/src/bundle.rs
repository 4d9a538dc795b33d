//! Virtual bundles as formal differences of Chern roots, and the conversion of
//! Legendrian classes to classical Schur expansions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{q_straighten, solve_linear, LinearSolution, Monomial, Poly, PolyRing, Rational, VarTable};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition, StrictPartition};
use crate::symfun::jacobi_trudi;

/// A first Chern class: a linear form, or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClass(Poly);

impl LineClass {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_zero() || p.homogeneous_weight() == Some(1) {
            Ok(LineClass(p))
        } else {
            Err(Error::Invalid(format!("`{p}` is not a weight-1 class")))
        }
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        LineClass(Poly::zero(table))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn scale(&self, c: &Rational) -> LineClass {
        LineClass(self.0.scale(c))
    }
}

impl std::ops::Neg for &LineClass {
    type Output = LineClass;
    fn neg(self) -> LineClass {
        LineClass(-&self.0)
    }
}

impl std::ops::Add for &LineClass {
    type Output = LineClass;
    fn add(self, other: &LineClass) -> LineClass {
        LineClass(&self.0 + &other.0)
    }
}

/// `plus - minus` as lists of Chern roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualBundle {
    table: Arc<VarTable>,
    plus: Vec<LineClass>,
    minus: Vec<LineClass>,
}

impl VirtualBundle {
    pub fn new(table: &Arc<VarTable>, plus: Vec<LineClass>, minus: Vec<LineClass>) -> Result<Self> {
        if plus.iter().chain(&minus).any(|r| r.0.table() != table) {
            return Err(Error::TableMismatch);
        }
        Ok(VirtualBundle { table: table.clone(), plus, minus })
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        VirtualBundle { table: table.clone(), plus: Vec::new(), minus: Vec::new() }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn plus(&self) -> &[LineClass] {
        &self.plus
    }

    pub fn minus(&self) -> &[LineClass] {
        &self.minus
    }

    pub fn rank(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    /// Bundle with every root negated.
    pub fn dual(&self) -> Self {
        VirtualBundle {
            table: self.table.clone(),
            plus: self.plus.iter().map(|r| -r).collect(),
            minus: self.minus.iter().map(|r| -r).collect(),
        }
    }

    /// Whitney sum.
    pub fn sum(&self, other: &VirtualBundle) -> Result<Self> {
        if self.table != other.table {
            return Err(Error::TableMismatch);
        }
        let mut out = self.clone();
        out.plus.extend(other.plus.iter().cloned());
        out.minus.extend(other.minus.iter().cloned());
        Ok(out)
    }

    /// Formal difference `self - other`.
    pub fn difference(&self, other: &VirtualBundle) -> Result<Self> {
        self.sum(&VirtualBundle {
            table: other.table.clone(),
            plus: other.minus.clone(),
            minus: other.plus.clone(),
        })
    }

    /// Tensor with a line bundle: add `l` to every root on both sides.
    pub fn twist(&self, l: &LineClass) -> Self {
        VirtualBundle {
            table: self.table.clone(),
            plus: self.plus.iter().map(|r| r + l).collect(),
            minus: self.minus.iter().map(|r| r + l).collect(),
        }
    }

    /// `Π_plus (1 + r u)^{±1}` style series: multiply by `(1 + sign_mul·r u)` for
    /// `mul` roots and divide by `(1 + sign_div·r u)` for `div` roots, to degree `d`.
    fn series(&self, d: u32, mul: &[LineClass], mul_sign: i64, div: &[LineClass], div_sign: i64) -> Vec<Poly> {
        let d = d as usize;
        let mut s = vec![Poly::zero(&self.table); d + 1];
        s[0] = Poly::one(&self.table);
        for r in mul {
            let r = r.0.scale(&Rational::from(mul_sign));
            for k in (1..=d).rev() {
                let t = &s[k - 1] * &r;
                s[k] = &s[k] + &t;
            }
        }
        for r in div {
            // c'_k = c_k - (sign·r) c'_{k-1}
            let r = r.0.scale(&Rational::from(div_sign));
            for k in 1..=d {
                let t = &s[k - 1] * &r;
                s[k] = &s[k] - &t;
            }
        }
        s
    }

    /// `c_0..c_d` of `Π_plus (1 + r u) / Π_minus (1 + r u)`.
    pub fn chern_series(&self, d: u32) -> Vec<Poly> {
        self.series(d, &self.plus, 1, &self.minus, 1)
    }

    pub fn chern(&self, i: u32) -> Poly {
        self.chern_series(i).pop().expect("nonempty series")
    }

    /// `h_0..h_d` of `Π_minus (1 - m u) / Π_plus (1 - p u)`.
    pub fn h_series(&self, d: u32) -> Vec<Poly> {
        self.series(d, &self.minus, -1, &self.plus, -1)
    }

    /// Schur class by Jacobi–Trudi in `h_r(V)` (or in `e_r(V) = c_r(V)` on the
    /// conjugate shape when that matrix is smaller).
    pub fn schur(&self, lambda: &Partition) -> Result<Poly> {
        let d = lambda.weight();
        let h = self.h_series(d);
        let e = self.chern_series(d);
        jacobi_trudi(&PolyRing(self.table.clone()), lambda, &|r| h[r as usize].clone(), &|r| e[r as usize].clone())
    }

    /// `Q̃_I(V)`: Q-straightening with `q_r := c_r(V)`.
    pub fn qtilde(&self, i: &StrictPartition) -> Result<Poly> {
        let c = self.chern_series(i.weight());
        q_straighten(&PolyRing(self.table.clone()), i.parts(), &mut |_, k| Ok(c[k as usize].clone()))
    }
}

pub fn chern(v: &VirtualBundle, i: u32) -> Poly {
    v.chern(i)
}

pub fn twist(v: &VirtualBundle, l: &LineClass) -> VirtualBundle {
    v.twist(l)
}

pub fn schur_of(lambda: &Partition, v: &VirtualBundle) -> Result<Poly> {
    v.schur(lambda)
}

pub fn qtilde(i: &StrictPartition, v: &VirtualBundle) -> Result<Poly> {
    v.qtilde(i)
}

/// A Legendrian class written as `Σ c · Q̃_I(A⊗ξ^{-1/2}) · t^j`, keyed by `(I, j)`.
pub type QtForm = BTreeMap<(StrictPartition, u32), Rational>;

/// Root model for the classical conversion: `T*M` with roots `y1..yn` and
/// `c_1(ξ) = s`, so `ξ^{1/2}` has class `s/2` and `t = ½c_1(ξ*) = -s/2`.
pub struct ClassicalModel {
    n: u32,
    table: Arc<VarTable>,
}

impl ClassicalModel {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("manifold dimension must be positive".into()));
        }
        let names = (1..=n).map(|i| (format!("y{i}"), 1)).chain([("s".to_string(), 1)]);
        Ok(ClassicalModel { n, table: VarTable::new(names)? })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    fn root(&self, i: usize) -> LineClass {
        LineClass(Poly::var(&self.table, i))
    }

    pub fn s(&self) -> Poly {
        Poly::var(&self.table, self.n as usize)
    }

    pub fn xi(&self) -> LineClass {
        LineClass(self.s())
    }

    pub fn cotangent(&self) -> VirtualBundle {
        VirtualBundle::new(&self.table, (0..self.n as usize).map(|i| self.root(i)).collect(), Vec::new())
            .expect("own table")
    }

    /// `T*M - ξ*`, the bundle whose Schur classes form the target basis.
    pub fn target_bundle(&self) -> VirtualBundle {
        let xi_dual = VirtualBundle::new(&self.table, vec![-&self.xi()], Vec::new()).expect("own table");
        self.cotangent().difference(&xi_dual).expect("own table")
    }

    /// `expr · c_n(T*M ⊗ ξ)` using the first `n` cotangent roots.
    pub fn top_chern_times(&self, expr: &Poly, n: u32, xi: &LineClass) -> Result<Poly> {
        if n > self.n {
            return Err(Error::Range(format!("rank {n} exceeds the {} available roots", self.n)));
        }
        let mut out = expr.clone();
        for i in 0..n as usize {
            out = out.checked_mul(&(&self.root(i) + xi).0)?;
        }
        Ok(out)
    }

    /// `T(T*M ⊗ ξ^{1/2}) · c_n(T*M ⊗ ξ)` as a polynomial in `y`, `s`.
    pub fn evaluate(&self, form: &QtForm) -> Result<Poly> {
        let half = self.xi().scale(&Rational::new(1, 2));
        let e_dual = self.cotangent().twist(&half);
        let v = e_dual.difference(&e_dual.dual())?;
        let t = self.s().scale(&Rational::new(-1, 2));
        let mut sum = Poly::zero(&self.table);
        let mut cache: BTreeMap<StrictPartition, Poly> = BTreeMap::new();
        for ((i, j), c) in form {
            if !cache.contains_key(i) {
                cache.insert(i.clone(), v.qtilde(i)?);
            }
            sum = &sum + &(&cache[i] * &t.pow(*j)).scale(c);
        }
        self.top_chern_times(&sum, self.n, &self.xi())
    }

    /// Partitions `L ⊢ d` with `L_{n+1} <= 1`: the shapes whose Schur classes
    /// of `T*M - ξ*` need not vanish.
    pub fn hook_shapes(&self, d: u32) -> Vec<Partition> {
        enumerate_partitions(d).into_iter().filter(|l| l.part(self.n as usize) <= 1).collect()
    }

    /// Expand a polynomial symmetric in `y` in the classes `s_L(T*M - ξ*)`.
    pub fn decompose(&self, f: &Poly) -> Result<BTreeMap<Partition, Rational>> {
        if f.table() != &self.table {
            return Err(Error::TableMismatch);
        }
        let target = self.target_bundle();
        let mut out = BTreeMap::new();
        for (d, piece) in f.graded_components() {
            let shapes = self.hook_shapes(d);
            let basis: Vec<Poly> = shapes.iter().map(|l| target.schur(l)).collect::<Result<_>>()?;
            // Symmetry in y: the dominant monomials y^α s^k carry all the information.
            let mut rows = Vec::new();
            for k in 0..=d {
                for alpha in enumerate_partitions(d - k) {
                    if alpha.len() > self.n as usize {
                        continue;
                    }
                    let mut exps = alpha.parts().to_vec();
                    exps.resize(self.n as usize, 0);
                    exps.push(k);
                    let m = Monomial::from_exponents(&exps)?;
                    rows.push((basis.iter().map(|b| b.coeff(m)).collect::<Vec<_>>(), piece.coeff(m)));
                }
            }
            let coeffs = match solve_linear(&rows) {
                LinearSolution::Unique(x) => x,
                LinearSolution::Inconsistent => {
                    return Err(Error::Internal(format!("degree-{d} piece is not in the span of the Schur classes")))
                }
                LinearSolution::Underdetermined => {
                    return Err(Error::Internal(format!("Schur classes of degree {d} are dependent")))
                }
            };
            let mut recombined = Poly::zero(&self.table);
            for ((l, b), c) in shapes.into_iter().zip(&basis).zip(coeffs) {
                if !c.is_zero() {
                    recombined = &recombined + &b.scale(&c);
                    out.insert(l, c);
                }
            }
            if recombined != piece {
                return Err(Error::Internal(format!("degree-{d} Schur expansion does not recombine")));
            }
        }
        Ok(out)
    }

    pub fn expand(&self, form: &QtForm) -> Result<BTreeMap<Partition, Rational>> {
        self.decompose(&self.evaluate(form)?)
    }
}

/// Schur expansion of `T(T*M ⊗ ξ^{1/2}) · c_n(T*M ⊗ ξ)` in `s_L(T*M - ξ*)`.
pub fn legendre_to_classical(form: &QtForm, n: u32) -> Result<BTreeMap<Partition, Rational>> {
    ClassicalModel::new(n)?.expand(form)
}

/// As [`legendre_to_classical`] for a form whose coefficients are polynomials
/// in one unknown `k`; `forms[p]` is the coefficient of `k^p`. Values are
/// coefficient vectors in powers of `k`.
pub fn legendre_to_classical_in_k(forms: &[QtForm], n: u32) -> Result<BTreeMap<Partition, Vec<Rational>>> {
    let model = ClassicalModel::new(n)?;
    let mut out: BTreeMap<Partition, Vec<Rational>> = BTreeMap::new();
    for (p, form) in forms.iter().enumerate() {
        for (l, c) in model.expand(form)? {
            let slot = out.entry(l).or_insert_with(|| vec![Rational::zero(); forms.len()]);
            slot[p] = c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().map(|n| (*n, 1))).unwrap()
    }

    fn line(t: &Arc<VarTable>, i: usize) -> LineClass {
        LineClass::new(Poly::var(t, i)).unwrap()
    }

    #[test]
    fn zero_and_dual_differences() {
        let t = table(&["x", "l"]);
        let e = VirtualBundle::new(&t, vec![line(&t, 0)], vec![]).unwrap();
        let zero = e.difference(&e).unwrap();
        for i in 1..5 {
            assert!(zero.chern(i).is_zero());
        }
        let v = e.dual().difference(&e).unwrap();
        assert_eq!(v.chern(1), Poly::var(&t, 0).scale(&Rational::from(-2)));
        // rank 0: c_1 is twist invariant, c_2 picks up -l·c_1
        let l = line(&t, 1);
        let tw = v.twist(&l);
        assert_eq!(tw.chern(1), v.chern(1));
        assert_eq!(tw.chern(2), v.chern(2) - l.poly() * &v.chern(1));
        assert_eq!(tw.twist(&-&l), v);
    }

    #[test]
    fn rejects_non_linear_roots() {
        let t = table(&["x"]);
        assert!(LineClass::new(Poly::var(&t, 0).pow(2)).is_err());
        assert!(LineClass::new(Poly::one(&t)).is_err());
    }

    #[test]
    fn top_chern_of_a_line() {
        let m = ClassicalModel::new(1).unwrap();
        let p = m.top_chern_times(&Poly::one(m.table()), 1, &m.xi()).unwrap();
        assert_eq!(p, Poly::var(m.table(), 0) + m.s());
        assert!(m.top_chern_times(&Poly::one(m.table()), 2, &m.xi()).is_err());
    }

    #[test]
    fn a3_template_at_n2() {
        let mut form = QtForm::new();
        form.insert(("(2)".parse().unwrap(), 0), Rational::from(3));
        form.insert(("(1)".parse().unwrap(), 1), Rational::from(1));
        let got: Vec<(String, String)> = legendre_to_classical(&form, 2)
            .unwrap()
            .into_iter()
            .map(|(l, c)| (l.to_string(), c.to_string()))
            .collect();
        let expected = [("(1,1,1,1)", "5"), ("(2,1,1)", "11"), ("(2,2)", "6"), ("(3,1)", "6")];
        assert_eq!(got, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn zero_form_has_empty_expansion() {
        assert!(legendre_to_classical(&QtForm::new(), 2).unwrap().is_empty());
    }
}
