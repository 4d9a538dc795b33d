//! Determinants and Pfaffians over any commutative ring we compute in.

use std::collections::HashMap;
use std::sync::Arc;

use super::poly::{Poly, VarTable};
use super::rational::Rational;
use crate::error::Result;

/// The handful of ring operations the straightening formulas need.
pub trait RingOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Polynomials over a fixed variable table.
#[derive(Debug, Clone)]
pub struct PolyRing(pub Arc<VarTable>);

impl RingOps for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(&self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(&self.0)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.checked_add(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.checked_mul(b)
    }
    fn scale(&self, c: &Rational, a: &Poly) -> Poly {
        a.scale(c)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// Determinant by Laplace expansion along the top row, memoised on the
/// set of remaining columns.
pub fn determinant<R: RingOps>(ring: &R, m: &[Vec<R::Elem>]) -> Result<R::Elem> {
    let n = m.len();
    assert!(n < 64 && m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut memo: HashMap<u64, R::Elem> = HashMap::new();
    det_rec(ring, m, 0, (1u64 << n) - 1, &mut memo)
}

fn det_rec<R: RingOps>(
    ring: &R,
    m: &[Vec<R::Elem>],
    row: usize,
    cols: u64,
    memo: &mut HashMap<u64, R::Elem>,
) -> Result<R::Elem> {
    if cols == 0 {
        return Ok(ring.one());
    }
    if let Some(v) = memo.get(&cols) {
        return Ok(v.clone());
    }
    let mut acc = ring.zero();
    let mut sign = Rational::one();
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !ring.is_zero(entry) {
            let minor = det_rec(ring, m, row + 1, cols & !(1 << c), memo)?;
            let term = ring.mul(entry, &minor)?;
            acc = ring.add(&acc, &ring.scale(&sign, &term))?;
        }
        sign = -sign;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

/// Pfaffian of the antisymmetric matrix whose upper triangle is given by
/// `entry(r, s)` for `r < s`. Expansion along the first remaining row with
/// alternating signs: `Pf = Σ_j (-1)^j m_{1j} Pf(minor)` with `j` counted from 2.
pub fn pfaffian<R: RingOps>(ring: &R, size: usize, entry: &dyn Fn(usize, usize) -> R::Elem) -> Result<R::Elem> {
    assert!(size % 2 == 0 && size < 64, "Pfaffian needs an even size");
    let mut memo: HashMap<u64, R::Elem> = HashMap::new();
    pf_rec(ring, entry, if size == 0 { 0 } else { (1u64 << size) - 1 }, &mut memo)
}

fn pf_rec<R: RingOps>(
    ring: &R,
    entry: &dyn Fn(usize, usize) -> R::Elem,
    set: u64,
    memo: &mut HashMap<u64, R::Elem>,
) -> Result<R::Elem> {
    if set == 0 {
        return Ok(ring.one());
    }
    if let Some(v) = memo.get(&set) {
        return Ok(v.clone());
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc = ring.zero();
    let mut sign = Rational::one();
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = entry(first, j);
        if !ring.is_zero(&e) {
            let minor = pf_rec(ring, entry, rest & !(1 << j), memo)?;
            let term = ring.mul(&e, &minor)?;
            acc = ring.add(&acc, &ring.scale(&sign, &term))?;
        }
        sign = -sign;
    }
    memo.insert(set, acc.clone());
    Ok(acc)
}

/// Q-type straightening. `chern(h, k)` supplies `c_k(E_h)`, the k-th class of
/// the bundle attached to a row of length `h`; for ordinary Q-functions it
/// ignores `h`. One row gives `c_i(E_i)`, two rows
/// `c_i(E_i)c_j(E_j) + 2 Σ_{k=1..j} (-1)^k c_{i+k}(E_i) c_{j-k}(E_j)`, longer
/// partitions the Pfaffian of the two-row entries (odd lengths padded by 0).
pub fn q_straighten<R: RingOps>(
    ring: &R,
    parts: &[u32],
    chern: &mut dyn FnMut(u32, u32) -> Result<R::Elem>,
) -> Result<R::Elem> {
    let mut cache: HashMap<(u32, u32), R::Elem> = HashMap::new();
    let mut c = |h: u32, k: u32| -> Result<R::Elem> {
        if k == 0 {
            return Ok(ring.one());
        }
        if let Some(v) = cache.get(&(h, k)) {
            return Ok(v.clone());
        }
        let v = chern(h, k)?;
        cache.insert((h, k), v.clone());
        Ok(v)
    };
    match parts.len() {
        0 => Ok(ring.one()),
        1 => c(parts[0], parts[0]),
        2 => two_row(ring, &mut c, parts[0], parts[1]),
        _ => {
            let mut padded = parts.to_vec();
            if padded.len() % 2 == 1 {
                padded.push(0);
            }
            let n = padded.len();
            let mut entries: Vec<Vec<Option<R::Elem>>> = vec![vec![None; n]; n];
            for r in 0..n {
                for s in r + 1..n {
                    entries[r][s] = Some(two_row(ring, &mut c, padded[r], padded[s])?);
                }
            }
            pfaffian(ring, n, &|r, s| entries[r][s].clone().expect("upper triangle"))
        }
    }
}

fn two_row<R: RingOps>(
    ring: &R,
    c: &mut impl FnMut(u32, u32) -> Result<R::Elem>,
    i: u32,
    j: u32,
) -> Result<R::Elem> {
    let mut acc = ring.mul(&c(i, i)?, &c(j, j)?)?;
    let mut sign = Rational::from(2);
    for k in 1..=j {
        sign = -sign;
        let t = ring.mul(&c(i, i + k)?, &c(j, j - k)?)?;
        acc = ring.add(&acc, &ring.scale(&sign, &t))?;
    }
    Ok(acc)
}
