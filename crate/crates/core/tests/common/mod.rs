//! Helpers shared by the integration tests: exact evaluation and the
//! bialternant formula.

#![allow(dead_code)]

use thom_core::{Poly, Rational};

pub fn eval(f: &Poly, point: &[Rational]) -> Rational {
    let n = f.table().len();
    assert_eq!(n, point.len());
    f.terms()
        .map(|(m, c)| {
            m.exponents(n).iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * x.pow(e))
        })
        .sum()
}

pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    d
}

/// `s_λ = det(x_i^{λ_j + n - j}) / det(x_i^{n - j})`.
pub fn schur_by_bialternant(lambda: &[u32], x: &[Rational]) -> Rational {
    let n = x.len();
    if lambda.len() > n {
        return Rational::zero();
    }
    let part = |j: usize| lambda.get(j).copied().unwrap_or(0);
    let num = (0..n).map(|i| (0..n).map(|j| x[i].pow(part(j) + (n - 1 - j) as u32)).collect()).collect();
    let den = (0..n).map(|i| (0..n).map(|j| x[i].pow((n - 1 - j) as u32)).collect()).collect();
    det(num) / det(den)
}
