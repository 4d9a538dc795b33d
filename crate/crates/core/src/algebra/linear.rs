//! Exact linear solving by fraction-free elimination.

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined,
}

impl LinearSolution {
    pub fn unique(self) -> Option<Vec<Rational>> {
        match self {
            LinearSolution::Unique(v) => Some(v),
            _ => None,
        }
    }
}

/// Solve `rows[i].0 · x = rows[i].1`. Rows may outnumber unknowns.
///
/// Panics if the rows do not all have the same width.
pub fn solve_linear(rows: &[(Vec<Rational>, Rational)]) -> LinearSolution {
    let n = match rows.first() {
        Some((r, _)) => r.len(),
        None => return LinearSolution::Underdetermined,
    };
    assert!(rows.iter().all(|(r, _)| r.len() == n), "inconsistent row widths");

    // Augmented matrix with each row scaled to integer entries.
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(r, b)| {
            let mut row: Vec<Rational> = r.iter().cloned().chain(std::iter::once(b.clone())).collect();
            let lcm = row.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
                num_integer::Integer::lcm(&acc, &x.denom())
            });
            let lcm = Rational::from_bigint(lcm);
            if !lcm.is_one() {
                for x in &mut row {
                    *x = &*x * &lcm;
                }
            }
            row
        })
        .collect();
    let m = a.len();

    let mut prev = Rational::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..=n {
                let v = &(&pivot * &row[j]) - &(&factor * &pivot_row[j]);
                row[j] = &v / &prev;
            }
            row[c] = Rational::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }

    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < n {
        return LinearSolution::Underdetermined;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate().rev() {
        let mut acc = a[i][n].clone();
        for j in c + 1..n {
            if !a[i][j].is_zero() {
                acc -= &a[i][j] * &x[j];
            }
        }
        x[c] = &acc / &a[i][c];
    }
    LinearSolution::Unique(x)
}
