//! Partitions and strict partitions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// A strictly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// The column partition `(1^n)`.
    pub fn column(n: u32) -> Partition {
        Partition(vec![1; n as usize])
    }
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a strict partition")));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    /// The one-row partition `(r)`, empty for `r = 0`.
    pub fn row(r: u32) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            StrictPartition(vec![r])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_partition(&self) -> Partition {
        Partition(self.0.clone())
    }
}

impl TryFrom<Partition> for StrictPartition {
    type Error = Error;
    fn try_from(p: Partition) -> Result<Self> {
        StrictPartition::new(p.0)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("expected `(p1,p2,...)`, got `{s}`")))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad part `{}` in `{s}`", p.trim())))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StrictPartition::new(parse_parts(s)?)
    }
}

/// All partitions of `d` with parts at most `max_part`, in decreasing lex order.
fn partitions_bounded(d: u32, max_part: u32, strict: bool, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if d == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=d.min(max_part)).rev() {
        prefix.push(p);
        let next_max = if strict { p - 1 } else { p };
        partitions_bounded(d - p, next_max, strict, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `d`, each once, in decreasing lexicographic order.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(d, d, false, &mut Vec::new(), &mut out);
    out.into_iter().map(Partition).collect()
}

/// All strict partitions of `d`, each once, in decreasing lexicographic order.
pub fn enumerate_strict(d: u32) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    partitions_bounded(d, d, true, &mut Vec::new(), &mut out);
    out.into_iter().map(StrictPartition).collect()
}

/// Whether `I` fits in the staircase `(n, n-1, ..., 1)`.
pub fn contained_in_staircase(i: &StrictPartition, n: u32) -> bool {
    i.len() <= n as usize && i.parts().iter().enumerate().all(|(r, &p)| p + r as u32 <= n)
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let three: Vec<String> = enumerate_partitions(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(three, ["(3)", "(2,1)", "(1,1,1)"]);
        let strict3: Vec<String> = enumerate_strict(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(strict3, ["(3)", "(2,1)"]);
        assert_eq!(enumerate_strict(2).len(), 1);
    }

    #[test]
    fn staircase_and_conjugate() {
        assert!(contained_in_staircase(&"(2,1)".parse().unwrap(), 2));
        assert!(!contained_in_staircase(&"(3)".parse().unwrap(), 2));
        assert!(contained_in_staircase(&"(4,2,1)".parse().unwrap(), 4));
        let p: Partition = "(4,2)".parse().unwrap();
        assert_eq!(p.conjugate().to_string(), "(2,2,1,1)");
        assert_eq!(Partition::new(vec![3]).unwrap().conjugate().to_string(), "(1,1,1)");
    }

    #[test]
    fn validation() {
        assert!(StrictPartition::new(vec![1, 2]).is_err());
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert!(Partition::new(vec![2, 2]).is_ok());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("()".parse::<StrictPartition>().unwrap(), StrictPartition::empty());
    }
}
