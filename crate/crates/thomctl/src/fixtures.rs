//! Thom polynomial tables in the `.tp` text format.
//!
//! ```text
//! # comment
//! [A_3]
//! codim = 2
//! basis = family
//! 3 Q(2)
//! 1 v2 Q(1)
//! ```
//!
//! In a `family` record, `c v1^a v2^b Q(I)` is `c·e_{I,a,b}` in the
//! two-parameter family basis. In a `diagonal` record, `c t^j Q(I)` is
//! `c·t^j·Q̃_I` on the line `v1 = v2 = t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;
use thom_core::legendre::{Construction, FamilyBasis, FamilySpec, LegClass, LegKey, LegRing, Params};
use thom_core::{Rational, StrictPartition};

pub const FAMILY_TP: &str = include_str!("../fixtures/family.tp");
pub const DIAGONAL_TP: &str = include_str!("../fixtures/diagonal.tp");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate record [{name}]")]
    Duplicate { line: usize, name: String },
    #[error("record [{name}] (line {line}): missing `{field}`")]
    Missing { line: usize, name: String, field: &'static str },
    #[error("record [{name}]: term `{term}` has weight {weight}, but codim = {codim}")]
    WeightMismatch { name: String, term: String, weight: u32, codim: u32 },
    #[error("record [{name}]: term `{term}` uses `{var}`, which a {basis} record does not allow")]
    WrongVariable { name: String, term: String, var: &'static str, basis: BasisKind },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    Family,
    Diagonal,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Family => write!(f, "family"),
            BasisKind::Diagonal => write!(f, "diagonal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTerm {
    pub coeff: Rational,
    pub v1: u32,
    pub v2: u32,
    pub t: u32,
    pub shape: StrictPartition,
}

impl FixtureTerm {
    pub fn weight(&self) -> u32 {
        self.v1 + self.v2 + self.t + self.shape.weight()
    }
}

impl fmt::Display for FixtureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (name, e) in [("v1", self.v1), ("v2", self.v2), ("t", self.t)] {
            match e {
                0 => {}
                1 => write!(f, " {name}")?,
                _ => write!(f, " {name}^{e}")?,
            }
        }
        write!(f, " Q{}", self.shape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThomFixture {
    pub name: String,
    pub basis: BasisKind,
    pub codim: u32,
    pub terms: Vec<FixtureTerm>,
}

impl ThomFixture {
    pub fn label(&self) -> String {
        format!("{} [{}]", self.name, self.basis)
    }

    /// The terms free of `v1, v2, t`.
    pub fn lagrangian_terms(&self) -> impl Iterator<Item = &FixtureTerm> {
        self.terms.iter().filter(|t| t.v1 + t.v2 + t.t == 0)
    }

    /// Coefficients after `v1 = v2 = t`, keyed by `(I, j)`.
    pub fn diagonal_coefficients(&self) -> BTreeMap<(StrictPartition, u32), Rational> {
        let mut out: BTreeMap<(StrictPartition, u32), Rational> = BTreeMap::new();
        for term in &self.terms {
            *out.entry((term.shape.clone(), term.v1 + term.v2 + term.t)).or_default() += &term.coeff;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The class in canonical plane coordinates. Family records are summed
    /// over the flagged family basis; diagonal records are lifted along
    /// `t = ½c_1(ξ*)`.
    pub fn canonical_class(&self, ring: &LegRing) -> thom_core::Result<LegClass> {
        match self.basis {
            BasisKind::Family => {
                let mut basis = FamilyBasis::new(ring, Params::Plane, Construction::Flagged);
                let mut out = LegClass::zero(Params::Plane);
                for term in &self.terms {
                    let e = basis.key_element(&LegKey::new(term.shape.clone(), term.v1, term.v2))?;
                    out = out.checked_add(&e.scale(&term.coeff))?;
                }
                Ok(out)
            }
            BasisKind::Diagonal => {
                let diag = Params::Line(FamilySpec::diagonal());
                let line = LegClass::from_terms(
                    diag,
                    self.terms.iter().map(|t| (LegKey::new(t.shape.clone(), t.t, 0), t.coeff.clone())),
                )?;
                line.lift_diagonal()
            }
        }
    }
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, FixtureError> {
    Err(FixtureError::Syntax { line, message: message.into() })
}

fn parse_term(text: &str, line: usize) -> Result<FixtureTerm, FixtureError> {
    let Some(q_at) = text.find("Q(") else {
        return syntax(line, format!("term `{text}` has no Q(...) factor"));
    };
    let q_text = text[q_at..].trim();
    let inner = q_text
        .strip_prefix("Q(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| FixtureError::Syntax { line, message: format!("malformed `{q_text}`") })?;
    let parts: Vec<u32> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| FixtureError::Syntax { line, message: format!("malformed `{q_text}`") })?
    };
    let shape = StrictPartition::new(parts)
        .map_err(|_| FixtureError::Syntax { line, message: format!("`{q_text}`: Q index must be a strict partition") })?;
    let mut words = text[..q_at].split_whitespace();
    let coeff_text = words.next().ok_or_else(|| FixtureError::Syntax { line, message: "missing coefficient".into() })?;
    let coeff: Rational =
        coeff_text.parse().map_err(|_| FixtureError::Syntax { line, message: format!("bad coefficient `{coeff_text}`") })?;
    let mut term = FixtureTerm { coeff, v1: 0, v2: 0, t: 0, shape };
    for word in words {
        let (name, exp) = match word.split_once('^') {
            Some((n, e)) => match e.parse::<u32>() {
                Ok(e) if e > 0 => (n, e),
                _ => return syntax(line, format!("bad exponent in `{word}`")),
            },
            None => (word, 1),
        };
        let slot = match name {
            "v1" => &mut term.v1,
            "v2" => &mut term.v2,
            "t" => &mut term.t,
            _ => return syntax(line, format!("unknown variable `{name}`")),
        };
        *slot += exp;
    }
    Ok(term)
}

struct Draft {
    name: String,
    line: usize,
    codim: Option<u32>,
    basis: Option<BasisKind>,
    terms: Vec<FixtureTerm>,
}

impl Draft {
    fn finish(self) -> Result<ThomFixture, FixtureError> {
        let missing = |field| FixtureError::Missing { line: self.line, name: self.name.clone(), field };
        let codim = self.codim.ok_or_else(|| missing("codim"))?;
        let basis = self.basis.ok_or_else(|| missing("basis"))?;
        for term in &self.terms {
            let bad = match basis {
                BasisKind::Family if term.t > 0 => Some("t"),
                BasisKind::Diagonal if term.v1 > 0 => Some("v1"),
                BasisKind::Diagonal if term.v2 > 0 => Some("v2"),
                _ => None,
            };
            if let Some(var) = bad {
                return Err(FixtureError::WrongVariable { name: self.name, term: term.to_string(), var, basis });
            }
            if term.weight() != codim {
                return Err(FixtureError::WeightMismatch {
                    name: self.name,
                    term: term.to_string(),
                    weight: term.weight(),
                    codim,
                });
            }
        }
        Ok(ThomFixture { name: self.name, basis, codim, terms: self.terms })
    }
}

/// Parse one fixture file. Record names must be unique within the file.
pub fn parse_fixtures(text: &str) -> Result<Vec<ThomFixture>, FixtureError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut current: Option<Draft> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(name) = body.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']').map(str::trim).filter(|n| !n.is_empty()) else {
                return syntax(line, format!("malformed record header `{body}`"));
            };
            if !seen.insert(name.to_string()) {
                return Err(FixtureError::Duplicate { line, name: name.to_string() });
            }
            if let Some(done) = current.take() {
                out.push(done.finish()?);
            }
            current = Some(Draft { name: name.to_string(), line, codim: None, basis: None, terms: Vec::new() });
            continue;
        }
        let Some(draft) = current.as_mut() else {
            return syntax(line, "content before the first [NAME] header");
        };
        if let Some((key, value)) = body.split_once('=') {
            match (key.trim(), value.trim()) {
                ("codim", v) => match v.parse::<u32>() {
                    Ok(c) if c > 0 => draft.codim = Some(c),
                    _ => return syntax(line, format!("codim must be a positive integer, got `{v}`")),
                },
                ("basis", "family") => draft.basis = Some(BasisKind::Family),
                ("basis", "diagonal") => draft.basis = Some(BasisKind::Diagonal),
                ("basis", v) => return syntax(line, format!("basis must be `family` or `diagonal`, got `{v}`")),
                (k, _) => return syntax(line, format!("unknown field `{k}`")),
            }
            continue;
        }
        draft.terms.push(parse_term(body, line)?);
    }
    if let Some(done) = current.take() {
        out.push(done.finish()?);
    }
    Ok(out)
}

/// Load a `.tp` file, or every `.tp` file of a directory in name order.
pub fn load_fixtures(path: &Path) -> Result<Vec<ThomFixture>, FixtureError> {
    let io = |e: std::io::Error| FixtureError::Io { path: path.display().to_string(), message: e.to_string() };
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "tp"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for file in files {
            out.extend(load_fixtures(&file)?);
        }
        return Ok(out);
    }
    let text = std::fs::read_to_string(path).map_err(io)?;
    parse_fixtures(&text)
}

/// The shipped tables: the family file, then the diagonal file.
pub fn builtin_fixtures() -> Vec<ThomFixture> {
    let mut out = parse_fixtures(FAMILY_TP).expect("shipped family.tp parses");
    out.extend(parse_fixtures(DIAGONAL_TP).expect("shipped diagonal.tp parses"));
    out
}
