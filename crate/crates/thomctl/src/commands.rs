//! The five subcommands, as functions returning their printed report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thom_core::bundle::{legendre_to_classical_in_k, ClassicalModel, QtForm};
use thom_core::legendre::{
    bounds_interval, classical_bounds, expand_family, format_k_poly, BoundResult, Construction, FamilyExpansion,
    FamilySpec, KClass, LegClass, LegRing, Params, Positivity,
};
use thom_core::{Partition, Rational};

use crate::error::{CliError, Result};
use crate::expr::{evaluate, parse_expr, Base, ExprAst};
use crate::fixtures::{builtin_fixtures, load_fixtures, BasisKind, ThomFixture};
use crate::selfcheck;

/// Printed output plus whether every check in it passed (exit code 0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub ok: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// `p,q` for a line of the family, or `plane` for the two-parameter basis.
pub fn parse_basis(text: &str) -> Result<Params> {
    if text.trim() == "plane" {
        return Ok(Params::Plane);
    }
    text.parse::<FamilySpec>().map(Params::Line).map_err(|e| CliError::Usage(format!("bad basis `{text}`: {e}")))
}

/// `p1,q1;p2,q2;...`
pub fn parse_bases(text: &str) -> Result<Vec<FamilySpec>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<FamilySpec>().map_err(|e| CliError::Usage(format!("bad basis `{s}`: {e}"))))
        .collect()
}

/// `2..6` (inclusive) or `2,3,5`.
pub fn parse_ns(text: &str) -> Result<Vec<u32>> {
    let bad = || CliError::Usage(format!("bad list of n `{text}`"));
    let ns: Vec<u32> = match text.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            (a..=b).collect()
        }
        None => text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?,
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(bad());
    }
    Ok(ns)
}

/// What to expand: an expression or records from a fixture file.
#[derive(Debug, Clone)]
pub enum Source<'a> {
    Expr(&'a str),
    Fixtures { path: Option<&'a Path>, name: Option<&'a str> },
}

fn select_fixtures(path: Option<&Path>, name: Option<&str>) -> Result<Vec<ThomFixture>> {
    let all = match path {
        Some(p) => load_fixtures(p)?,
        None => builtin_fixtures(),
    };
    match name {
        None => Ok(all),
        Some(n) => {
            let hits: Vec<ThomFixture> = all.into_iter().filter(|f| f.name == n).collect();
            if hits.is_empty() {
                Err(CliError::Usage(format!("no fixture named `{n}`")))
            } else {
                Ok(hits)
            }
        }
    }
}

fn ring_for(weight: u32) -> Result<LegRing> {
    Ok(LegRing::new(weight.max(1))?)
}

fn parse_plain(text: &str) -> Result<ExprAst> {
    let ast = parse_expr(text)?;
    if ast.mentions(&Base::K) {
        return Err(CliError::Usage("the unknown k is only allowed by `bounds` and `classical`".into()));
    }
    Ok(ast)
}

/// Expansion table with columns `I`, then `j` (line) or `a b` (plane), then the coefficient.
pub fn format_expansion(e: &FamilyExpansion) -> String {
    let mut rows: Vec<Vec<String>> = vec![match e.params {
        Params::Plane => vec!["I".into(), "a".into(), "b".into(), "coeff".into()],
        Params::Line(_) => vec!["I".into(), "j".into(), "coeff".into()],
    }];
    for (k, c) in &e.coeffs {
        let mut row = vec![k.shape.to_string(), k.a.to_string()];
        if e.params == Params::Plane {
            row.push(k.b.to_string());
        }
        row.push(c.to_string());
        rows.push(row);
    }
    render_table(&rows)
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(i, cell)| format!("{cell:<w$}", w = widths[i])).collect();
        let _ = writeln!(out, "  {}", line.join("  ").trim_end());
    }
    out
}

fn positivity_line(e: &FamilyExpansion) -> String {
    match e.positivity() {
        Positivity::Pass => "positivity: pass".into(),
        Positivity::Fail { key, coeff } => {
            format!("positivity: FAIL at {} (coefficient {coeff})", thom_core::legendre::format_key(&key, e.params))
        }
    }
}

pub fn cmd_expand(source: Source<'_>, basis: Params) -> Result<Report> {
    let mut out = String::new();
    match source {
        Source::Expr(text) => {
            let ast = parse_plain(text)?;
            let ring = ring_for(ast.max_weight())?;
            let x = evaluate(&ast, &ring)?.at(&Rational::zero())?;
            let e = expand_family(&ring, &x, basis, Construction::Flagged)?;
            let _ = writeln!(out, "{ast} in basis {basis}");
            out.push_str(&format_expansion(&e));
            let _ = writeln!(out, "{}", positivity_line(&e));
        }
        Source::Fixtures { path, name } => {
            let fixtures = select_fixtures(path, name)?;
            let ring = ring_for(fixtures.iter().map(|f| f.codim).max().unwrap_or(1))?;
            for f in &fixtures {
                let e = expand_family(&ring, &f.canonical_class(&ring)?, basis, Construction::Flagged)?;
                let _ = writeln!(out, "{}, codim {}, basis {basis}", f.label(), f.codim);
                out.push_str(&format_expansion(&e));
                let _ = writeln!(out, "{}", positivity_line(&e));
            }
        }
    }
    Ok(Report { output: out, ok: true })
}

/// Outcome of one named sub-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// All sub-checks for one fixture: homogeneity, Legendrian form, positivity
/// and integrality in each basis, nonzero Lagrangian part, and agreement
/// with a diagonal record of the same name when one is given.
pub fn check_fixture(ring: &LegRing, f: &ThomFixture, bases: &[Params], diagonal_twin: Option<&ThomFixture>) -> Result<Vec<Check>> {
    let class = f.canonical_class(ring)?;
    let mut checks = Vec::new();
    let weight = class.homogeneous_weight();
    checks.push(Check::new(
        "homogeneity",
        weight == Some(f.codim),
        match weight {
            Some(w) => format!("weight {w}, codim {}", f.codim),
            None => "mixed weights".into(),
        },
    ));
    checks.push(Check::new("legendrian", class.is_legendrian(), "depends on v1, v2 only through s"));
    for &params in bases {
        let e = expand_family(ring, &class, params, Construction::Flagged)?;
        let fail = match e.positivity() {
            Positivity::Pass => String::new(),
            Positivity::Fail { key, coeff } => {
                format!("{} has coefficient {coeff}", thom_core::legendre::format_key(&key, params))
            }
        };
        checks.push(Check::new(format!("positivity {params}"), fail.is_empty(), fail));
        let frac = e.coeffs.iter().find(|(_, c)| !c.is_integer());
        checks.push(Check::new(
            format!("integrality {params}"),
            frac.is_none(),
            frac.map(|(k, c)| format!("{} has coefficient {c}", thom_core::legendre::format_key(k, params))).unwrap_or_default(),
        ));
    }
    let lagrangian = class.lagrangian_part();
    let listed = f.lagrangian_terms().count();
    let n = f.codim + 1;
    let classical = ClassicalModel::new(n)?.evaluate(&class.to_qt_form()?)?;
    checks.push(Check::new(
        "nonzero at t=0",
        !lagrangian.is_zero() && listed > 0 && !classical.is_zero(),
        format!("{listed} Lagrangian terms; classical product at n={n} is {}", if classical.is_zero() { "zero" } else { "nonzero" }),
    ));
    if let Some(twin) = diagonal_twin {
        let ours = f.diagonal_coefficients();
        let theirs = twin.diagonal_coefficients();
        let same_class = class.to_params(Params::Line(FamilySpec::diagonal()))?
            == twin.canonical_class(ring)?.to_params(Params::Line(FamilySpec::diagonal()))?;
        checks.push(Check::new(
            "matches diagonal record",
            ours == theirs && same_class,
            if ours == theirs { "coefficient for coefficient".to_string() } else { "coefficients differ".into() },
        ));
    }
    Ok(checks)
}

pub fn cmd_check(path: Option<&Path>, bases: Option<Vec<Params>>) -> Result<Report> {
    let fixtures = select_fixtures(path, None)?;
    let bases = bases.unwrap_or_else(|| {
        let mut b = vec![Params::Plane];
        b.extend([(1, 1), (0, 1), (1, 0)].map(|(p, q)| Params::Line(FamilySpec::new(p, q).expect("valid spec"))));
        b
    });
    let ring = ring_for(fixtures.iter().map(|f| f.codim).max().unwrap_or(1))?;
    let diagonal: BTreeMap<&str, &ThomFixture> =
        fixtures.iter().filter(|f| f.basis == BasisKind::Diagonal).map(|f| (f.name.as_str(), f)).collect();
    let mut out = String::new();
    let mut ok = true;
    for f in &fixtures {
        let twin = (f.basis == BasisKind::Family).then(|| diagonal.get(f.name.as_str()).copied()).flatten();
        let checks = check_fixture(&ring, f, &bases, twin)?;
        let all = checks.iter().all(|c| c.passed);
        ok &= all;
        let _ = writeln!(out, "{} {}, codim {}", if all { "PASS" } else { "FAIL" }, f.label(), f.codim);
        for c in checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "  FAIL {}: {}", c.name, c.detail);
        }
    }
    let _ = writeln!(out, "{} fixtures, {}", fixtures.len(), if ok { "all checks pass" } else { "some checks FAIL" });
    Ok(Report { output: out, ok })
}

/// Parse a template and evaluate it in plane coordinates.
pub fn template(text: &str) -> Result<(ExprAst, LegRing, KClass)> {
    let ast = parse_expr(text)?;
    if ast.k_degree() > 1 {
        return Err(CliError::Usage("template is not affine in k".into()));
    }
    let ring = ring_for(ast.max_weight())?;
    let value = evaluate(&ast, &ring)?;
    Ok((ast, ring, value))
}

/// Family-basis bounds, or classical ones when `ns` is given.
pub fn run_bounds(text: &str, bases: &[FamilySpec], ns: Option<&[u32]>) -> Result<BoundResult> {
    let (_, ring, value) = template(text)?;
    let result = match ns {
        Some(ns) => {
            require_legendrian(&value)?;
            classical_bounds(&value, ns)?
        }
        None => bounds_interval(&ring, &value, bases)?,
    };
    Ok(result)
}

pub fn cmd_bounds(text: &str, bases: &[FamilySpec], ns: Option<&[u32]>) -> Result<Report> {
    let result = run_bounds(text, bases, ns)?;
    let mut out = String::new();
    for c in &result.constraints {
        let _ = writeln!(out, "  {c}");
    }
    if result.constraints.iter().all(|c| c.slope.is_zero()) {
        let neg = result.constraints.iter().find(|c| c.constant.is_negative());
        let _ = writeln!(
            out,
            "positivity: {}",
            match neg {
                None => "pass".to_string(),
                Some(c) => format!("FAIL at {} {}", c.source, c.label),
            }
        );
    }
    let _ = writeln!(out, "bound: {}", result.interval());
    Ok(Report { output: out, ok: !result.empty })
}

fn require_legendrian(value: &KClass) -> Result<()> {
    if value.parts().iter().all(LegClass::is_legendrian) {
        Ok(())
    } else {
        Err(CliError::Usage("classical conversion needs v1, v2 to enter only through s = v2 - 3v1".into()))
    }
}

/// Schur coefficients of the classical product, as polynomials in `k`.
pub fn run_classical(text: &str, n: u32) -> Result<BTreeMap<Partition, Vec<Rational>>> {
    let ast = parse_expr(text)?;
    let ring = ring_for(ast.max_weight())?;
    let value = evaluate(&ast, &ring)?;
    require_legendrian(&value)?;
    let forms: Vec<QtForm> = value.parts().iter().map(LegClass::to_qt_form).collect::<thom_core::Result<_>>()?;
    Ok(legendre_to_classical_in_k(&forms, n)?)
}

pub fn cmd_classical(text: &str, n: u32) -> Result<Report> {
    if n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let coeffs = run_classical(text, n)?;
    let mut rows = vec![vec!["L".to_string(), "coeff".to_string()]];
    for (l, c) in coeffs.iter().rev() {
        rows.push(vec![format!("s{l}"), format_k_poly(c)]);
    }
    let mut out = format!("classes s_L(T*M - xi*) at n = {n}\n");
    out.push_str(&render_table(&rows));
    Ok(Report { output: out, ok: true })
}

pub fn cmd_selfcheck(max_weight: u32) -> Result<Report> {
    if max_weight < 2 {
        return Err(CliError::Usage("--max-weight must be at least 2".into()));
    }
    let checks = selfcheck::run(max_weight)?;
    let mut out = String::new();
    let mut ok = true;
    for c in &checks {
        ok &= c.passed;
        let _ = write!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if c.detail.is_empty() {
            out.push('\n');
        } else if c.detail.contains('\n') {
            let _ = writeln!(out, ":\n{}", c.detail.trim_end());
        } else {
            let _ = writeln!(out, ": {}", c.detail);
        }
    }
    Ok(Report { output: out, ok })
}
