//! Invariant suites run by `thomctl selfcheck`.

use std::collections::BTreeMap;

use thom_core::bundle::{LineClass, VirtualBundle};
use thom_core::legendre::{
    evaluate_presentation, expand_family, family_element, from_presentation, one_row_family, presentation_table,
    Construction, FamilyBasis, FamilySpec, LegClass, LegKey, LegRing, Params,
};
use thom_core::partitions::enumerate_strict;
use thom_core::symfun::SymContext;
use thom_core::{Poly, Rational, StrictPartition};

use crate::commands::{check_fixture, run_bounds, Check};
use crate::error::Result;
use crate::fixtures::{builtin_fixtures, BasisKind};

fn line(p: u32, q: u32) -> Params {
    Params::Line(FamilySpec::new(p, q).expect("valid spec"))
}

fn named_lines() -> [Params; 3] {
    [line(1, 1), line(0, 1), line(1, 0)]
}

fn shapes_up_to(d: u32) -> Vec<StrictPartition> {
    (1..=d).flat_map(enumerate_strict).collect()
}

fn verdict(name: impl Into<String>, failure: Option<String>) -> Check {
    Check::new(name, failure.is_none(), failure.unwrap_or_default())
}

fn q_relations(d: u32) -> Result<Check> {
    let ctx = SymContext::with_vars(d as usize + 2, d)?;
    let q = |k: u32| ctx.q(k);
    let mut failure = None;
    for i in 1..=d / 2 {
        let mut rel = q(i)? * q(i)?;
        for k in 1..=i {
            let sign = Rational::from(if k % 2 == 1 { -2 } else { 2 });
            rel = rel + (q(i + k)? * q(i - k)?).scale(&sign);
        }
        if !rel.is_zero() {
            failure = Some(format!("q_{i}^2 relation leaves {rel}"));
            break;
        }
    }
    Ok(verdict(format!("Q-series relations up to weight {d}, N = {}", d + 2), failure))
}

fn qtilde_at_roots(d: u32) -> Result<Check> {
    let d = d.min(4);
    let ctx = SymContext::with_vars(d as usize, d)?;
    let roots = |sign: i64| -> thom_core::Result<Vec<LineClass>> {
        (1..=d as usize).map(|i| LineClass::new(ctx.x(i).scale(&Rational::from(sign)))).collect()
    };
    let v = VirtualBundle::new(ctx.table(), roots(1)?, roots(-1)?)?;
    let mut failure = None;
    for i in shapes_up_to(d) {
        if v.qtilde(&i)? != ctx.qfun(&i)? {
            failure = Some(format!("Q~{i}(E* - E) differs from Q{i}"));
            break;
        }
    }
    Ok(verdict(format!("Q~_I(E* - E) = Q_I at the roots of E*, |I| <= {d}"), failure))
}

fn structure_constants(ring: &LegRing, d: u32) -> Result<Check> {
    let shapes = shapes_up_to(d);
    let mut failure = None;
    'outer: for i in &shapes {
        for j in &shapes {
            if i.weight() + j.weight() > d {
                continue;
            }
            if let Some((k, c)) = ring.structure(i, j)?.into_iter().find(|(_, c)| !c.is_integer() || c.is_negative()) {
                failure = Some(format!("Q{i}·Q{j} has coefficient {c} on Q{k}"));
                break 'outer;
            }
        }
    }
    Ok(verdict(format!("Q-product structure constants are nonnegative integers, |I|+|J| <= {d}"), failure))
}

fn schur_expansions(d: u32) -> Result<Check> {
    let ctx = SymContext::new(d)?;
    let mut failure = None;
    for i in shapes_up_to(d) {
        let exp = ctx.decompose_schur(&ctx.qfun(&i)?)?;
        if let Some((l, c)) = exp.iter().find(|(_, c)| !c.is_integer() || c.is_negative()) {
            failure = Some(format!("Q{i} has coefficient {c} on s{l}"));
            break;
        }
    }
    Ok(verdict(format!("Schur expansions of Q_I are nonnegative integers, |I| <= {d}"), failure))
}

fn diagonal_reduction(ring: &LegRing, d: u32) -> Result<Check> {
    let diag = Params::Line(FamilySpec::diagonal());
    let mut failure = None;
    for i in shapes_up_to(d) {
        let e = family_element(ring, &i, diag, Construction::Flagged)?;
        if e != LegClass::basis(diag, i.clone(), 0, 0)? {
            failure = Some(format!("e{i} at (1,1) is {e}"));
            break;
        }
    }
    Ok(verdict(format!("(1,1) family basis is the canonical basis, |I| <= {d}"), failure))
}

fn round_trips(ring: &LegRing, d: u32) -> Result<Check> {
    let d = d.min(5);
    let mut failure = None;
    for params in named_lines().into_iter().chain([Params::Plane]) {
        let mut basis = FamilyBasis::new(ring, params, Construction::Flagged);
        for w in 1..=d {
            let keys = basis.keys_of_weight(w);
            let x = LegClass::from_terms(params, keys.iter().enumerate().map(|(n, k)| (k.clone(), Rational::new(n as i64 * 5 - 7, 2))))?;
            let back = basis.expand(&x).and_then(|e| basis.recombine(&e));
            if back.as_ref() != Ok(&x) {
                failure = Some(format!("basis {params}, weight {w}: {back:?}"));
                break;
            }
        }
    }
    Ok(verdict(format!("family bases invert and round-trip, weight <= {d}"), failure))
}

fn presentation_relations(ring: &LegRing, d: u32) -> Result<Check> {
    let t = presentation_table(d)?;
    let minus_half_s = Poly::var_named(&t, "s")?.scale(&Rational::new(-1, 2));
    let a = |j: u32| -> thom_core::Result<Poly> {
        if j == 0 {
            Ok(Poly::one(&t))
        } else {
            Poly::var_named(&t, &format!("a{j}"))
        }
    };
    let a_prime = |i: u32| -> thom_core::Result<Poly> {
        let mut out = Poly::zero(&t);
        for j in 0..=i {
            out = out + (a(j)? * minus_half_s.pow(i - j)).scale(&thom_core::algebra::binomial(-(j as i64), i - j));
        }
        Ok(out)
    };
    let mut failure = None;
    for m in 1..=d / 2 {
        let mut rel = Poly::zero(&t);
        for i in 0..=2 * m {
            let term = a_prime(i)? * a_prime(2 * m - i)?;
            rel = if i % 2 == 0 { rel + term } else { rel - term };
        }
        let by_ring = evaluate_presentation(ring, &rel, Params::Plane)?;
        if !by_ring.is_zero() {
            failure = Some(format!("weight {}: ring route gives {by_ring}", 2 * m));
            break;
        }
        if 2 * m <= 6 {
            let by_roots = from_presentation(&rel)?;
            if !by_roots.is_zero() {
                failure = Some(format!("weight {}: root route gives {by_roots}", 2 * m));
                break;
            }
        }
    }
    Ok(verdict(format!("relations of c(A⊗ξ^(-1/2)) hold up to weight {d}"), failure))
}

fn degree_two_rows(ring: &LegRing) -> Result<Check> {
    let t = presentation_table(2)?;
    let v = |n: &str| Poly::var_named(&t, n);
    let mut failure = None;
    for (params, frac) in named_lines().into_iter().zip([Rational::new(1, 2), Rational::zero(), Rational::new(1, 3)]) {
        let expr = v("a2")? + (v("s")? * v("a1")?).scale(&frac);
        let expected = from_presentation(&expr)?.to_params(params)?;
        let got = one_row_family(ring, 2, params)?;
        if got != expected {
            failure = Some(format!("basis {params}: {got} instead of {expected}"));
        }
    }
    Ok(verdict("degree-2 one-row classes a_2 + s a_1/2, a_2, a_2 + s a_1/3", failure))
}

/// The canonical class `Q̃_I` should be `e_{I,0,0}` in every family basis.
/// Prints the residual for the flagged construction on failure, and the
/// uniform construction's expansion as information.
fn all_bases(ring: &LegRing, shape: &str, label: &str) -> Result<Vec<Check>> {
    let shape: StrictPartition = shape.parse()?;
    let canonical = LegClass::basis(Params::Plane, shape.clone(), 0, 0)?;
    let mut residuals = Vec::new();
    for params in [line(0, 1), line(1, 0), line(1, 1), line(2, 1), line(1, 2), Params::Plane] {
        let e = expand_family(ring, &canonical, params, Construction::Flagged)?;
        let target: BTreeMap<LegKey, Rational> = [(LegKey::new(shape.clone(), 0, 0), Rational::one())].into();
        if e.coeffs != target {
            residuals.push(format!("  basis {params}: {label} = {}", e.as_key_class()));
        }
    }
    let mut out = vec![Check::new(
        format!("{label} equals Q{shape} in every family basis"),
        residuals.is_empty(),
        residuals.join("\n"),
    )];
    let uniform: Vec<String> = [line(0, 1), line(1, 0)]
        .into_iter()
        .map(|p| expand_family(ring, &canonical, p, Construction::Uniform).map(|e| format!("  basis {p}: {label} = {}", e.as_key_class())))
        .collect::<thom_core::Result<_>>()?;
    out.push(Check::new(format!("info: {label} in the uniform-straightening basis (not used)"), true, uniform.join("\n")));
    Ok(out)
}

fn fixtures(ring: &LegRing, d: u32) -> Result<Check> {
    let all = builtin_fixtures();
    let diagonal: BTreeMap<String, _> =
        all.iter().filter(|f| f.basis == BasisKind::Diagonal).map(|f| (f.name.clone(), f.clone())).collect();
    let bases = [Params::Plane, line(1, 1), line(0, 1), line(1, 0)];
    let mut failures = Vec::new();
    let mut count = 0;
    for f in all.iter().filter(|f| f.codim <= d) {
        count += 1;
        let twin = if f.basis == BasisKind::Family { diagonal.get(&f.name) } else { None };
        for c in check_fixture(ring, f, &bases, twin)?.into_iter().filter(|c| !c.passed) {
            failures.push(format!("  {} {}: {}", f.label(), c.name, c.detail));
        }
    }
    Ok(Check::new(format!("{count} shipped fixtures of codim <= {d}"), failures.is_empty(), failures.join("\n")))
}

fn bounds_reproduction() -> Result<Check> {
    let specs = [FamilySpec::new(0, 1)?, FamilySpec::new(1, 0)?];
    let r = run_bounds("3*a(2) + 3/2*s*a(1) - 1/2*k*s*a(1)", &specs, None)?;
    let ok = r.lower == Some(Rational::one()) && r.upper == Some(Rational::from(3));
    Ok(Check::new("bounds template over (0,1), (1,0) gives 1 <= k <= 3", ok, if ok { String::new() } else { r.interval() }))
}

pub fn run(max_weight: u32) -> Result<Vec<Check>> {
    let d = max_weight;
    let ring = LegRing::new(d)?;
    let mut out = vec![
        q_relations(d)?,
        qtilde_at_roots(d)?,
        structure_constants(&ring, d)?,
        schur_expansions(d)?,
        diagonal_reduction(&ring, d)?,
        round_trips(&ring, d)?,
        presentation_relations(&ring, d)?,
        degree_two_rows(&ring)?,
    ];
    if d >= 3 {
        out.extend(all_bases(&ring, "(2,1)", "D_4")?);
    }
    if d >= 6 {
        out.extend(all_bases(&ring, "(3,2,1)", "P_8")?);
    }
    out.push(fixtures(&ring, d)?);
    out.push(bounds_reproduction()?);
    Ok(out)
}
