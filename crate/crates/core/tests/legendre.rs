use proptest::prelude::*;
use thom_core::legendre::{
    bounds_interval, classical_bounds, evaluate_presentation, expand_family, family_element, from_presentation,
    one_row_family, positivity_check, presentation_table, s_class, Construction, FamilyBasis, FamilySpec, KClass,
    LegClass, LegKey, LegRing, Params, Positivity,
};
use thom_core::partitions::enumerate_strict;
use thom_core::{Poly, Rational, StrictPartition};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn sp(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

fn line(p: u32, q: u32) -> Params {
    Params::Line(FamilySpec::new(p, q).unwrap())
}

fn diag() -> Params {
    Params::Line(FamilySpec::diagonal())
}

const SPECS: [(u32, u32); 3] = [(1, 1), (0, 1), (1, 0)];

/// Presentation polynomial from `(coefficient, [(variable, exponent)])` terms.
fn pres(max_a: u32, terms: &[(Rational, &[(&str, u32)])]) -> Poly {
    let t = presentation_table(max_a).unwrap();
    terms.iter().fold(Poly::zero(&t), |acc, (c, vars)| {
        let m = vars.iter().fold(Poly::one(&t), |m, (v, e)| m * Poly::var_named(&t, v).unwrap().pow(*e));
        acc + m.scale(c)
    })
}

#[test]
fn presentation_examples() {
    let a1 = from_presentation(&pres(1, &[(r(1), &[("a1", 1)])])).unwrap();
    assert_eq!(a1, LegClass::basis(Params::Plane, sp("(1)"), 0, 0).unwrap());
    let s = from_presentation(&pres(1, &[(r(1), &[("s", 1)])])).unwrap();
    assert_eq!(s, s_class(Params::Plane));
    // a_2 + s/2 a_1 is Q̃_2 on the diagonal
    let b2 = from_presentation(&pres(2, &[(r(1), &[("a2", 1)]), (Rational::new(1, 2), &[("s", 1), ("a1", 1)])])).unwrap();
    assert_eq!(b2.specialize(FamilySpec::diagonal()).unwrap(), LegClass::basis(diag(), sp("(2)"), 0, 0).unwrap());
}

#[test]
fn degree_two_one_row_classes() {
    let ring = LegRing::new(2).unwrap();
    for ((p, q), frac) in SPECS.into_iter().zip([Rational::new(1, 2), Rational::zero(), Rational::new(1, 3)]) {
        let expected = from_presentation(&pres(2, &[(r(1), &[("a2", 1)]), (frac, &[("s", 1), ("a1", 1)])]))
            .unwrap()
            .specialize(FamilySpec::new(p, q).unwrap())
            .unwrap();
        assert_eq!(one_row_family(&ring, 2, line(p, q)).unwrap(), expected, "({p},{q})");
        assert_eq!(one_row_family(&ring, 1, line(p, q)).unwrap(), LegClass::basis(line(p, q), sp("(1)"), 0, 0).unwrap());
    }
    assert!(one_row_family(&ring, 3, diag()).is_err());
}

#[test]
fn one_row_classes_match_their_presentation() {
    // c_h(A + α^{h-1}) = Σ_k C(h-1, k) (-v1)^k a_{h-k}
    let ring = LegRing::new(5).unwrap();
    for h in 1..=5u32 {
        let mut terms: Vec<(Rational, Vec<(String, u32)>)> = Vec::new();
        let mut binom = 1i64;
        for k in 0..h {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            terms.push((r(sign * binom), vec![(format!("a{}", h - k), 1), ("v1".into(), k)]));
            binom = binom * (h - 1 - k) as i64 / (k + 1) as i64;
        }
        let borrowed: Vec<(Rational, Vec<(&str, u32)>)> =
            terms.iter().map(|(c, v)| (c.clone(), v.iter().map(|(n, e)| (n.as_str(), *e)).collect())).collect();
        let refs: Vec<(Rational, &[(&str, u32)])> = borrowed.iter().map(|(c, v)| (c.clone(), v.as_slice())).collect();
        let expected = from_presentation(&pres(5, &refs)).unwrap();
        assert_eq!(one_row_family(&ring, h, Params::Plane).unwrap(), expected, "h = {h}");
    }
}

#[test]
fn diagonal_family_is_the_canonical_basis() {
    let ring = LegRing::new(5).unwrap();
    for d in 1..=5 {
        for shape in enumerate_strict(d) {
            let e = family_element(&ring, &shape, diag(), Construction::Flagged).unwrap();
            assert_eq!(e, LegClass::basis(diag(), shape.clone(), 0, 0).unwrap(), "I = {shape}");
            let u = family_element(&ring, &shape, diag(), Construction::Uniform).unwrap();
            assert_eq!(u, e, "uniform I = {shape}");
        }
    }
}

#[test]
fn family_bases_are_bases_and_round_trip() {
    let ring = LegRing::new(5).unwrap();
    for params in SPECS.iter().map(|&(p, q)| line(p, q)).chain([Params::Plane]) {
        let mut basis = FamilyBasis::new(&ring, params, Construction::Flagged);
        for w in 0..=5 {
            let keys = basis.keys_of_weight(w);
            // a mixed class touching every key of this weight
            let x = LegClass::from_terms(params, keys.iter().enumerate().map(|(i, k)| (k.clone(), Rational::new(i as i64 * 7 - 11, 3))))
                .unwrap();
            let exp = basis.expand(&x).unwrap();
            assert_eq!(basis.recombine(&exp).unwrap(), x, "{params}, weight {w}");
            for k in &keys {
                let e = basis.key_element(k).unwrap();
                let single = basis.expand(&e).unwrap();
                assert_eq!(single.coeffs.len(), 1);
                assert_eq!(single.coeff(k), r(1));
            }
        }
    }
}

#[test]
fn uniform_and_flagged_share_one_row_elements() {
    let ring = LegRing::new(4).unwrap();
    for h in 1..=4 {
        let shape = StrictPartition::row(h);
        assert_eq!(
            family_element(&ring, &shape, Params::Plane, Construction::Flagged).unwrap(),
            family_element(&ring, &shape, Params::Plane, Construction::Uniform).unwrap()
        );
    }
}

#[test]
fn d4_and_p8_are_the_same_in_every_basis() {
    let ring = LegRing::new(6).unwrap();
    for (shape, specs) in [("(2,1)", &[(0, 1), (1, 0), (1, 1), (2, 1), (1, 2)][..]), ("(3,2,1)", &[(0, 1), (1, 0), (1, 1)][..])] {
        let canonical = LegClass::basis(Params::Plane, sp(shape), 0, 0).unwrap();
        for &(p, q) in specs {
            let e = expand_family(&ring, &canonical, line(p, q), Construction::Flagged).unwrap();
            assert_eq!(e.coeffs.len(), 1, "{shape} at ({p},{q}): {}", e.as_key_class());
            assert_eq!(e.coeff(&LegKey::new(sp(shape), 0, 0)), r(1));
        }
        let e = expand_family(&ring, &canonical, Params::Plane, Construction::Flagged).unwrap();
        assert_eq!(e.coeffs.len(), 1);
    }
    // The uniform straightening does not have this property.
    let d4 = LegClass::basis(Params::Plane, sp("(2,1)"), 0, 0).unwrap();
    let u = expand_family(&ring, &d4, line(0, 1), Construction::Uniform).unwrap();
    assert_eq!(u.coeff(&LegKey::new(sp("(2)"), 1, 0)), r(-1));
}

#[test]
fn a7_is_positive_in_every_basis() {
    let diag_terms: [(&str, u32, i64); 13] = [
        ("(3,2,1)", 0, 135),
        ("(4,2)", 0, 1275),
        ("(5,1)", 0, 2004),
        ("(6)", 0, 2520),
        ("(5)", 1, 7092),
        ("(4,1)", 1, 4439),
        ("(3,2)", 1, 1713),
        ("(3,1)", 2, 3545),
        ("(4)", 2, 7868),
        ("(2,1)", 3, 1106),
        ("(3)", 3, 4292),
        ("(2)", 4, 1148),
        ("(1)", 5, 120),
    ];
    let x = LegClass::from_terms(diag(), diag_terms.iter().map(|(i, j, c)| (LegKey::new(sp(i), *j, 0), r(*c)))).unwrap();
    let lifted = x.lift_diagonal().unwrap();
    assert!(lifted.is_legendrian());
    let ring = LegRing::new(6).unwrap();
    for (p, q) in [(0, 1), (1, 0), (2, 1), (1, 2), (1, 1)] {
        let e = expand_family(&ring, &lifted, line(p, q), Construction::Flagged).unwrap();
        assert_eq!(e.positivity(), Positivity::Pass, "({p},{q})");
        assert!(e.all_integral(), "({p},{q})");
    }
    let plane = expand_family(&ring, &lifted, Params::Plane, Construction::Flagged).unwrap();
    assert_eq!(plane.positivity(), Positivity::Pass);
    assert!(plane.all_integral());
}

#[test]
fn relations_hold_through_both_routes() {
    // a'_i = c_i(A ⊗ ξ^{-1/2}) = Σ_j C(-j, i-j) (-s/2)^{i-j} a_j satisfies
    // Σ_i (-1)^i a'_i a'_{2m-i} = 0.
    let max = 8u32;
    let t = presentation_table(max).unwrap();
    let s = Poly::var_named(&t, "s").unwrap().scale(&Rational::new(-1, 2));
    let a = |j: u32| if j == 0 { Poly::one(&t) } else { Poly::var_named(&t, &format!("a{j}")).unwrap() };
    let a_prime = |i: u32| {
        (0..=i).fold(Poly::zero(&t), |acc, j| {
            acc + (a(j) * s.pow(i - j)).scale(&thom_core::algebra::binomial(-(j as i64), i - j))
        })
    };
    let ring = LegRing::new(max).unwrap();
    for m in 1..=max / 2 {
        let rel = (0..=2 * m).fold(Poly::zero(&t), |acc, i| {
            let term = a_prime(i) * a_prime(2 * m - i);
            if i % 2 == 0 { acc + term } else { acc - term }
        });
        assert!(!rel.is_zero());
        assert!(evaluate_presentation(&ring, &rel, Params::Plane).unwrap().is_zero(), "ring, weight {}", 2 * m);
        if 2 * m <= 8 {
            assert!(from_presentation(&rel).unwrap().is_zero(), "roots, weight {}", 2 * m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn presentation_routes_agree(coeffs in prop::collection::vec(-6i64..7, 8)) {
        let monomials: [&[(&str, u32)]; 8] = [
            &[("a4", 1)],
            &[("a3", 1), ("s", 1)],
            &[("a2", 2)],
            &[("a2", 1), ("a1", 1), ("v1", 1)],
            &[("a1", 2), ("t", 1), ("v2", 1)],
            &[("a1", 1), ("s", 3)],
            &[("v1", 2), ("v2", 2)],
            &[("a3", 1), ("t", 1)],
        ];
        let terms: Vec<(Rational, &[(&str, u32)])> = coeffs.iter().zip(monomials).map(|(&c, m)| (Rational::new(c, 2), m)).collect();
        let expr = pres(4, &terms);
        let ring = LegRing::new(4).unwrap();
        prop_assert_eq!(from_presentation(&expr).unwrap(), evaluate_presentation(&ring, &expr, Params::Plane).unwrap());
    }
}

fn bounds_template() -> KClass {
    // 3(a_2 + s/2 a_1) - k s/2 a_1
    let c0 = from_presentation(&pres(2, &[(r(3), &[("a2", 1)]), (Rational::new(3, 2), &[("s", 1), ("a1", 1)])])).unwrap();
    let c1 = from_presentation(&pres(2, &[(Rational::new(-1, 2), &[("s", 1), ("a1", 1)])])).unwrap();
    KClass::new(vec![c0, c1]).unwrap()
}

#[test]
fn bounds_from_two_bases() {
    let ring = LegRing::new(2).unwrap();
    let specs = [FamilySpec::new(0, 1).unwrap(), FamilySpec::new(1, 0).unwrap()];
    let b = bounds_interval(&ring, &bounds_template(), &specs).unwrap();
    assert_eq!(b.interval(), "1 <= k <= 3");
    assert_eq!(b.lower, Some(r(1)));
    assert_eq!(b.upper, Some(r(3)));
    let only_diag = bounds_interval(&ring, &bounds_template(), &[FamilySpec::diagonal()]).unwrap();
    assert_eq!(only_diag.interval(), "k >= 0");
    let fixed = KClass::constant(bounds_template().at(&r(1)).unwrap());
    assert_eq!(bounds_interval(&ring, &fixed, &specs).unwrap().interval(), "-inf < k < +inf");
}

#[test]
fn expansion_at_case_two() {
    let ring = LegRing::new(2).unwrap();
    let t = bounds_template();
    let e = expand_family(&ring, &t.at(&r(1)).unwrap(), line(0, 1), Construction::Flagged).unwrap();
    assert_eq!(e.coeff(&LegKey::new(sp("(2)"), 0, 0)), r(3));
    assert_eq!(e.coeff(&LegKey::new(sp("(1)"), 1, 0)), r(1));
    assert_eq!(e.coeffs.len(), 2);
    let bad = expand_family(&ring, &t.at(&r(4)).unwrap(), line(0, 1), Construction::Flagged).unwrap();
    assert_eq!(
        positivity_check(&bad),
        Positivity::Fail { key: LegKey::new(sp("(1)"), 1, 0), coeff: Rational::new(-1, 2) }
    );
    let zero = expand_family(&ring, &LegClass::zero(Params::Plane), line(0, 1), Construction::Flagged).unwrap();
    assert_eq!(positivity_check(&zero), Positivity::Pass);
}

#[test]
fn a3_expands_on_the_diagonal() {
    let ring = LegRing::new(2).unwrap();
    let a3 = LegClass::from_terms(diag(), [(LegKey::new(sp("(2)"), 0, 0), r(3)), (LegKey::new(sp("(1)"), 1, 0), r(1))]).unwrap();
    let e = expand_family(&ring, &a3, diag(), Construction::Flagged).unwrap();
    assert_eq!(e.as_key_class(), a3);
    assert_eq!(e.positivity(), Positivity::Pass);
}

#[test]
fn classical_bounds_for_a3() {
    let c0 = LegClass::basis(Params::Plane, sp("(2)"), 0, 0).unwrap().scale(&r(3));
    let c1 = LegClass::basis(diag(), sp("(1)"), 1, 0).unwrap().lift_diagonal().unwrap();
    let template = KClass::new(vec![c0, c1]).unwrap();
    let n2 = classical_bounds(&template, &[2]).unwrap();
    assert_eq!(n2.interval(), "k <= 6");
    let labels: Vec<String> = n2.constraints.iter().filter(|c| !c.slope.is_zero()).map(ToString::to_string).collect();
    assert_eq!(labels, ["n=2 s(2,1,1): 12 - k >= 0", "n=2 s(1,1,1,1): 6 - k >= 0"]);
    assert_eq!(classical_bounds(&template, &[2, 3, 4, 5, 6]).unwrap().interval(), "k <= 6");
    assert!(classical_bounds(&KClass::constant(LegClass::zero(Params::Plane)), &[2]).unwrap().constraints.is_empty());
}
