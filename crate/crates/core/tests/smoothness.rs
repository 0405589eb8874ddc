use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::Arc;
use tschirnhaus::finite_field::FiniteField;
use tschirnhaus::forms::{CompleteIntersectionSpec, Pencil};
use tschirnhaus::poly::MultiPoly;
use tschirnhaus::scalar::RingKind;
use tschirnhaus::smoothness::*;

fn mod_p(poly: &MultiPoly, p: u64) -> MultiPoly {
    poly.change_ring(&RingKind::finite(p, 1).unwrap()).unwrap()
}

/// Normalized Jacobian rows mod p agree with the predicted monomial rows up to a unit.
fn rows_match(cert: &OrbitCertificate) {
    let system = chart_system(&cert.spec(), cert.pencil(), cert.p, false).unwrap();
    assert_eq!(system.jacobian.len(), 2, "linear form is eliminated");
    let (quad, high) = cert.predicted_rows().unwrap();
    for (row, predicted) in system.jacobian.iter().zip([quad, high]) {
        let got: Vec<MultiPoly> = row.iter().map(|d| mod_p(d, cert.p)).collect();
        let want: Vec<MultiPoly> = predicted.iter().map(|d| mod_p(d, cert.p)).collect();
        let field = RingKind::finite(cert.p, 1).unwrap();
        let unit = (1..cert.p as i64)
            .map(|u| field.from_int(u))
            .find(|u| got.iter().zip(&want).all(|(g, w)| *g == w.scale(u).unwrap()));
        assert!(unit.is_some(), "rows differ: {got:?} vs {want:?}");
    }
}

#[test]
fn certificate_nine_two_one() {
    let c = orbit_certificate(9, 2, 1).unwrap();
    assert_eq!(c.orbits.len(), 2);
    assert_eq!(c.orbits[1].elements, vec![3, 6]);
    assert_eq!(c.bound_n, 121);
    assert_eq!(c.witness_degree, 110);
    assert_eq!(c.witness_field.as_ref().unwrap().m, 110);
    c.verify().unwrap();
    rows_match(&c);
}

#[test]
fn certificate_four_two_one_agrees_with_enumeration() {
    let c = orbit_certificate(4, 2, 1).unwrap();
    assert_eq!(c.case, 2);
    assert_eq!(c.modulus, 3);
    rows_match(&c);
    let field = c.field.clone().unwrap();
    let r = brute_force_smooth(&c.spec(), c.pencil(), field, &c.witness, DEFAULT_POINT_BUDGET).unwrap();
    assert!(r.smooth, "{r:?}");
    assert_eq!(r.points_checked, 9);
    // The variety has no rational points here, while the bare matrix drops rank off it.
    assert_eq!(r.points_on_variety, 0);
    let (pts, bad) = c.matrix_rank_failures(DEFAULT_POINT_BUDGET).unwrap();
    assert_eq!(pts, r.points_checked);
    assert!(bad > 0);
}

/// Brute force at the witness for every certificate with `n <= 7` whose field is small enough.
#[test]
fn certificate_agrees_with_enumeration_up_to_seven() {
    let mut checked = Vec::new();
    for (n, p, r) in
        [(4, 2, 1), (5, 2, 1), (6, 2, 1), (7, 2, 1), (5, 3, 1), (6, 3, 1), (7, 3, 1), (6, 2, 2), (7, 2, 2), (7, 5, 1)]
    {
        let s = orbit_structure(n, p, r).unwrap();
        let Some(q) = p.checked_pow(s.witness_degree as u32) else {
            continue;
        };
        match projective_point_count(q, s.modulus as u32 - 2) {
            Some(pts) if pts <= DEFAULT_POINT_BUDGET => {}
            _ => continue,
        }
        let c = orbit_certificate(n, p, r).unwrap();
        let field = c.field.clone().unwrap();
        let rep = brute_force_smooth(&c.spec(), c.pencil(), field, &c.witness, DEFAULT_POINT_BUDGET).unwrap();
        checked.push(((n, p, r), rep.singular_count));
    }
    assert_eq!(checked.len(), 2, "feasible instances: {checked:?}");
    let bad: Vec<_> = checked.iter().filter(|(_, s)| *s > 0).collect();
    assert!(bad.is_empty(), "singular points at the certificate witness: {bad:?}");
}

/// A split orbit gives singular points on the mod-p reduction for every nonzero parameter.
#[test]
fn split_orbit_forces_singular_points() {
    let c = orbit_structure(7, 2, 1).unwrap();
    assert!(!c.unobstructed());
    let supports: Vec<Vec<u64>> = c.orbits.iter().filter(|o| o.split).map(|o| o.elements.clone()).collect();
    assert_eq!(supports.len(), 2);
    let f = Arc::new(FiniteField::new(2, 4).unwrap());
    for t in [1, 2, 7, 13] {
        let a = f.element_from_index(t);
        let r = brute_force_smooth(&c.spec(), c.pencil(), f.clone(), &a, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(r.singular_count, 2);
        for pt in &r.singular_points {
            let support: Vec<u64> = (1..=6).filter(|&j| pt[j as usize - 1] != "(0,0,0,0)").collect();
            assert!(supports.iter().any(|o| support.iter().all(|j| o.contains(j))), "{pt:?}");
        }
    }
    // the same variety is smooth in other characteristics
    for q in [3u64, 5, 11] {
        let f = Arc::new(FiniteField::new(q, 1).unwrap());
        let r = brute_force_smooth(&c.spec(), c.pencil(), f.clone(), &f.one(), DEFAULT_POINT_BUDGET).unwrap();
        assert!(r.smooth && r.points_on_variety > 0, "q = {q}");
    }
    assert!(orbit_structure(9, 2, 1).unwrap().unobstructed());
}

#[test]
fn rows_match_across_small_cases() {
    for (n, p, r) in [
        (5, 3, 1),
        (6, 2, 1),
        (6, 3, 1),
        (7, 3, 1),
        (8, 2, 1),
        (10, 2, 1),
        (10, 2, 2),
        (11, 3, 2),
        (8, 5, 1),
        (12, 3, 2),
    ] {
        let c = orbit_structure(n, p, r).unwrap();
        rows_match(&c);
    }
}

#[test]
fn zero_parameter_is_singular() {
    // a = 0 collapses the pencil member to x^n; every form degenerates
    let spec = CompleteIntersectionSpec::new(5, vec![1, 2], false).unwrap();
    let f = Arc::new(FiniteField::new(3, 1).unwrap());
    let r = brute_force_smooth(&spec, Pencil::Radical, f.clone(), &f.zero(), DEFAULT_POINT_BUDGET).unwrap();
    assert!(!r.smooth);
    assert!(r.singular_count > 0);
    assert_eq!(r.singular_points.len() as u64, r.singular_count.min(SINGULAR_LIST_CAP as u64));
}

#[test]
fn budget_is_enforced() {
    let spec = CompleteIntersectionSpec::new(8, vec![1, 2], false).unwrap();
    let f = Arc::new(FiniteField::new(2, 4).unwrap());
    let a = f.one();
    assert!(matches!(
        brute_force_smooth(&spec, Pencil::Radical, f, &a, 1000),
        Err(tschirnhaus::AlgebraError::BudgetExceeded { .. })
    ));
}

#[test]
fn quadric_scaling_is_one_over_n() {
    for n in 3..=7 {
        let rep = quadric_discriminant_scaling(n, 4, 7).unwrap();
        assert!(rep.constant, "n = {n}");
        assert_eq!(rep.ratio_exact.unwrap(), BigRational::new(BigInt::from(1), BigInt::from(n as i64)));
    }
}

#[test]
fn structure_errors_and_case_two() {
    assert!(matches!(orbit_structure(4, 3, 1), Err(tschirnhaus::AlgebraError::InvalidArgument(_))));
    assert!(orbit_structure(9, 4, 1).is_err());
    let c = orbit_structure(10, 2, 1).unwrap();
    assert_eq!((c.case, c.modulus), (2, 9));
    assert_eq!(c.nu[1], 5);
    assert_eq!(c.orbits[0].elements, vec![1, 5, 7, 8, 4, 2]);
}

#[test]
fn quadric_pencil_smooth_away_from_bad_primes() {
    for (n, q) in [(4, 5u64), (5, 3), (5, 11), (6, 7), (7, 3), (8, 3), (9, 5)] {
        let (p, m) = tschirnhaus::finite_field::split_prime_power(q).unwrap();
        let f = Arc::new(FiniteField::new(p, m).unwrap());
        let spec = CompleteIntersectionSpec::new(n, vec![1, 2], false).unwrap();
        for a in [1i64, 2] {
            let a = f.from_int(a);
            let r = brute_force_smooth(&spec, Pencil::Radical, f.clone(), &a, DEFAULT_POINT_BUDGET).unwrap();
            assert!(r.smooth, "n = {n}, q = {q}");
        }
    }
    // the reduced family on x^n + a x, away from 2(n - 1)
    for (n, q) in [(4, 5u64), (5, 3), (6, 3), (7, 5)] {
        let f = Arc::new(FiniteField::new(q, 1).unwrap());
        let spec = CompleteIntersectionSpec::new(n, vec![1, 2], true).unwrap();
        let r = brute_force_smooth(&spec, Pencil::RadicalLinear, f.clone(), &f.one(), DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(r.eliminated.as_deref(), Some(format!("b{}", n - 1).as_str()));
        assert!(r.smooth, "n = {n}, q = {q}");
    }
}

#[test]
fn acceptance_quintic_over_f11() {
    let spec = CompleteIntersectionSpec::new(5, vec![1, 2], false).unwrap();
    let f = Arc::new(FiniteField::new(11, 1).unwrap());
    let r = brute_force_smooth(&spec, Pencil::Radical, f.clone(), &f.one(), DEFAULT_POINT_BUDGET).unwrap();
    assert_eq!(r.points_checked, projective_point_count(11, 3).unwrap());
    assert_eq!(r.singular_count, 0);
    assert!(r.points_on_variety > 0);
}

#[test]
fn repeated_roots_kill_both_sides() {
    use tschirnhaus::symmetric::CoeffVector;
    let q = |x: i64| BigRational::from_integer(x.into());
    // (z - 1)^2 z
    let a = CoeffVector::new(vec![q(-2), q(1), q(0)]).unwrap();
    let (det, disc) = gram_det_and_disc(&a);
    assert_eq!(det, q(0));
    assert_eq!(disc, q(0));
    assert!(quadric_discriminant_scaling(2, 4, 1).is_err());
}
