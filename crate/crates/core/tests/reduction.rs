use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tschirnhaus::forms::t12_gram;
use tschirnhaus::forms::Pencil;
use tschirnhaus::numeric::{HpComplex, Real};
use tschirnhaus::reduction::{
    isotropic_subspace, maximal_isotropic, reduce_to_bring, reduce_to_principal, transform_coeffs_hp, verify_trace,
    Level, QuadricForm, ReductionOptions, ROOT_TOL,
};
use tschirnhaus::ring::Ring;
use tschirnhaus::symmetric::{discriminant, CoeffVector};
use tschirnhaus::AlgebraError;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn coeffs(v: &[i64]) -> CoeffVector<BigRational> {
    CoeffVector::new(v.iter().map(|&x| q(x)).collect()).unwrap()
}

/// Random integer polynomial with distinct roots.
fn random_squarefree(n: usize, rng: &mut ChaCha8Rng) -> CoeffVector<BigRational> {
    loop {
        let a = CoeffVector::new((0..n).map(|_| q(rng.gen_range(-9..=9))).collect()).unwrap();
        if !discriminant(&a).is_zero() {
            return a;
        }
    }
}

fn opts(seed: u64) -> ReductionOptions {
    ReductionOptions { seed, ..ReductionOptions::default() }
}

#[test]
fn cubic_with_roots_one_two_three() {
    let a = coeffs(&[-6, 11, -6]);
    let trace = reduce_to_principal(&a, &opts(1)).unwrap();
    assert!(trace.max_residual() < 1e-10, "{:?}", trace.residuals);
    assert!(trace.root_error < ROOT_TOL);
    let exact = trace.steps[0].exact.as_ref().unwrap();
    assert!(exact.c[0].iter().chain(&exact.c[1]).all(|s| s == "0"));
    assert!(verify_trace(&trace, 1e-8).unwrap().ok);
}

#[test]
fn already_reduced_inputs_give_identity() {
    let a = coeffs(&[0, 0, 0, 1, 1]);
    for level in [Level::Principal, Level::Bring] {
        let trace = tschirnhaus::reduction::reduce(&a, level, &opts(0)).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert!(trace.steps[0].description.starts_with("identity"));
        assert_eq!(trace.steps[0].b[1][0], "1e0");
        assert_eq!(trace.max_residual(), 0.0);
        assert!(verify_trace(&trace, 1e-8).unwrap().ok);
    }
}

#[test]
fn quintic_to_bring_form() {
    // x^5 + x^2 + 1 is principal but not Bring
    let a = coeffs(&[0, 0, 1, 0, 1]);
    let trace = reduce_to_bring(&a, &opts(3)).unwrap();
    assert_eq!(trace.residuals.len(), 3);
    assert!(trace.max_residual() < 1e-8);
    assert!(trace.root_error < ROOT_TOL);
    let line = trace.steps[0].line.as_ref().unwrap();
    assert_eq!(line.cubic.len(), 4);
    let report = verify_trace(&trace, 1e-8).unwrap();
    assert!(report.ok, "{report:?}");
}

#[test]
fn principal_residuals_for_every_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 3..=9 {
        let count = if n <= 6 { 50 } else { 10 };
        for t in 0..count {
            let a = random_squarefree(n, &mut rng);
            let trace = reduce_to_principal(&a, &opts(t)).unwrap();
            assert!(trace.max_residual() < 1e-8, "n={n} {:?}", trace.residuals);
            assert!(trace.root_error < ROOT_TOL, "n={n} root error {}", trace.root_error);
            let first = &trace.steps[0];
            assert!(first.b[1..].iter().any(|z| z[0] != "0" || z[1] != "0"));
        }
    }
}

#[test]
fn bring_residuals_for_degrees_five_to_nine() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 5..=9 {
        let count = if n <= 6 { 50 } else { 10 };
        for t in 0..count {
            let a = random_squarefree(n, &mut rng);
            let trace = reduce_to_bring(&a, &opts(t)).unwrap();
            assert!(trace.max_residual() < 1e-8, "n={n} {:?}", trace.residuals);
            assert!(trace.root_error < ROOT_TOL, "n={n} root error {}", trace.root_error);
        }
    }
}

#[test]
fn traces_verify_and_roundtrip_through_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [4, 5, 6] {
        let a = random_squarefree(n, &mut rng);
        let level = if n >= 5 { Level::Bring } else { Level::Principal };
        let trace = tschirnhaus::reduction::reduce(&a, level, &opts(5)).unwrap();
        let json = serde_json::to_string(&trace).unwrap();
        let back: tschirnhaus::reduction::ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, trace);
        let report = verify_trace(&back, 1e-8).unwrap();
        assert!(report.ok, "{report:?}");
    }
}

#[test]
fn principal_quartic_verifies_with_oracle() {
    let a = coeffs(&[0, 0, 0, -1]);
    let trace = reduce_to_principal(&a, &opts(0)).unwrap();
    let report = verify_trace(&trace, 1e-8).unwrap();
    assert!(report.ok, "{report:?}");
    assert_eq!(report.steps[0].oracle_agrees, Some(true));
}

#[test]
fn corrupted_b_is_flagged() {
    let a = coeffs(&[1, -2, 3, 1]);
    let trace = reduce_to_principal(&a, &opts(2)).unwrap();
    assert!(verify_trace(&trace, 1e-8).unwrap().ok);
    let mut bad = trace.clone();
    bad.steps[0].b[2][0] = "3.25".into();
    let report = verify_trace(&bad, 1e-8).unwrap();
    assert!(!report.ok);
    assert_eq!(report.flagged, vec![0]);
}

#[test]
fn same_seed_same_trace() {
    let a = coeffs(&[2, -1, 0, 3, 1]);
    let x = serde_json::to_string(&reduce_to_bring(&a, &opts(9)).unwrap()).unwrap();
    let y = serde_json::to_string(&reduce_to_bring(&a, &opts(9)).unwrap()).unwrap();
    assert_eq!(x, y);
}

#[test]
fn rescaling_b_rescales_c_by_powers() {
    let a = coeffs(&[1, 0, -3, 2, 5]);
    let trace = reduce_to_bring(&a, &opts(4)).unwrap();
    let prec = trace.precision;
    let a_hp = a.map(|x| HpComplex::from_rational(x, prec));
    let b: Vec<HpComplex> = trace.steps[0]
        .b
        .iter()
        .map(|z| HpComplex::new(Real::parse(&z[0], prec).unwrap(), Real::parse(&z[1], prec).unwrap()))
        .collect();
    let c = transform_coeffs_hp(&a_hp, &b).unwrap();
    let lambda = HpComplex::new(Real::parse("-1.5", prec).unwrap(), Real::parse("0.75", prec).unwrap());
    let scaled: Vec<HpComplex> = b.iter().map(|x| x.times(&lambda)).collect();
    let cs = transform_coeffs_hp(&a_hp, &scaled).unwrap();
    let mut power = lambda.one_like();
    let scale = c.coeffs().iter().map(HpComplex::abs_f64).fold(1.0, f64::max);
    for k in 1..=a.degree() {
        power = power.times(&lambda);
        let expect = c.get(k).times(&power);
        let lk = power.abs_f64().max(1.0);
        assert!(cs.get(k).minus(&expect).abs_f64() <= 1e-25 * scale * lk, "k={k}");
    }
    for k in 1..=3 {
        assert!(cs.get(k).abs_f64() <= 1e-8 * scale * power.abs_f64().max(1.0));
    }
}

#[test]
fn repeated_roots_and_low_degree_are_rejected() {
    // (x-1)^2 (x+2) (x^2+1)
    let a = coeffs(&[0, -2, 2, -3, 2]);
    assert!(discriminant(&a).is_zero());
    assert!(matches!(reduce_to_bring(&a, &opts(0)), Err(AlgebraError::Hypothesis(_))));
    assert!(matches!(reduce_to_bring(&coeffs(&[1, 2, 3, 4]), &opts(0)), Err(AlgebraError::InvalidArgument(_))));
    assert!(matches!(reduce_to_principal(&coeffs(&[1, 2]), &opts(0)), Err(AlgebraError::InvalidArgument(_))));
}

#[test]
fn diagonalization_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 3..=8 {
        let a = random_squarefree(n, &mut rng);
        let form = QuadricForm::new(t12_gram(&a)).unwrap();
        let d = form.diagonalize();
        let l = &d.transform;
        let m = form.dim();
        for i in 0..m {
            for j in 0..m {
                let mut acc = q(0);
                for r in 0..m {
                    for s in 0..m {
                        acc += &l[r][i] * &form.gram()[r][s] * &l[s][j];
                    }
                }
                let expect = if i == j { d.diagonal[i].clone() } else { q(0) };
                assert_eq!(acc, expect, "n={n} ({i},{j})");
            }
        }
    }
}

#[test]
fn isotropic_subspaces_are_exactly_isotropic() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 3..=9 {
        let a = random_squarefree(n, &mut rng);
        let form = QuadricForm::new(t12_gram(&a)).unwrap();
        let diag = form.diagonalize();
        let mut order: Vec<usize> = (0..form.dim()).collect();
        order.reverse();
        let flips: Vec<bool> = (0..form.dim() / 2).map(|t| t % 2 == 0).collect();
        let iso = isotropic_subspace(&form, &diag, &order, &flips).unwrap();
        assert_eq!(iso.basis.len(), form.dim() / 2);
        for (x, u) in iso.basis.iter().enumerate() {
            assert!(form.eval(u).unwrap().is_zero_elem());
            let shadow: Vec<HpComplex> = u.iter().map(|e| e.shadow(128)).collect();
            assert!(form.eval(&shadow).unwrap().abs_f64() < 1e-12);
            for v in &iso.basis[..x] {
                let sum: Vec<_> = u.iter().zip(v).map(|(p, r)| p.plus(r)).collect();
                assert!(form.eval(&sum).unwrap().is_zero_elem());
            }
        }
    }
}

#[test]
fn quintic_radical_pencil_quadric() {
    // T_12 for x^5 + a is -10a(b_1 b_4 + b_2 b_3): two hyperbolic planes
    for a in [1, -3, 7] {
        let gram = t12_gram(&Pencil::Radical.coeffs(5, &q(a)));
        let form = QuadricForm::new(gram).unwrap();
        let d = form.diagonalize();
        assert_eq!(d.diagonal.iter().filter(|x| !x.is_zero()).count(), 4);
        let iso = maximal_isotropic(&form).unwrap();
        assert_eq!(iso.basis.len(), 2);
        let line: Vec<_> =
            iso.basis[0].iter().zip(&iso.basis[1]).map(|(x, y)| x.times(&y.int_like(3)).plus(y)).collect();
        assert!(form.eval(&line).unwrap().is_zero_elem());
    }
}

#[test]
fn degenerate_quadric_is_reported() {
    let form = QuadricForm::new(vec![vec![q(1), q(0)], vec![q(0), q(0)]]).unwrap();
    let d = form.diagonalize();
    assert!(d.diagonal.iter().any(Zero::is_zero));
    assert!(matches!(maximal_isotropic(&form), Err(AlgebraError::Hypothesis(_))));
}
