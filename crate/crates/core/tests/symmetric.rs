use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use tschirnhaus::linalg::determinant;
use tschirnhaus::numeric::roots_c64;
use tschirnhaus::ring::rational_to_f64;
use tschirnhaus::symmetric::{
    coeffs_from_power_sums, discriminant, hankel, power_sums, power_sums_from_roots, CoeffVector,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn coeff_vector(max_n: usize) -> impl Strategy<Value = CoeffVector<BigRational>> {
    prop::collection::vec(rational(), 1..=max_n).prop_map(|v| CoeffVector::new(v).unwrap())
}

#[test]
fn quadratic_with_roots_one_and_two() {
    let a = CoeffVector::new(vec![q(-3), q(2)]).unwrap();
    assert_eq!(power_sums(&a, 3).as_slice(), &[q(2), q(3), q(5), q(9)]);
    assert_eq!(coeffs_from_power_sums(&[q(3), q(5)]).unwrap(), a);
}

#[test]
fn zero_polynomial_and_zero_power_sums() {
    let a = CoeffVector::new(vec![q(0); 4]).unwrap();
    let p = power_sums(&a, 9);
    assert_eq!(p.get(0), &q(4));
    assert!((1..=9).all(|k| p.get(k) == &q(0)));
    assert_eq!(coeffs_from_power_sums(&vec![q(0); 4]).unwrap(), a);
}

#[test]
fn quintic_radical_pencil_power_sums() {
    for a in [1, -2, 7] {
        let cv = CoeffVector::new(vec![q(0), q(0), q(0), q(0), q(a)]).unwrap();
        let p = power_sums(&cv, 20);
        for k in 1..=20 {
            if k % 5 != 0 {
                assert_eq!(p.get(k), &q(0), "k={k}");
            }
        }
        assert_eq!(p.get(5), &q(-5 * a));
        assert_eq!(p.get(10), &q(5 * a * a));
    }
}

#[test]
fn power_sums_of_explicit_roots() {
    let one = Complex64::new(1.0, 0.0);
    assert_eq!(power_sums_from_roots(&[one, 2.0 * one], 2), vec![2.0 * one, 3.0 * one, 5.0 * one]);
    let zeros = vec![Complex64::new(0.0, 0.0); 3];
    let p = power_sums_from_roots(&zeros, 3);
    assert_eq!(p[0], 3.0 * one);
    assert!(p[1..].iter().all(|z| z.norm() == 0.0));
    let fifth: Vec<Complex64> =
        (0..5).map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * (2 * k + 1) as f64 / 5.0)).collect();
    let p = power_sums_from_roots(&fifth, 5);
    let expect = [5.0, 0.0, 0.0, 0.0, 0.0, -5.0];
    for (x, e) in p.iter().zip(expect) {
        assert!((x - e).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn newton_roundtrip_degree_up_to_eight(a in coeff_vector(8)) {
        let n = a.degree();
        let p = power_sums(&a, n);
        prop_assert_eq!(coeffs_from_power_sums(&p.as_slice()[1..]).unwrap(), a);
    }

    #[test]
    fn weighted_scaling(a in coeff_vector(6), lambda in rational()) {
        let n = a.degree();
        let scaled = CoeffVector::new(
            a.coeffs().iter().enumerate().map(|(k, x)| x * num_traits::pow(lambda.clone(), k + 1)).collect(),
        ).unwrap();
        let p = power_sums(&a, 2 * n);
        let ps = power_sums(&scaled, 2 * n);
        for k in 0..=2 * n {
            prop_assert_eq!(ps.get(k), &(p.get(k) * num_traits::pow(lambda.clone(), k)));
        }
    }

    #[test]
    fn power_sums_match_numeric_roots(v in prop::collection::vec(-6i64..7, 1..=6)) {
        let a = CoeffVector::new(v.iter().map(|&x| q(x)).collect()).unwrap();
        let n = a.degree();
        let roots = roots_c64(&a.monic_coeffs().iter().map(|x| Complex64::new(rational_to_f64(x), 0.0)).collect::<Vec<_>>());
        let numeric = power_sums_from_roots(&roots, 2 * n);
        let exact = power_sums(&a, 2 * n);
        for k in 0..=2 * n {
            let e = rational_to_f64(exact.get(k));
            // relative to the size of the k-th power sum's terms
            let scale = roots.iter().map(|z| z.norm().powi(k as i32)).sum::<f64>().max(1.0);
            prop_assert!((numeric[k] - e).norm() < 1e-8 * scale, "k={} {} vs {}", k, numeric[k], e);
        }
    }

    #[test]
    fn hankel_determinant_is_the_discriminant(a in coeff_vector(5)) {
        let p = power_sums(&a, 2 * a.degree());
        prop_assert_eq!(determinant(&hankel(&p)), discriminant(&a));
    }
}

#[test]
fn newton_roundtrip_hundred_per_degree() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for n in 1..=8 {
        for _ in 0..100 {
            let a = CoeffVector::new(
                (0..n)
                    .map(|_| BigRational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=12).into()))
                    .collect(),
            )
            .unwrap();
            let p = power_sums(&a, n);
            assert_eq!(coeffs_from_power_sums(&p.as_slice()[1..]).unwrap(), a);
        }
    }
}
