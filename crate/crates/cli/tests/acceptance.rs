//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any criterion fails.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};
use tschirnhaus::bounds::{brauer, check_lemma_dim, fw, phi};
use tschirnhaus::finite_field::FiniteField;
use tschirnhaus::forms::{
    quadric_closed_form, radical_specialize, restrict_to_chart, transform_coeffs, transform_coeffs_oracle,
    tschirnhaus_form, CompleteIntersectionSpec, Pencil, DEFAULT_ORACLE_CAP,
};
use tschirnhaus::reduction::{reduce_to_bring, reduce_to_principal, ReductionOptions};
use tschirnhaus::smoothness::{brute_force_smooth, orbit_certificate, DEFAULT_POINT_BUDGET};
use tschirnhaus::symmetric::{coeffs_from_power_sums, discriminant, power_sums, CoeffVector};

const RESIDUAL_TOL: f64 = 1e-8;
const ROOT_TOL: f64 = 1e-6;
const TABLE_TIME: Duration = Duration::from_secs(1);
const ORACLE_TIME: Duration = Duration::from_secs(30);
const SMOOTHNESS_TIME: Duration = Duration::from_secs(120);
const REDUCTION_TIME: Duration = Duration::from_secs(120);

const FW_TABLE: [&str; 14] = [
    "3",
    "4",
    "5",
    "9",
    "41",
    "121",
    "841",
    "6721",
    "60481",
    "604801",
    "6652801",
    "78485043",
    "320082459",
    "3632428801",
];
const MINIMIZERS: [(u32, u64); 11] =
    [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8), (4, 8), (4, 9), (4, 10)];
/// Rows r = 5..15; the run of 5.99 covers r = 8..12.
const RATIOS: [&str; 11] = ["1", "1.07", "5.95", "5.99", "5.99", "5.99", "5.99", "5.99", "6.10", "19.45", "24"];

struct Verdict {
    ok: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Verdict);

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn tsch(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tsch")).args(args).output().expect("run tsch")
}

fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

fn table_fidelity() -> Verdict {
    let start = Instant::now();
    let out = tsch(&["bounds", "table", "--max-r", "15", "--format", "csv"]);
    let elapsed = start.elapsed();
    if !out.status.success() {
        return verdict(false, format!("exit status {}", out.status));
    }
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let fws: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    let minimizers: Vec<String> = rows[3..].iter().map(|r| format!("({},{})", r[5], r[6])).collect();
    let expected_min: Vec<String> = MINIMIZERS.iter().map(|(d, k)| format!("({d},{k})")).collect();
    let ratios: Vec<&str> = rows[3..].iter().map(|r| r[4]).collect();
    let ok =
        rows.len() == 14 && fws == FW_TABLE && minimizers == expected_min && ratios == RATIOS && elapsed < TABLE_TIME;
    verdict(ok, format!("14 rows r=2..15, FW, minimizers and 2-dp ratios exact, {elapsed:.2?}"))
}

fn worked_example() -> Verdict {
    let phi31 = phi(3, 1).unwrap();
    let fw5 = fw(5).unwrap();
    let ok = phi31 == BigUint::from(9u32) && fw5.value == BigUint::from(9u32) && fw5.minimizer == Some((3, 1));
    verdict(ok, format!("Phi(3,1) = {phi31}, FW(5) = {} at {:?}", fw5.value, fw5.minimizer))
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    for n in 2..=6 {
        for _ in 0..200 {
            let a = CoeffVector::new((0..n).map(|_| rational(&mut rng, 20, 6)).collect()).unwrap();
            let b: Vec<BigRational> = (0..n).map(|_| rational(&mut rng, 20, 6)).collect();
            if transform_coeffs(&a, &b).unwrap() != transform_coeffs_oracle(&a, &b, DEFAULT_ORACLE_CAP).unwrap() {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches == 0 && elapsed < ORACLE_TIME,
        format!("1000 instances n=2..6, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn newton_roundtrip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let mut mismatches = 0;
    for n in 1..=8 {
        for _ in 0..100 {
            let a = CoeffVector::new((0..n).map(|_| rational(&mut rng, 50, 12)).collect()).unwrap();
            let p = power_sums(&a, n);
            if coeffs_from_power_sums(&p.as_slice()[1..]).unwrap() != a {
                mismatches += 1;
            }
        }
    }
    verdict(mismatches == 0, format!("800 instances n=1..8, {mismatches} mismatches"))
}

fn closed_forms() -> Verdict {
    let mut bad = Vec::new();
    for n in 4..=10 {
        let t2 = tschirnhaus_form(n, 2).unwrap();
        for pencil in [Pencil::Radical, Pencil::RadicalLinear] {
            let restricted = restrict_to_chart(&radical_specialize(&t2, pencil).unwrap(), n, pencil).unwrap();
            if restricted != quadric_closed_form(n, pencil).unwrap() {
                bad.push((n, pencil.name()));
            }
        }
    }
    verdict(bad.is_empty(), format!("n=4..10 on both pencils, mismatches {bad:?}"))
}

fn smoothness() -> Verdict {
    let start = Instant::now();
    let spec = CompleteIntersectionSpec::new(5, vec![1, 2], false).unwrap();
    let f11 = std::sync::Arc::new(FiniteField::new(11, 1).unwrap());
    let one = f11.one();
    let quintic = brute_force_smooth(&spec, Pencil::Radical, f11, &one, DEFAULT_POINT_BUDGET).unwrap();

    let cert = orbit_certificate(9, 2, 1).unwrap();
    let orbits: Vec<Vec<u64>> = cert.orbits.iter().map(|o| o.elements.clone()).collect();
    let orbits_ok = orbits == vec![vec![1, 5, 7, 8, 4, 2], vec![3, 6]];
    let witness_ok = cert.verify().is_ok() && cert.bound_n == 121;

    // (4,2,1) is the smallest instance whose witness field fits the point budget
    let small = orbit_certificate(4, 2, 1).unwrap();
    let field = small.field.clone().unwrap();
    let check = brute_force_smooth(&small.spec(), small.pencil(), field, &small.witness, DEFAULT_POINT_BUDGET).unwrap();
    let elapsed = start.elapsed();
    let ok = quintic.smooth && orbits_ok && witness_ok && check.smooth && elapsed < SMOOTHNESS_TIME;
    verdict(
        ok,
        format!(
            "F_11 quintic: {} singular of {} on variety; (9,2,1) orbits {orbits:?}, N = {}, witness order N in GF(2^{}); \
             (4,2,1) witness: {} points, {} on variety, {} singular; {elapsed:.2?}",
            quintic.singular_count,
            quintic.points_on_variety,
            cert.bound_n,
            cert.witness_degree,
            check.points_checked,
            check.points_on_variety,
            check.singular_count
        ),
    )
}

fn random_squarefree(n: usize, rng: &mut ChaCha8Rng) -> CoeffVector<BigRational> {
    loop {
        let a = CoeffVector::new((0..n).map(|_| BigRational::from_integer(rng.gen_range(-9..=9).into())).collect())
            .unwrap();
        if !discriminant(&a).is_zero() {
            return a;
        }
    }
}

fn reduction() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let (mut worst_res, mut worst_root, mut failures) = (0f64, 0f64, 0);
    for (n, bring) in [(5, true), (9, false)] {
        for seed in 0..50 {
            let a = random_squarefree(n, &mut rng);
            let opts = ReductionOptions { seed, ..ReductionOptions::default() };
            let trace = if bring { reduce_to_bring(&a, &opts) } else { reduce_to_principal(&a, &opts) };
            match trace {
                Ok(t) => {
                    worst_res = worst_res.max(t.max_residual());
                    worst_root = worst_root.max(t.root_error);
                    if t.max_residual() >= RESIDUAL_TOL || t.root_error >= ROOT_TOL {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures == 0 && elapsed < REDUCTION_TIME,
        format!(
            "50 Bring quintics + 50 principal nonics, {failures} failures, max residual {worst_res:.1e}, \
             max root error {worst_root:.1e}, {elapsed:.2?}"
        ),
    )
}

fn inequality_sweep() -> Verdict {
    let mut failing = Vec::new();
    for d in 2..=6 {
        for k in 1..=12 {
            let c = check_lemma_dim(d, k).unwrap();
            if !c.holds {
                failing.push(format!("(d={d},k={k}: {} >= {})", c.second_lhs, c.second_rhs));
            }
        }
    }
    let mut monotone = true;
    let mut below = true;
    let mut prev = fw(2).unwrap().value;
    for r in 3..=30 {
        let v = fw(r).unwrap().value;
        monotone &= v > prev;
        // below r = 4 the classical cutoffs are r + 1 while (r-1)! + 1 <= r
        if r >= 4 {
            below &= v <= brauer(r).unwrap();
        }
        prev = v;
    }
    verdict(
        failing.is_empty() && monotone && below,
        format!(
            "FW monotone r=2..30: {monotone}; FW <= B(r) for 4<=r<=30: {below}; dimension lemma fails at {}",
            if failing.is_empty() { "none".to_string() } else { failing.join(" ") }
        ),
    )
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let criteria: [Criterion; 8] = [
        ("table fidelity", table_fidelity),
        ("worked example", worked_example),
        ("oracle equivalence", oracle_equivalence),
        ("newton roundtrip", newton_roundtrip),
        ("closed-form specialization", closed_forms),
        ("smoothness", smoothness),
        ("reduction", reduction),
        ("inequality sweep", inequality_sweep),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.ok);
        println!("{} {}. {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
