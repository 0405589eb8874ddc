use num_bigint::BigUint;
use tschirnhaus::bounds::*;

const FW_TABLE: [u64; 14] = [3, 4, 5, 9, 41, 121, 841, 6721, 60481, 604801, 6652801, 78485043, 320082459, 3632428801];

#[test]
fn table_matches_reference() {
    let rows = bounds_table(15).unwrap();
    let fws: Vec<String> = rows.iter().map(|r| r.fw.clone()).collect();
    assert_eq!(fws, FW_TABLE.iter().map(u64::to_string).collect::<Vec<_>>());
    let dk: Vec<(u32, u64)> = rows.iter().filter_map(|r| Some((r.d?, r.k?))).collect();
    assert_eq!(
        dk,
        vec![(2, 1), (3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8), (4, 8), (4, 9), (4, 10)]
    );
    let ratios: Vec<&str> = rows.iter().map(|r| r.ratio_2dp.as_str()).collect();
    assert_eq!(
        ratios,
        ["1", "1", "1", "1", "1.07", "5.95", "5.99", "5.99", "5.99", "5.99", "5.99", "6.10", "19.45", "24"]
    );
    let priors: Vec<&str> = rows.iter().map(|r| r.prior.as_str()).collect();
    assert_eq!(&priors[..6], ["2", "3", "4", "9", "44", "721"]);
    assert_eq!(rows[13].prior, "87178291201");
    let md = table_markdown(&rows);
    assert!(md.contains("| 13 | 78485043 | 12!+1 | Brauer | 6.10 | (4,8) |"));
    let csv = table_csv(&rows);
    assert!(csv.starts_with("r,fw,prior,prior_source,ratio_2dp,d,k\n2,3,2,Babylonians,1,,\n"));
    assert_eq!(csv.lines().count(), 15);
}

#[test]
fn worked_example() {
    assert_eq!(phi(3, 1).unwrap(), BigUint::from(9u32));
    let c = fw(5).unwrap();
    assert_eq!((c.value, c.minimizer), (BigUint::from(9u32), Some((3, 1))));
    assert_eq!(fw(15).unwrap().minimizer, Some((4, 10)));
}

#[test]
fn brauer_values() {
    assert_eq!(brauer(7).unwrap(), BigUint::from(721u32));
    assert_eq!(brauer(2).unwrap(), BigUint::from(2u32));
    assert_eq!(brauer(15).unwrap(), BigUint::from(87178291201u64));
}

#[test]
fn dimension_formulas() {
    let u = |x: u64| BigUint::from(x);
    assert_eq!(dim_hypersurfaces(3, &u(3)), u(19));
    assert_eq!(dim_hypersurfaces(1, &u(7)), u(7));
    assert_eq!(dim_hypersurfaces(2, &u(3)), u(9));
    assert_eq!(dim_moduli_cubics(&u(3)), u(4));
    assert_eq!(dim_moduli_cubics(&u(1)), u(0));
    assert_eq!(dim_moduli_cubics(&u(6)), u(35));
}

#[test]
fn waldron_examples() {
    assert!(waldron_feasible(3, 1u32, 3u32));
    assert_eq!(waldron_slack(3, 1u32, 3u32), 0.into());
    assert!(!waldron_feasible(3, 1u32, 2u32));
    let psi = psi_sequence(3, 2).unwrap();
    assert!(waldron_feasible(3, 2u32, psi[1].clone()));
}

/// Each psi step is the least N for which Waldron guarantees the plane.
#[test]
fn psi_steps_are_waldron_minimal() {
    for d in 3..=6u32 {
        for k in 1..=6u64 {
            let psi = psi_sequence(d, k).unwrap();
            for i in 0..(d - 2) as usize {
                let (r, n) = (psi[i].clone(), psi[i + 1].clone());
                assert!(waldron_feasible(d - i as u32, r.clone(), n.clone()), "d={d} k={k} i={i}");
                assert!(!waldron_feasible(d - i as u32, r, n - 1u32), "d={d} k={k} i={i}");
            }
        }
    }
}

/// `FW(r) = r + 1` for `r <= 3` sits one above `(r-1)! + 1 = r`: the cutoff and the
/// listed classical degree differ by one there, and the table treats them as equal.
#[test]
fn small_r_cutoffs_match_classical_results() {
    for r in 2..=3 {
        assert_eq!(fw(r).unwrap().value, brauer(r).unwrap() + 1u32);
        assert_eq!(prior_bound(r).unwrap().cutoff, fw(r).unwrap().value.to_string());
    }
}

#[test]
fn fw_monotone_odd_and_below_brauer() {
    let mut prev = fw(2).unwrap().value;
    for r in 3..=30 {
        let v = fw(r).unwrap().value;
        assert!(v > prev, "r = {r}");
        if r >= 4 {
            assert!(v <= brauer(r).unwrap(), "r = {r}");
        }
        if r >= 4 {
            assert!(v.bit(0), "r = {r}");
        }
        prev = v;
    }
}

#[test]
fn lemma_dim_worked_cases() {
    let c = check_lemma_dim(3, 1).unwrap();
    assert!(c.first && c.second);
    assert_eq!(c.moduli, "4");
    // the first inequality with the stated range includes cubics themselves and never holds
    assert!(!c.first_as_stated);
    assert!(check_lemma_dim(2, 1).unwrap().first);
}

/// The second inequality at (2,1) evaluates to 4 >= 5 and at (2,2) to 6 >= 7.
#[test]
fn lemma_dim_sweep() {
    let mut failures = Vec::new();
    for d in 2..=6 {
        for k in 1..=12 {
            let c = check_lemma_dim(d, k).unwrap();
            if !c.holds {
                failures.push((d, k, c.second_lhs, c.second_rhs));
            }
        }
    }
    assert!(failures.is_empty(), "failing (d, k, lhs, rhs): {failures:?}");
}
