//! Degree cutoffs `FW(r)` from chains of linear subspaces on hypersurfaces,
//! compared against Brauer's `(r-1)! + 1` and the classical bounds.

use crate::arith::{binomial, factorial};
use crate::error::{AlgebraError, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// `psi_0 = k`, `psi_{i+1} = ceil(psi_i + C(psi_i + d - i, psi_i) / (psi_i + 1))`, `psi_{d-1} = 2 psi_{d-2} + 1`.
pub fn psi_sequence(d: u32, k: u64) -> Result<Vec<BigUint>> {
    psi_capped(d, k, None).map(|v| v.expect("uncapped"))
}

/// As [`psi_sequence`], giving up (`None`) once `dim M_3(psi_i) + d + k + 1` exceeds `cap`.
fn psi_capped(d: u32, k: u64, cap: Option<&BigUint>) -> Result<Option<Vec<BigUint>>> {
    if d < 2 || k < 1 {
        return Err(AlgebraError::InvalidArgument("need d >= 2 and k >= 1".into()));
    }
    let mut psi = vec![BigUint::from(k)];
    for i in 0..d - 2 {
        let x = psi.last().unwrap().clone();
        if let Some(cap) = cap {
            if dim_moduli_cubics(&x) + BigUint::from(d as u64 + k + 1) > *cap {
                return Ok(None);
            }
        }
        let c = binomial_big(&(&x + (d - i)), d - i);
        let step = BigUint::from(1u32) + &x;
        psi.push(&x + Integer::div_ceil(&c, &step));
    }
    let last = psi.last().unwrap() * 2u32 + 1u32;
    psi.push(last);
    Ok(Some(psi))
}

/// `dim H_{d,N} = C(N + d, d) - 1`, hypersurfaces of degree `d` in `P^N`.
pub fn dim_hypersurfaces(d: u32, n: &BigUint) -> BigUint {
    binomial_big(&(n + d), d) - 1u32
}

/// `max(0, C(N + 3, 3) - (N + 1)^2)`, moduli of cubics in `P^N`.
pub fn dim_moduli_cubics(n: &BigUint) -> BigUint {
    let c = binomial_big(&(n + 3u32), 3);
    let sq = (n + 1u32) * (n + 1u32);
    if c > sq {
        c - sq
    } else {
        BigUint::zero()
    }
}

fn binomial_big(n: &BigUint, k: u32) -> BigUint {
    if let Some(n) = n.to_u64() {
        return binomial(n, k as u64);
    }
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
    }
    acc / factorial(k as u64)
}

/// Slack `(r + 1)(N - r) - C(d + r, r)`; every degree-`d` hypersurface in `P^N` contains an `r`-plane when it is `>= 0`.
pub fn waldron_slack(d: u32, r: impl Into<BigUint>, n: impl Into<BigUint>) -> BigInt {
    let r: BigUint = r.into();
    let n: BigUint = n.into();
    let c = binomial_big(&(&r + d), d);
    BigInt::from(&r + 1u32) * (BigInt::from(n) - BigInt::from(r)) - BigInt::from(c)
}

pub fn waldron_feasible(d: u32, r: impl Into<BigUint>, n: impl Into<BigUint>) -> bool {
    waldron_slack(d, r, n) >= BigInt::zero()
}

/// `max((d + k)!/d! + 1, dim M_3(psi_{d-2}) + d + k + 1)`.
pub fn phi(d: u32, k: u64) -> Result<BigUint> {
    phi_capped(d, k, None).map(|v| v.expect("uncapped"))
}

fn phi_capped(d: u32, k: u64, cap: Option<&BigUint>) -> Result<Option<BigUint>> {
    let falling = factorial(d as u64 + k) / factorial(d as u64) + 1u32;
    if cap.is_some_and(|c| falling > *c) {
        return Ok(None);
    }
    let Some(psi) = psi_capped(d, k, cap)? else {
        return Ok(None);
    };
    let moduli = dim_moduli_cubics(&psi[d as usize - 2]) + BigUint::from(d as u64 + k + 1);
    Ok(Some(falling.max(moduli)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cutoff {
    pub value: BigUint,
    /// `(d, k)` attaining the minimum; `None` for `r <= 3`.
    pub minimizer: Option<(u32, u64)>,
}

/// `FW(r) = r + 1` for `r <= 3`, else `2 floor(min_{d + k + 1 = r} Phi(d, k) / 2) + 1`; ties go to the smaller `d`.
pub fn fw(r: u64) -> Result<Cutoff> {
    if r < 1 {
        return Err(AlgebraError::InvalidArgument("r must be >= 1".into()));
    }
    if r <= 3 {
        return Ok(Cutoff { value: BigUint::from(r + 1), minimizer: None });
    }
    let mut best: Option<(BigUint, (u32, u64))> = None;
    for d in 2..=(r - 2) as u32 {
        let k = r - 1 - d as u64;
        if let Some(v) = phi_capped(d, k, best.as_ref().map(|b| &b.0))? {
            if best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, (d, k)));
            }
        }
    }
    let (min, arg) = best.expect("r >= 4 has at least one (d, k)");
    Ok(Cutoff { value: (min / 2u32) * 2u32 + 1u32, minimizer: Some(arg) })
}

/// `(r - 1)! + 1`.
pub fn brauer(r: u64) -> Result<BigUint> {
    if r < 1 {
        return Err(AlgebraError::InvalidArgument("r must be >= 1".into()));
    }
    Ok(factorial(r - 1) + 1u32)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PriorBound {
    /// As listed: the classical results for `r <= 4` are stated as `RD(n) <= n - r` up to this degree.
    pub listed: String,
    /// The matching cutoff on the same scale as `FW`.
    pub cutoff: String,
    pub source: &'static str,
}

/// Best bound known before `FW`: a fixed table for `r <= 6`, Brauer above.
pub fn prior_bound(r: u64) -> Result<PriorBound> {
    let fixed = |listed: u64, cutoff: u64, source| PriorBound {
        listed: listed.to_string(),
        cutoff: cutoff.to_string(),
        source,
    };
    Ok(match r {
        2 => fixed(2, 3, "Babylonians"),
        3 => fixed(3, 4, "Ferrari"),
        4 => fixed(4, 5, "Bring"),
        5 => fixed(9, 9, "Segre"),
        6 => fixed(44, 44, "Sylvester"),
        r if r >= 7 => {
            let b = brauer(r)?.to_string();
            PriorBound { listed: b.clone(), cutoff: b, source: "Brauer" }
        }
        _ => return Err(AlgebraError::InvalidArgument("prior bounds start at r = 2".into())),
    })
}

/// Hamilton's cutoffs `H(4..=9)` and Sylvester's sharpening `S(4..=7)`.
pub struct ReferenceConstants;

impl ReferenceConstants {
    pub const HAMILTON: [(u32, u64); 6] = [(4, 5), (5, 11), (6, 47), (7, 923), (8, 409619), (9, 83763206255)];
    pub const SYLVESTER: [(u32, u64); 4] = [(4, 5), (5, 10), (6, 44), (7, 905)];
}

/// Rounds to 8 significant digits, then truncates to two decimals.
/// Whole numbers print without decimals. Expects `x > 0`.
pub fn ratio_2dp(x: &BigRational) -> String {
    let ten = BigRational::from_integer(10.into());
    let mut shift = 0i32;
    let mut y = x.clone();
    while y >= BigRational::from_integer(100_000_000.into()) {
        y /= &ten;
        shift -= 1;
    }
    while y < BigRational::from_integer(10_000_000.into()) {
        y *= &ten;
        shift += 1;
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut rounded = BigRational::from_integer((y + half).floor().to_integer());
    for _ in 0..shift.abs() {
        rounded = if shift > 0 { rounded / &ten } else { rounded * &ten };
    }
    let hundredths = (rounded * BigRational::from_integer(100.into())).floor().to_integer();
    let (whole, frac) = hundredths.div_rem(&BigInt::from(100));
    if frac.is_zero() {
        whole.to_string()
    } else {
        format!("{whole}.{:02}", frac)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsRow {
    pub r: u64,
    pub fw: String,
    pub d: Option<u32>,
    pub k: Option<u64>,
    pub brauer: String,
    pub prior: String,
    pub prior_cutoff: String,
    pub prior_source: &'static str,
    /// Exact `prior_cutoff / fw`.
    pub ratio: String,
    pub ratio_2dp: String,
}

pub fn bounds_row(r: u64) -> Result<BoundsRow> {
    let cut = fw(r)?;
    let prior = prior_bound(r)?;
    let num: BigInt = prior.cutoff.parse().expect("decimal");
    let ratio = BigRational::new(num, BigInt::from(cut.value.clone()));
    Ok(BoundsRow {
        r,
        fw: cut.value.to_string(),
        d: cut.minimizer.map(|m| m.0),
        k: cut.minimizer.map(|m| m.1),
        brauer: brauer(r)?.to_string(),
        prior: prior.listed,
        prior_cutoff: prior.cutoff,
        prior_source: prior.source,
        ratio: ratio.to_string(),
        ratio_2dp: ratio_2dp(&ratio),
    })
}

pub fn bounds_table(r_max: u64) -> Result<Vec<BoundsRow>> {
    if r_max < 2 {
        return Err(AlgebraError::InvalidArgument("need max r >= 2".into()));
    }
    (2..=r_max).map(bounds_row).collect()
}

pub fn table_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("r,fw,prior,prior_source,ratio_2dp,d,k\n");
    for row in rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        out += &format!(
            "{},{},{},{},{},{},{}\n",
            row.r,
            row.fw,
            row.prior,
            row.prior_source,
            row.ratio_2dp,
            opt(row.d.map(|d| d.to_string())),
            opt(row.k.map(|k| k.to_string()))
        );
    }
    out
}

pub fn table_markdown(rows: &[BoundsRow]) -> String {
    let mut out = String::from("| r | FW(r) | prior | source | prior/FW | (d,k) |\n|---|---|---|---|---|---|\n");
    for row in rows {
        // factorial notation once the numbers stop being readable
        let prior =
            if row.prior_source == "Brauer" && row.r >= 13 { format!("{}!+1", row.r - 1) } else { row.prior.clone() };
        let dk = match (row.d, row.k) {
            (Some(d), Some(k)) => format!("({d},{k})"),
            _ => String::new(),
        };
        out += &format!("| {} | {} | {} | {} | {} | {} |\n", row.r, row.fw, prior, row.prior_source, row.ratio_2dp, dk);
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LemmaDimCheck {
    pub d: u32,
    pub k: u64,
    pub moduli: String,
    /// `dim M_3(psi_{d-2}) >= dim H_4(psi_{d-3})` (vacuous for `d = 2`), the form used in the proof.
    pub first: bool,
    /// The first inequality with the maximum over `0 <= i <= d - 3` as stated.
    pub first_as_stated: bool,
    pub second_lhs: String,
    pub second_rhs: String,
    /// `dim M_3(psi_{d-2}) + d + k + 1 >= psi_{d-1} + 2`.
    pub second: bool,
    pub holds: bool,
}

pub fn check_lemma_dim(d: u32, k: u64) -> Result<LemmaDimCheck> {
    let psi = psi_sequence(d, k)?;
    let du = d as usize;
    let moduli = dim_moduli_cubics(&psi[du - 2]);
    let first = d < 3 || moduli >= dim_hypersurfaces(4, &psi[du - 3]);
    let first_as_stated = (0..=du.saturating_sub(3))
        .take_while(|_| d >= 3)
        .all(|i| moduli >= dim_hypersurfaces(d - i as u32, &psi[i + 1]));
    let lhs = &moduli + BigUint::from(d as u64 + k + 1);
    let rhs = &psi[du - 1] + 2u32;
    let second = lhs >= rhs;
    Ok(LemmaDimCheck {
        d,
        k,
        moduli: moduli.to_string(),
        first,
        first_as_stated,
        second_lhs: lhs.to_string(),
        second_rhs: rhs.to_string(),
        second,
        holds: first && second,
    })
}
