//! Smoothness of Tschirnhaus complete intersections over finite fields.
//!
//! Two independent routes: the orbit certificate (a primitive `N`-th root of
//! unity `a` for which the reduced Jacobian has full rank everywhere), and
//! exhaustive enumeration of projective points with a Jacobian rank test.
//!
//! Forms are restricted to a pencil over `ZZ[a]`, divided by their integer
//! content, differentiated, and each Jacobian row is again divided by its
//! content before reduction mod `p`. This is the integral model whose
//! reduction the certificate argument uses.

use crate::arith::{multiplicative_order, prime_divisors};
use crate::error::{AlgebraError, Result};
use crate::finite_field::{FfElem, FiniteField};
use crate::forms::{pencil_form, t12_gram, CompleteIntersectionSpec, Pencil};
use crate::linalg::determinant;
use crate::poly::{MultiPoly, Substitution};
use crate::scalar::{RingKind, Scalar};
use crate::symmetric::{discriminant, CoeffVector};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// `F_q` with log/antilog tables; elements are encoded by [`FiniteField::index_of`].
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    m: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl SmallField {
    pub const MAX_ORDER: u64 = 1 << 26;

    pub fn new(field: &FiniteField) -> Result<Self> {
        let q = field.order_u64().filter(|&q| q <= Self::MAX_ORDER).ok_or_else(|| {
            AlgebraError::InvalidArgument(format!("{} is too large for table arithmetic", field.name()))
        })?;
        let order = q - 1;
        let primes = prime_divisors(order.max(1));
        let one = field.one();
        let mut g = None;
        for t in 1..q {
            let x = field.element_from_index(t);
            if order == 1 || primes.iter().all(|&l| field.pow(&x, &BigUint::from(order / l)) != one) {
                g = Some(x);
                break;
            }
        }
        let g = g.expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = one;
        for (k, slot) in exp.iter_mut().enumerate() {
            let idx = field.index_of(&x) as u32;
            *slot = idx;
            log[idx as usize] = k as u32;
            x = field.mul(&x, &g);
        }
        Ok(SmallField { p: field.characteristic() as u32, m: field.degree(), q: q as u32, exp, log })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.m {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.m == 1 {
            return self.p - a;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.m {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 * e as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize] % n) % n) as usize]
    }

    /// Rank of a small dense matrix.
    pub fn rank(&self, rows: &mut [Vec<u32>]) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = self.neg(self.mul(rows[r][c], inv));
                    for k in c..cols {
                        let t = self.mul(f, rows[rank][k]);
                        rows[r][k] = self.add(rows[r][k], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A polynomial over a [`SmallField`] in the chart coordinates.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(u32, Vec<u32>)>,
}

impl CompiledPoly {
    /// `poly` is integral in `(vars..., a)`; `a` is substituted.
    fn compile(poly: &MultiPoly, field: &FiniteField, small: &SmallField, a: &FfElem) -> Result<Self> {
        let nb = poly.vars().len() - 1;
        let mut terms: Vec<(u32, Vec<u32>)> = Vec::new();
        for (mono, c) in poly.terms() {
            let Scalar::Int(c) = c else {
                return Err(AlgebraError::InvalidArgument("expected an integral polynomial".into()));
            };
            let mut v = field.from_bigint(c);
            v = field.mul(&v, &field.pow(a, &BigUint::from(mono.0[nb])));
            let code = field.index_of(&v) as u32;
            if code == 0 {
                continue;
            }
            let exps = mono.0[..nb].to_vec();
            match terms.iter_mut().find(|(_, e)| *e == exps) {
                Some((acc, _)) => *acc = small.add(*acc, code),
                None => terms.push((code, exps)),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        Ok(CompiledPoly { terms })
    }

    #[inline]
    fn eval(&self, f: &SmallField, x: &[u32]) -> u32 {
        let mut acc = 0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(exps) {
                if e > 0 {
                    t = f.mul(t, f.pow(*xi, e));
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The integral model of a complete intersection on a pencil, in chart coordinates.
#[derive(Clone, Debug)]
pub struct ChartSystem {
    /// Projective coordinates; every form lives in these plus a trailing `a`.
    pub coords: Vec<String>,
    /// Coordinate removed by solving the linear form, if any.
    pub eliminated: Option<String>,
    /// Content-normalized forms.
    pub forms: Vec<MultiPoly>,
    /// Content-normalized Jacobian rows, one per form.
    pub jacobian: Vec<Vec<MultiPoly>>,
}

fn primitive_rows(rows: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    let mut g = BigInt::zero();
    for r in &rows {
        g = g.gcd(&r.content()?);
    }
    if g.is_zero() || g.is_one() {
        return Ok(rows);
    }
    let inv = Scalar::Rat(BigRational::new(BigInt::one(), g));
    rows.iter().map(|r| r.change_ring(&RingKind::Rationals)?.scale(&inv)?.change_ring(&RingKind::Integers)).collect()
}

/// Builds the chart model. The linear form `c a^e b_k`, when present as a single
/// term that stays nonzero mod `p` (and `a != 0` if `e > 0`), eliminates `b_k`.
pub fn chart_system(spec: &CompleteIntersectionSpec, pencil: Pencil, p: u64, a_is_zero: bool) -> Result<ChartSystem> {
    let n = spec.n;
    if pencil == Pencil::RadicalLinear && n < 3 {
        return Err(AlgebraError::InvalidArgument("the pencil x^n + a x needs n >= 3".into()));
    }
    let mut forms: Vec<MultiPoly> = Vec::new();
    for &i in &spec.degrees {
        let mut f = pencil_form(n, i, pencil)?;
        if spec.reduced {
            f = f.specialize(&[("b0", Substitution::Value(RingKind::Integers.zero()))])?;
        }
        forms.push(f);
    }
    let mut eliminated = None;
    if spec.degrees[0] == 1 && forms[0].num_terms() == 1 {
        let (mono, c) = forms[0].terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let nb = forms[0].vars().len() - 1;
        let a_exp = mono.0[nb];
        let c_mod_p = match &c {
            Scalar::Int(c) => !(c % BigInt::from(p)).is_zero(),
            _ => false,
        };
        let k = (0..nb).find(|&j| mono.0[j] == 1);
        if let (true, Some(k), true) = (c_mod_p, k, a_exp == 0 || !a_is_zero) {
            let name = forms[0].vars()[k].clone();
            forms.remove(0);
            forms = forms
                .into_iter()
                .map(|f| f.specialize(&[(name.as_str(), Substitution::Value(RingKind::Integers.zero()))]))
                .collect::<Result<_>>()?;
            eliminated = Some(name);
        }
    }
    let vars: Vec<String> = match forms.first() {
        Some(f) => f.vars().to_vec(),
        None => return Err(AlgebraError::InvalidArgument("no forms left after elimination".into())),
    };
    let coords: Vec<String> = vars[..vars.len() - 1].to_vec();
    let forms: Vec<MultiPoly> = forms.iter().map(MultiPoly::primitive_part).collect::<Result<_>>()?;
    let jacobian = forms
        .iter()
        .map(|f| primitive_rows(coords.iter().map(|v| f.partial(v)).collect::<Result<Vec<_>>>()?))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartSystem { coords, eliminated, forms, jacobian })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FieldInfo {
    pub name: String,
    pub p: u64,
    pub m: u32,
    /// Monic modulus, low degree first.
    pub modulus: Vec<u64>,
}

impl FieldInfo {
    pub fn of(f: &FiniteField) -> Self {
        FieldInfo { name: f.name(), p: f.characteristic(), m: f.degree(), modulus: f.modulus().to_vec() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub reduced: bool,
    pub pencil: String,
    pub field: FieldInfo,
    pub a: String,
    pub coords: Vec<String>,
    pub eliminated: Option<String>,
    pub forms: Vec<String>,
    pub points_checked: u64,
    pub points_on_variety: u64,
    pub singular_count: u64,
    /// First singular points found, in enumeration order (at most [`SINGULAR_LIST_CAP`]).
    pub singular_points: Vec<Vec<String>>,
    pub smooth: bool,
}

pub const SINGULAR_LIST_CAP: usize = 1000;

/// Number of points of `P^dim(F_q)`, if it fits in `u64`.
pub fn projective_point_count(q: u64, dim: u32) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..=dim {
        total = total.checked_add(pw)?;
        pw = pw.checked_mul(q)?;
    }
    Some(total)
}

/// The `idx`-th point of `P^{len-1}(F_q)`, leading nonzero coordinate `1`.
fn point_at(idx: u64, len: usize, q: u64, out: &mut [u32]) {
    let mut rest = idx;
    let mut lead = 0;
    let mut block = q.pow((len - 1) as u32);
    while rest >= block {
        rest -= block;
        lead += 1;
        block /= q;
    }
    for x in out.iter_mut() {
        *x = 0;
    }
    out[lead] = 1;
    for slot in out[lead + 1..].iter_mut().rev() {
        *slot = (rest % q) as u32;
        rest /= q;
    }
}

#[derive(Default)]
struct ChunkTally {
    on_variety: u64,
    singular: u64,
    points: Vec<Vec<u32>>,
}

/// Exhaustive Jacobian test of the complete intersection on a pencil at the parameter `a`.
pub fn brute_force_smooth(
    spec: &CompleteIntersectionSpec,
    pencil: Pencil,
    field: Arc<FiniteField>,
    a: &FfElem,
    budget: u64,
) -> Result<SmoothnessReport> {
    let p = field.characteristic();
    let system = chart_system(spec, pencil, p, field.is_zero(a))?;
    let small = SmallField::new(&field)?;
    let q = small.order() as u64;
    let len = system.coords.len();
    let total = projective_point_count(q, (len - 1) as u32);
    let total = match total {
        Some(t) if t <= budget => t,
        _ => return Err(AlgebraError::BudgetExceeded { points: format!("{q}^{}", len), budget }),
    };
    let forms: Vec<CompiledPoly> =
        system.forms.iter().map(|f| CompiledPoly::compile(f, &field, &small, a)).collect::<Result<_>>()?;
    let jac: Vec<Vec<CompiledPoly>> = system
        .jacobian
        .iter()
        .map(|row| row.iter().map(|d| CompiledPoly::compile(d, &field, &small, a)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let k = forms.len();
    let chunk = 1u64 << 14;
    let chunks = total.div_ceil(chunk);
    let tallies: Vec<ChunkTally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = ChunkTally::default();
            let mut x = vec![0u32; len];
            let mut rows = vec![vec![0u32; len]; k];
            for idx in c * chunk..((c + 1) * chunk).min(total) {
                point_at(idx, len, q, &mut x);
                if forms.iter().any(|f| !f.is_zero() && f.eval(&small, &x) != 0) {
                    continue;
                }
                tally.on_variety += 1;
                for (r, row) in jac.iter().enumerate() {
                    for (col, d) in row.iter().enumerate() {
                        rows[r][col] = d.eval(&small, &x);
                    }
                }
                if small.rank(&mut rows) < k {
                    tally.singular += 1;
                    if tally.points.len() < SINGULAR_LIST_CAP {
                        tally.points.push(x.clone());
                    }
                }
            }
            tally
        })
        .collect();
    let mut on_variety = 0;
    let mut singular = 0;
    let mut singular_points = Vec::new();
    for t in tallies {
        on_variety += t.on_variety;
        singular += t.singular;
        for pt in t.points {
            if singular_points.len() < SINGULAR_LIST_CAP {
                singular_points
                    .push(pt.iter().map(|&c| field.format_elem(&field.element_from_index(c as u64))).collect());
            }
        }
    }
    Ok(SmoothnessReport {
        n: spec.n,
        degrees: spec.degrees.clone(),
        reduced: spec.reduced,
        pencil: pencil.name().into(),
        field: FieldInfo::of(&field),
        a: field.format_elem(a),
        coords: system.coords.clone(),
        eliminated: system.eliminated.clone(),
        forms: system.forms.iter().map(|f| f.to_string()).collect(),
        points_checked: total,
        points_on_variety: on_variety,
        singular_count: singular,
        singular_points,
        smooth: singular == 0,
    })
}

/// One cycle of `nu` on the nonzero residues.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Orbit {
    /// `j, nu(j), nu^2(j), ...` starting from the least element `j`.
    pub elements: Vec<u64>,
    /// `eps(t)` for `t = 1..s`.
    pub epsilons: Vec<u64>,
    /// `E(t) = (p^{sr} - 1)(eps(t+1) - 1) - sum_t' p^{(t'-1)r}(p^r - 1)(eps(t') - 1)`, cyclic in `t`.
    #[serde(serialize_with = "as_strings")]
    pub exponents: Vec<BigInt>,
    /// The orbit and its negative are disjoint. Then for every `a != 0` some point
    /// supported on this orbit is singular on the reduction mod `p`.
    pub split: bool,
}

fn as_strings<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCertificate {
    pub n: usize,
    pub p: u64,
    pub r: u32,
    pub i: u64,
    /// 1 when `p` does not divide `n`, else 2.
    pub case: u8,
    pub modulus: u64,
    /// `nu[j] = p^{-r} j mod modulus` for `j = 1..modulus-1` (`nu[0]` unused).
    pub nu: Vec<u64>,
    pub orbits: Vec<Orbit>,
    /// `max |2 A - B|` as the exponent bound is printed (`A`, `B` the two summands of `E`).
    #[serde(serialize_with = "as_string")]
    pub printed_bound: BigInt,
    /// `max |2 E|`, the bound the argument needs.
    #[serde(serialize_with = "as_string")]
    pub corrected_bound: BigInt,
    pub bound_n: u64,
    /// `ord_N(p)`, the degree of the smallest field holding the witness.
    pub witness_degree: u64,
    pub witness_field: Option<FieldInfo>,
    pub witness_a: Option<String>,
    #[serde(skip)]
    pub witness: FfElem,
    #[serde(skip)]
    pub field: Option<Arc<FiniteField>>,
}

fn pow_u64(p: u64, e: u64) -> Result<u64> {
    p.checked_pow(e as u32).ok_or_else(|| AlgebraError::InvalidArgument("p^r overflows".into()))
}

/// Orbit data and witness for `i = p^r + 1 < n`.
pub fn orbit_certificate(n: usize, p: u64, r: u32) -> Result<OrbitCertificate> {
    let mut cert = orbit_structure(n, p, r)?;
    let m = u32::try_from(cert.witness_degree)
        .map_err(|_| AlgebraError::InvalidArgument("witness field degree too large".into()))?;
    let field = Arc::new(FiniteField::new(p, m)?);
    let witness = field
        .primitive_root_of_unity(cert.bound_n)
        .ok_or_else(|| AlgebraError::Numerical("no primitive root of unity found".into()))?;
    cert.witness_field = Some(FieldInfo::of(&field));
    cert.witness_a = Some(field.format_elem(&witness));
    cert.witness = witness;
    cert.field = Some(field);
    cert.verify()?;
    Ok(cert)
}

/// Permutation, orbits, exponents and bound `N`, without building the witness field.
pub fn orbit_structure(n: usize, p: u64, r: u32) -> Result<OrbitCertificate> {
    if !crate::arith::is_prime_u64(p) {
        return Err(AlgebraError::InvalidArgument(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(AlgebraError::InvalidArgument("r must be >= 1".into()));
    }
    let pr = pow_u64(p, r as u64)?;
    let i = pr + 1;
    if i >= n as u64 {
        return Err(AlgebraError::InvalidArgument(format!("need i = p^r + 1 = {i} < n = {n}")));
    }
    let (case, modulus) = if !(n as u64).is_multiple_of(p) { (1u8, n as u64) } else { (2u8, n as u64 - 1) };
    let pr_mod = pr % modulus;
    let inv = (1..modulus)
        .find(|&x| (x as u128 * pr_mod as u128) % modulus as u128 == 1)
        .ok_or_else(|| AlgebraError::Hypothesis(format!("p^r is not a unit mod {modulus}")))?;
    let mut nu = vec![0u64; modulus as usize];
    for j in 1..modulus {
        nu[j as usize] = ((inv as u128 * j as u128) % modulus as u128) as u64;
    }
    let mut seen = vec![false; modulus as usize];
    let mut orbits = Vec::new();
    let pb = BigInt::from(p);
    let prb = BigInt::from(pr);
    let mut printed = BigInt::zero();
    let mut corrected = BigInt::zero();
    for j in 1..modulus {
        if seen[j as usize] {
            continue;
        }
        let mut elements = vec![j];
        seen[j as usize] = true;
        let mut x = nu[j as usize];
        while x != j {
            seen[x as usize] = true;
            elements.push(x);
            x = nu[x as usize];
        }
        let s = elements.len();
        let mut epsilons = Vec::with_capacity(s);
        for t in 1..=s {
            let num = pr as u128 * elements[t % s] as u128 + modulus as u128 - elements[t - 1] as u128;
            if !num.is_multiple_of(modulus as u128) {
                return Err(AlgebraError::Hypothesis(format!(
                    "exponent eps({t}) for orbit of {j} is not integral: {num}/{modulus}"
                )));
            }
            epsilons.push((num / modulus as u128) as u64);
        }
        let psr = pb.pow((s as u32) * r);
        let b_sum: BigInt =
            (1..=s).map(|t| pb.pow((t as u32 - 1) * r) * (&prb - 1) * (BigInt::from(epsilons[t - 1]) - 1)).sum();
        let mut exponents = Vec::with_capacity(s);
        for t in 1..=s {
            let a_term = (&psr - 1) * (BigInt::from(epsilons[t % s]) - 1);
            let e = &a_term - &b_sum;
            let two_a: BigInt = BigInt::from(2) * &a_term;
            printed = printed.max((two_a - &b_sum).abs());
            let two_e: BigInt = BigInt::from(2) * &e;
            corrected = corrected.max(two_e.abs());
            exponents.push(e);
        }
        let split = elements.iter().all(|&x| !elements.contains(&(modulus - x)));
        orbits.push(Orbit { elements, epsilons, exponents, split });
    }
    let mut bound: BigInt = printed.clone().max(corrected.clone()) + 1;
    while bound.is_multiple_of(&pb) {
        bound += 1;
    }
    let bound_n =
        bound.to_u64().ok_or_else(|| AlgebraError::InvalidArgument("exponent bound does not fit in u64".into()))?;
    let witness_degree = multiplicative_order(p, bound_n).expect("bound is coprime to p");
    Ok(OrbitCertificate {
        n,
        p,
        r,
        i,
        case,
        modulus,
        nu,
        orbits,
        printed_bound: printed,
        corrected_bound: corrected,
        bound_n,
        witness_degree,
        witness_field: None,
        witness_a: None,
        witness: Vec::new(),
        field: None,
    })
}

impl OrbitCertificate {
    /// Re-derives every stored quantity and checks the witness directly.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(AlgebraError::Hypothesis(format!("certificate check failed: {what}")));
        let m = self.modulus;
        let pr = self.p.pow(self.r);
        for j in 1..m {
            let v = self.nu[j as usize];
            if v == 0 || v >= m || (pr as u128 * v as u128) % m as u128 != j as u128 {
                return fail("nu is not p^{-r} on the nonzero residues");
            }
        }
        let mut covered = vec![0u32; m as usize];
        for o in &self.orbits {
            let s = o.elements.len();
            if o.elements.iter().min() != o.elements.first() {
                return fail("orbit does not start at its least element");
            }
            for t in 0..s {
                covered[o.elements[t] as usize] += 1;
                if self.nu[o.elements[t] as usize] != o.elements[(t + 1) % s] {
                    return fail("orbit is not a nu-cycle");
                }
                let num = pr as u128 * o.elements[(t + 1) % s] as u128 + m as u128 - o.elements[t] as u128;
                if !num.is_multiple_of(m as u128) || (num / m as u128) as u64 != o.epsilons[t] || o.epsilons[t] == 0 {
                    return fail("epsilon mismatch");
                }
            }
        }
        if covered[1..].iter().any(|&c| c != 1) {
            return fail("orbits do not partition the nonzero residues");
        }
        if BigInt::from(self.bound_n) <= self.printed_bound || BigInt::from(self.bound_n) <= self.corrected_bound {
            return fail("bound does not exceed the exponent maxima");
        }
        let field = self.field.as_ref().ok_or_else(|| AlgebraError::Hypothesis("no witness field".into()))?;
        let one = field.one();
        let n_big = BigUint::from(self.bound_n);
        if field.pow(&self.witness, &n_big) != one {
            return fail("witness is not an N-th root of unity");
        }
        for l in prime_divisors(self.bound_n) {
            if field.pow(&self.witness, &BigUint::from(self.bound_n / l)) == one {
                return fail("witness order is a proper divisor of N");
            }
        }
        // the contradiction: some E(t) per orbit with (-a)^E != 1
        let minus_a = field.neg(&self.witness);
        for o in &self.orbits {
            let blocked = o.exponents.iter().any(|e| field.pow_int(&minus_a, e).is_some_and(|v| v != one));
            if !blocked {
                return fail("some orbit admits a dependency at the witness");
            }
        }
        Ok(())
    }

    pub fn pencil(&self) -> Pencil {
        if self.case == 1 {
            Pencil::Radical
        } else {
            Pencil::RadicalLinear
        }
    }

    /// The complete intersection the certificate is about: `T_{1 2 i}`, reduced in Case 2.
    pub fn spec(&self) -> CompleteIntersectionSpec {
        CompleteIntersectionSpec::new(self.n, vec![1, 2, self.i as u32], self.case == 2).expect("valid degrees")
    }

    /// Predicted reduced Jacobian rows (integral, to be read mod `p`) on the chart `b_1..b_{modulus-1}`:
    /// `a b_{-j}` and `(-a)^{(p^r nu(-j) + j)/modulus} b_{nu(-j)}^{p^r}`.
    pub fn predicted_rows(&self) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
        let m = self.modulus as usize;
        let mut vars: Vec<String> = (1..m).map(|j| format!("b{j}")).collect();
        vars.push("a".into());
        let ring = RingKind::Integers;
        let pr = self.p.pow(self.r) as u32;
        let mut quad = Vec::new();
        let mut high = Vec::new();
        for j in 1..m {
            let neg_j = m - j;
            let mut e = vec![0u32; m];
            e[neg_j - 1] = 1;
            e[m - 1] = 1;
            quad.push(MultiPoly::from_terms(ring.clone(), vars.clone(), [(e, ring.one())])?);
            let v = self.nu[neg_j] as usize;
            let ell = (pr as usize * v + j) / m;
            let mut e = vec![0u32; m];
            e[v - 1] = pr;
            e[m - 1] = ell as u32;
            let sign = if ell.is_multiple_of(2) { 1 } else { -1 };
            high.push(MultiPoly::from_terms(ring.clone(), vars.clone(), [(e, ring.from_int(sign))])?);
        }
        Ok((quad, high))
    }

    /// No orbit is split, so the reduction mod `p` is not forced to be singular.
    pub fn unobstructed(&self) -> bool {
        self.orbits.iter().all(|o| !o.split)
    }

    /// Enumerates `P^{modulus-2}` over the witness field and counts points where the
    /// predicted two-row matrix drops rank, ignoring whether the point is on the variety.
    /// Returns `(points, rank_failures)`.
    pub fn matrix_rank_failures(&self, budget: u64) -> Result<(u64, u64)> {
        let field = self.field.as_ref().ok_or_else(|| AlgebraError::Hypothesis("no witness field".into()))?;
        let small = SmallField::new(field)?;
        let (quad, high) = self.predicted_rows()?;
        let rows: Vec<Vec<CompiledPoly>> = [quad, high]
            .iter()
            .map(|row| row.iter().map(|d| CompiledPoly::compile(d, field, &small, &self.witness)).collect())
            .collect::<Result<_>>()?;
        let len = self.modulus as usize - 1;
        let q = small.order() as u64;
        let total = projective_point_count(q, (len - 1) as u32)
            .filter(|&t| t <= budget)
            .ok_or(AlgebraError::BudgetExceeded { points: format!("{q}^{len}"), budget })?;
        let failures: u64 = (0..total)
            .into_par_iter()
            .map_init(
                || (vec![0u32; len], vec![vec![0u32; len]; 2]),
                |(x, mat), idx| {
                    point_at(idx, len, q, x);
                    for (r, row) in rows.iter().enumerate() {
                        for (c, d) in row.iter().enumerate() {
                            mat[r][c] = d.eval(&small, x);
                        }
                    }
                    u64::from(small.rank(mat) < 2)
                },
            )
            .sum();
        Ok((total, failures))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingSample {
    pub a: Vec<String>,
    pub gram_det: String,
    pub discriminant: String,
    pub ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub n: usize,
    pub samples: Vec<ScalingSample>,
    pub constant: bool,
    pub ratio: Option<String>,
    #[serde(skip)]
    pub ratio_exact: Option<BigRational>,
}

/// `(det G, disc)` for the Gram matrix `G` of `T_12` at `a`.
pub fn gram_det_and_disc(a: &CoeffVector<BigRational>) -> (BigRational, BigRational) {
    (determinant(&t12_gram(a)), discriminant(a))
}

/// Checks that `det(Gram of T_12) / disc` is the same at `trials` random points.
pub fn quadric_discriminant_scaling(n: usize, trials: usize, seed: u64) -> Result<ScalingReport> {
    if n < 3 {
        return Err(AlgebraError::InvalidArgument("need n >= 3 (the quadric lives in P^{n-2})".into()));
    }
    if trials < 2 {
        return Err(AlgebraError::InvalidArgument("need at least 2 trials".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut ratios: Vec<BigRational> = Vec::new();
    let mut attempts = 0;
    while samples.len() < trials {
        attempts += 1;
        if attempts > 100 * trials {
            return Err(AlgebraError::Numerical("all sampled points had zero discriminant".into()));
        }
        let coeffs: Vec<BigRational> =
            (0..n).map(|_| BigRational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())).collect();
        let a = CoeffVector::new(coeffs)?;
        let (det, disc) = gram_det_and_disc(&a);
        if disc.is_zero() {
            continue;
        }
        let ratio = &det / &disc;
        samples.push(ScalingSample {
            a: a.coeffs().iter().map(|c| c.to_string()).collect(),
            gram_det: det.to_string(),
            discriminant: disc.to_string(),
            ratio: ratio.to_string(),
        });
        ratios.push(ratio);
    }
    let constant = ratios.windows(2).all(|w| w[0] == w[1]);
    Ok(ScalingReport {
        n,
        samples,
        constant,
        ratio: constant.then(|| ratios[0].to_string()),
        ratio_exact: constant.then(|| ratios[0].clone()),
    })
}
