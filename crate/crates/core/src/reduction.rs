//! Principal and Bring forms by explicit Tschirnhaus transformations.
//!
//! `T_1 = 0` is a hyperplane, solved for `b_0`. On it `T_2` is a quadric,
//! diagonalized over `Q` by completing squares; pairing diagonal entries gives
//! an isotropic subspace over a multiquadratic tower. A point of that subspace
//! is a principal transformation, exact in the tower. For the Bring form a
//! line inside the isotropic subspace is intersected with the cubic `T_3`,
//! which is the one non-radical step and is done numerically.

use crate::error::{AlgebraError, Result};
use crate::forms::{t12_gram, t1_substitution, transform_coeffs, transform_coeffs_oracle, DEFAULT_ORACLE_CAP};
use crate::linalg::{diagonalize_symmetric, Diagonalization, Matrix};
use crate::numeric::{default_precision, roots_hp, HpComplex, Real};
use crate::ring::{Field, Ring};
use crate::scalar::parse_rational;
use crate::symmetric::{discriminant, power_sums, CoeffVector};
use crate::tower::{Tower, TowerElem};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const MAX_ATTEMPTS: usize = 16;
pub const ROOT_TOL: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-8;

/// `Q(x) = x^T G x` with `G` symmetric and rational.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricForm {
    gram: Matrix<BigRational>,
}

impl QuadricForm {
    pub fn new(gram: Matrix<BigRational>) -> Result<Self> {
        let m = gram.len();
        if gram.iter().any(|row| row.len() != m) {
            return Err(AlgebraError::InvalidArgument("Gram matrix must be square".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(AlgebraError::InvalidArgument("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(QuadricForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<BigRational> {
        &self.gram
    }

    pub fn eval<T: Field>(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim() {
            return Err(AlgebraError::InvalidArgument(format!("expected {} coordinates, got {}", self.dim(), x.len())));
        }
        let Some(sample) = x.first() else {
            return Err(AlgebraError::InvalidArgument("empty quadric".into()));
        };
        let mut acc = sample.zero_like();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let g = sample.rational_like(g).expect("rationals embed");
                acc = acc.plus(&g.times(&x[i]).times(&x[j]));
            }
        }
        Ok(acc)
    }

    /// Completing squares: `L^T G L` diagonal, with `L` rational and invertible.
    pub fn diagonalize(&self) -> Diagonalization<BigRational> {
        diagonalize_symmetric(&self.gram).expect("characteristic zero")
    }
}

/// Basis of an isotropic subspace, exact in a multiquadratic tower.
#[derive(Clone, Debug)]
pub struct IsotropicSubspace {
    pub tower: Tower,
    pub basis: Vec<Vec<TowerElem>>,
}

/// Isotropic subspace of dimension `floor(dim / 2)` from the pairing
/// `(order[0], order[1]), (order[2], order[3]), ...` of diagonal entries.
/// For a pair `(i, j)` the vector has `x_i = ±sqrt(-d_j / d_i)`, `x_j = 1` in
/// diagonal coordinates, mapped back through `L`. Supports are disjoint, so
/// the span is isotropic.
pub fn isotropic_subspace(
    q: &QuadricForm,
    diag: &Diagonalization<BigRational>,
    order: &[usize],
    flips: &[bool],
) -> Result<IsotropicSubspace> {
    let m = q.dim();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() {
        return Err(AlgebraError::InvalidArgument("pairing order must be a permutation of the coordinates".into()));
    }
    if let Some(i) = diag.diagonal.iter().position(Zero::is_zero) {
        return Err(AlgebraError::Hypothesis(format!("degenerate quadric (diagonal entry {i} is zero)")));
    }
    let mut tower = Tower::new();
    let mut roots = Vec::new();
    for (t, pair) in order.chunks_exact(2).enumerate() {
        let (i, j) = (pair[0], pair[1]);
        let mut r = tower.sqrt(&(-&diag.diagonal[j] / &diag.diagonal[i]));
        if flips.get(t).copied().unwrap_or(false) {
            r = r.negated();
        }
        roots.push((i, j, r));
    }
    let zero = tower.rational(&BigRational::zero());
    let basis = roots
        .into_iter()
        .map(|(i, j, r)| {
            let r = tower.embed(&r);
            let one = zero.int_like(1);
            (0..m)
                .map(|row| {
                    let li = zero.rational_like(&diag.transform[row][i]).unwrap();
                    let lj = zero.rational_like(&diag.transform[row][j]).unwrap();
                    li.times(&r).plus(&lj.times(&one))
                })
                .collect()
        })
        .collect();
    Ok(IsotropicSubspace { tower, basis })
}

/// The isotropic subspace for the natural pairing `(0,1), (2,3), ...`.
pub fn maximal_isotropic(q: &QuadricForm) -> Result<IsotropicSubspace> {
    let diag = q.diagonalize();
    let order: Vec<usize> = (0..q.dim()).collect();
    isotropic_subspace(q, &diag, &order, &[])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Principal,
    Bring,
}

impl Level {
    /// Number of leading coefficients killed.
    pub fn killed(self) -> usize {
        match self {
            Level::Principal => 2,
            Level::Bring => 3,
        }
    }

    pub fn min_degree(self) -> usize {
        match self {
            Level::Principal => 3,
            Level::Bring => 5,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "principal" => Ok(Level::Principal),
            "bring" => Ok(Level::Bring),
            _ => Err(AlgebraError::Parse(format!("unknown level `{s}` (expected principal or bring)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    pub seed: u64,
    pub precision: u32,
    pub tol: f64,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { seed: 0, precision: default_precision(), tol: DEFAULT_TOL }
    }
}

/// Exact tower data of a step: coefficient vectors over the radical basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactStep {
    pub radicands: Vec<String>,
    pub b: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
    pub b_display: Vec<String>,
}

/// The line `s*U + W` in the isotropic subspace and the cubic `T_3` restricted to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineChoice {
    pub u: Vec<String>,
    pub w: Vec<String>,
    /// `A_3, A_2, A_1, A_0` of `A_3 s^3 + A_2 s^2 + A_1 s + A_0`.
    pub cubic: Vec<String>,
    /// `None` when `A_3 = 0` and the point at infinity `b = U` was used.
    pub parameter: Option<[String; 2]>,
    pub scale_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub description: String,
    pub b: Vec<[String; 2]>,
    pub c: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineChoice>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub k: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub n: usize,
    pub level: Level,
    pub seed: u64,
    pub precision: u32,
    pub input: Vec<String>,
    pub steps: Vec<ReductionStep>,
    /// `|p_k(c)| / max(1, |c|)` for the killed indices of the final `c`.
    pub residuals: Vec<Residual>,
    pub root_error: f64,
    pub attempts: usize,
}

impl ReductionTrace {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn input_coeffs(&self) -> Result<CoeffVector<BigRational>> {
        CoeffVector::new(self.input.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?)
    }

    /// Final coefficients `c` at the trace's precision.
    pub fn final_coeffs(&self) -> Result<CoeffVector<HpComplex>> {
        let last = self.steps.last().ok_or_else(|| AlgebraError::InvalidArgument("empty trace".into()))?;
        CoeffVector::new(parse_vector(&last.c, self.precision)?)
    }
}

fn digits_for(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 3
}

fn hp_strings(z: &HpComplex, digits: usize) -> [String; 2] {
    let (re, im) = z.to_strings(digits);
    [re, im]
}

fn parse_hp(s: &[String; 2], prec: u32) -> Result<HpComplex> {
    let part = |t: &str| Real::parse(t, prec).ok_or_else(|| AlgebraError::Parse(format!("bad number `{t}`")));
    Ok(HpComplex::new(part(&s[0])?, part(&s[1])?))
}

fn parse_vector(v: &[[String; 2]], prec: u32) -> Result<Vec<HpComplex>> {
    v.iter().map(|s| parse_hp(s, prec)).collect()
}

fn to_hp(a: &CoeffVector<BigRational>, prec: u32) -> CoeffVector<HpComplex> {
    a.map(|q| HpComplex::from_rational(q, prec))
}

fn with_prec(z: &HpComplex, prec: u32) -> HpComplex {
    HpComplex::new(z.re.with_prec(prec), z.im.with_prec(prec))
}

/// `transform_coeffs` in floating point, with guard bits for the cancellation
/// in `sum_m [w^k]_m p_m(a)`: the `p_m` grow like `R^m` for the root bound
/// `R`, up to `m = n(n-1)`, while `c` itself stays moderate.
pub fn transform_coeffs_hp(a: &CoeffVector<HpComplex>, b: &[HpComplex]) -> Result<CoeffVector<HpComplex>> {
    let n = a.degree();
    let prec = a.coeffs().iter().chain(b).map(HpComplex::prec).max().unwrap_or(128);
    // Fujiwara bound on the roots
    let bound =
        a.coeffs().iter().enumerate().map(|(k, x)| 2.0 * x.abs_f64().powf(1.0 / (k + 1) as f64)).fold(2.0, f64::max);
    let guard = (n * (n - 1)) as f64 * bound.log2() + 2.0 * (n as f64).log2() * n as f64 + 64.0;
    let work = prec + guard.ceil().min(1e6) as u32;
    let a_work = a.map(|x| with_prec(x, work));
    let b_work: Vec<HpComplex> = b.iter().map(|x| with_prec(x, work)).collect();
    Ok(transform_coeffs(&a_work, &b_work)?.map(|x| with_prec(x, prec)))
}

fn max_norm(v: &[HpComplex]) -> f64 {
    v.iter().map(HpComplex::abs_f64).fold(0.0, f64::max)
}

fn horner(b: &[HpComplex], z: &HpComplex) -> HpComplex {
    b.iter().rev().fold(z.zero_like(), |acc, bj| acc.times(z).plus(bj))
}

/// Greedy nearest matching with distances taken at full precision.
fn match_error(xs: &[HpComplex], ys: &[HpComplex]) -> f64 {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(xs.len() * ys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            pairs.push((x.minus(y).abs_f64(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (mut left, mut right) = (vec![false; xs.len()], vec![false; ys.len()]);
    let mut worst = 0.0f64;
    for (d, i, j) in pairs {
        if !left[i] && !right[j] {
            left[i] = true;
            right[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// Max distance between the roots of `c` and the images `w(z_i)` of the roots of `a`.
pub fn root_correspondence_hp(a: &CoeffVector<HpComplex>, b: &[HpComplex], c: &CoeffVector<HpComplex>) -> f64 {
    let za = roots_hp(&a.monic_coeffs());
    let zc = roots_hp(&c.monic_coeffs());
    let images: Vec<HpComplex> = za.iter().map(|z| horner(b, z)).collect();
    match_error(&images, &zc)
}

/// Smallest pairwise distance of the images, relative to their size.
fn separation(images: &[HpComplex]) -> f64 {
    let scale = max_norm(images).max(1.0);
    let mut best = f64::INFINITY;
    for i in 0..images.len() {
        for j in 0..i {
            best = best.min(images[i].minus(&images[j]).abs_f64());
        }
    }
    best / scale
}

pub fn residuals(c: &CoeffVector<HpComplex>, killed: usize) -> Vec<Residual> {
    let p = power_sums(c, killed);
    let scale = max_norm(c.coeffs()).max(1.0);
    (1..=killed).map(|k| Residual { k, value: p.get(k).abs_f64() / scale }).collect()
}

fn exact_strings(x: &TowerElem) -> Vec<String> {
    x.coeffs().iter().map(ToString::to_string).collect()
}

fn exact_step(b: &[TowerElem], c: &[TowerElem]) -> ExactStep {
    let radicands = c.iter().chain(b).map(|x| x.radicands()).max_by_key(|r| r.len()).unwrap_or(&[]).to_vec();
    let tower = Tower::from_radicands(radicands.clone());
    ExactStep {
        radicands: radicands.iter().map(ToString::to_string).collect(),
        b: b.iter().map(|x| exact_strings(&tower.embed(x))).collect(),
        c: c.iter().map(|x| exact_strings(&tower.embed(x))).collect(),
        b_display: b.iter().map(ToString::to_string).collect(),
    }
}

fn load_exact(data: &[Vec<String>], tower: &Tower) -> Result<Vec<TowerElem>> {
    data.iter()
        .map(|coeffs| {
            let q = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            tower.element(q).ok_or_else(|| AlgebraError::Parse("tower coefficient vector has the wrong length".into()))
        })
        .collect()
}

/// Exponent `e` with `2^e * max|b_j|` in `[1, 2)`.
fn scale_exponent(b: &[HpComplex]) -> i64 {
    let m = max_norm(b);
    if m == 0.0 || !m.is_finite() {
        0
    } else {
        -(m.log2().floor() as i64)
    }
}

fn check_input(a: &CoeffVector<BigRational>, level: Level) -> Result<()> {
    let n = a.degree();
    if n < level.min_degree() {
        return Err(AlgebraError::InvalidArgument(format!(
            "{:?} form needs degree at least {}, got {n}",
            level,
            level.min_degree()
        )));
    }
    if discriminant(a).is_zero() {
        return Err(AlgebraError::Hypothesis("input has a repeated root (zero discriminant)".into()));
    }
    Ok(())
}

fn identity_step(a: &CoeffVector<BigRational>, level: Level, prec: u32) -> ReductionStep {
    let n = a.degree();
    let tower = Tower::new();
    let b: Vec<TowerElem> =
        (0..n).map(|j| tower.rational(&BigRational::from_integer(i64::from(j == 1).into()))).collect();
    let c: Vec<TowerElem> = a.coeffs().iter().map(|q| tower.rational(q)).collect();
    let digits = digits_for(prec);
    ReductionStep {
        description: format!("identity: input already in {level:?} form").to_lowercase(),
        b: b.iter().map(|x| hp_strings(&x.shadow(prec), digits)).collect(),
        c: c.iter().map(|x| hp_strings(&x.shadow(prec), digits)).collect(),
        exact: Some(exact_step(&b, &c)),
        line: None,
    }
}

struct Attempt {
    step: ReductionStep,
    c: CoeffVector<HpComplex>,
    residuals: Vec<Residual>,
    root_error: f64,
}

fn pairing(m: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<bool>) {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let flips = (0..m / 2).map(|_| rng.gen_bool(0.5)).collect();
    (order, flips)
}

/// `b = S b'` for the substitution solving `T_1 = 0`.
fn lift(s: &Matrix<BigRational>, v: &[TowerElem]) -> Vec<TowerElem> {
    s.iter()
        .map(|row| {
            row.iter().zip(v).fold(v[0].zero_like(), |acc, (sij, vj)| {
                if sij.is_zero() {
                    acc
                } else {
                    acc.plus(&vj.times(&vj.rational_like(sij).unwrap()))
                }
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn finish(
    a_hp: &CoeffVector<HpComplex>,
    b: &[HpComplex],
    c: CoeffVector<HpComplex>,
    level: Level,
    opts: &ReductionOptions,
    description: String,
    exact: Option<ExactStep>,
    line: Option<LineChoice>,
) -> Option<Attempt> {
    let res = residuals(&c, level.killed());
    let root_error = root_correspondence_hp(a_hp, b, &c);
    if res.iter().any(|r| !(r.value <= opts.tol)) || !(root_error <= ROOT_TOL) {
        return None;
    }
    let digits = digits_for(opts.precision);
    let step = ReductionStep {
        description,
        b: b.iter().map(|z| hp_strings(z, digits)).collect(),
        c: c.coeffs().iter().map(|z| hp_strings(z, digits)).collect(),
        exact,
        line,
    };
    Some(Attempt { step, c, residuals: res, root_error })
}

fn principal_attempt(
    a: &CoeffVector<BigRational>,
    a_hp: &CoeffVector<HpComplex>,
    roots: &[HpComplex],
    rng: &mut ChaCha8Rng,
    opts: &ReductionOptions,
) -> Result<Option<Attempt>> {
    let prec = opts.precision;
    let q = QuadricForm::new(t12_gram(a))?;
    let diag = q.diagonalize();
    let (order, flips) = pairing(q.dim(), rng);
    let iso = isotropic_subspace(&q, &diag, &order, &flips)?;
    let b = lift(&t1_substitution(a), &iso.basis[0]);
    let shadow: Vec<HpComplex> = b.iter().map(|x| x.shadow(prec)).collect();
    let e = scale_exponent(&shadow);
    let b: Vec<TowerElem> = b.iter().map(|x| x.mul_pow2(e)).collect();
    let b_hp: Vec<HpComplex> = b.iter().map(|x| x.shadow(prec)).collect();
    let images: Vec<HpComplex> = roots.iter().map(|z| horner(&b_hp, z)).collect();
    if !(separation(&images) > 1e-12) {
        return Ok(None);
    }
    let a_tower = a.map(|x| b[0].rational_like(x).unwrap());
    let c = transform_coeffs(&a_tower, &b)?;
    if !c.get(1).is_zero_elem() || !c.get(2).is_zero_elem() {
        return Err(AlgebraError::Numerical("exact principal step left c_1 or c_2 nonzero".into()));
    }
    let c_hp = c.map(|x| x.shadow(prec));
    let description = format!(
        "principal: isotropic vector of T_12 from diagonal pair ({}, {}), scaled by 2^{e}",
        order[0] + 1,
        order[1] + 1
    );
    let exact = exact_step(&b, c.coeffs());
    Ok(finish(a_hp, &b_hp, c_hp, Level::Principal, opts, description, Some(exact), None))
}

fn poly_mul(x: &[TowerElem], y: &[TowerElem]) -> Vec<TowerElem> {
    let mut out = vec![x[0].zero_like(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero_elem() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            out[i + j] = out[i + j].plus(&xi.times(yj));
        }
    }
    out
}

fn weigh(coeffs: &[TowerElem], p: &[BigRational]) -> TowerElem {
    coeffs.iter().zip(p).fold(coeffs[0].zero_like(), |acc, (x, pm)| acc.plus(&x.times(&x.rational_like(pm).unwrap())))
}

fn bring_attempt(
    a: &CoeffVector<BigRational>,
    a_hp: &CoeffVector<HpComplex>,
    roots: &[HpComplex],
    rng: &mut ChaCha8Rng,
    opts: &ReductionOptions,
) -> Result<Option<Attempt>> {
    let prec = opts.precision;
    let n = a.degree();
    let q = QuadricForm::new(t12_gram(a))?;
    let diag = q.diagonalize();
    let (order, flips) = pairing(q.dim(), rng);
    let iso = isotropic_subspace(&q, &diag, &order, &flips)?;
    let s = t1_substitution(a);
    let u = lift(&s, &iso.basis[0]);
    // the rest of the isotropic subspace enters W with small random weights
    let mut w_prime = iso.basis[1].clone();
    for v in &iso.basis[2..] {
        let k = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
        for (wi, vi) in w_prime.iter_mut().zip(v) {
            *wi = wi.plus(&vi.times(&vi.rational_like(&k).unwrap()));
        }
    }
    let w = lift(&s, &w_prime);
    let p = power_sums(a, 3 * (n - 1));
    let p = p.as_slice();
    let uu = poly_mul(&u, &u);
    let ww = poly_mul(&w, &w);
    let three = u[0].int_like(3);
    let cubic = [
        weigh(&poly_mul(&uu, &u), p),
        weigh(&poly_mul(&uu, &w), p).times(&three),
        weigh(&poly_mul(&u, &ww), p).times(&three),
        weigh(&poly_mul(&ww, &w), p),
    ];
    if cubic.iter().all(Ring::is_zero_elem) {
        return Ok(None);
    }
    let u_hp: Vec<HpComplex> = u.iter().map(|x| x.shadow(prec)).collect();
    let w_hp: Vec<HpComplex> = w.iter().map(|x| x.shadow(prec)).collect();
    let mut candidates: Vec<(Option<HpComplex>, Vec<HpComplex>)> = Vec::new();
    if cubic[0].is_zero_elem() {
        candidates.push((None, u_hp.clone()));
    }
    let cubic_hp: Vec<HpComplex> = cubic.iter().map(|x| x.shadow(prec)).collect();
    for root in roots_hp(&cubic_hp) {
        let b: Vec<HpComplex> = u_hp.iter().zip(&w_hp).map(|(ui, wi)| root.times(ui).plus(wi)).collect();
        candidates.push((Some(root), b));
    }
    let scored = candidates.into_iter().map(|(s, b)| {
        let images: Vec<HpComplex> = roots.iter().map(|z| horner(&b, z)).collect();
        (separation(&images), s, b)
    });
    let Some((sep, param, b)) = scored.max_by(|x, y| x.0.total_cmp(&y.0)) else {
        return Ok(None);
    };
    if !(sep > 1e-12) {
        return Ok(None);
    }
    let e = scale_exponent(&b);
    let b: Vec<HpComplex> = b.iter().map(|z| z.mul_pow2(e)).collect();
    let c = transform_coeffs_hp(a_hp, &b)?;
    let digits = digits_for(prec);
    let line = LineChoice {
        u: u.iter().map(ToString::to_string).collect(),
        w: w.iter().map(ToString::to_string).collect(),
        cubic: cubic.iter().map(ToString::to_string).collect(),
        parameter: param.as_ref().map(|s| hp_strings(s, digits)),
        scale_exponent: e,
    };
    let description = format!(
        "bring: root of T_3 on the line sU + W of the T_12 isotropic, pairs ({}, {}) and ({}, {})",
        order[0] + 1,
        order[1] + 1,
        order[2] + 1,
        order[3] + 1
    );
    Ok(finish(a_hp, &b, c, Level::Bring, opts, description, None, Some(line)))
}

pub fn reduce(a: &CoeffVector<BigRational>, level: Level, opts: &ReductionOptions) -> Result<ReductionTrace> {
    check_input(a, level)?;
    let n = a.degree();
    let prec = opts.precision;
    let a_hp = to_hp(a, prec);
    let mut trace = ReductionTrace {
        n,
        level,
        seed: opts.seed,
        precision: prec,
        input: a.coeffs().iter().map(ToString::to_string).collect(),
        steps: Vec::new(),
        residuals: Vec::new(),
        root_error: 0.0,
        attempts: 0,
    };
    let p = power_sums(a, level.killed());
    if (1..=level.killed()).all(|k| p.get(k).is_zero()) {
        let step = identity_step(a, level, prec);
        trace.residuals = (1..=level.killed()).map(|k| Residual { k, value: 0.0 }).collect();
        trace.root_error = root_correspondence_hp(&a_hp, &parse_vector(&step.b, prec)?, &a_hp);
        trace.steps.push(step);
        return Ok(trace);
    }
    let roots = roots_hp(&a_hp.monic_coeffs());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let found = match level {
            Level::Principal => principal_attempt(a, &a_hp, &roots, &mut rng, opts)?,
            Level::Bring => bring_attempt(a, &a_hp, &roots, &mut rng, opts)?,
        };
        if let Some(found) = found {
            debug_assert_eq!(found.c.degree(), n);
            trace.residuals = found.residuals;
            trace.root_error = found.root_error;
            trace.steps.push(found.step);
            trace.attempts = attempt;
            return Ok(trace);
        }
    }
    Err(AlgebraError::Numerical(format!("no admissible transformation after {MAX_ATTEMPTS} attempts")))
}

/// `c_1 = c_2 = 0`; exact over the tower, with a numeric shadow.
pub fn reduce_to_principal(a: &CoeffVector<BigRational>, opts: &ReductionOptions) -> Result<ReductionTrace> {
    reduce(a, Level::Principal, opts)
}

/// `c_1 = c_2 = c_3 = 0`; radicals plus one numeric cubic root.
pub fn reduce_to_bring(a: &CoeffVector<BigRational>, opts: &ReductionOptions) -> Result<ReductionTrace> {
    reduce(a, Level::Bring, opts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepCheck {
    pub index: usize,
    /// `max |c_recomputed - c_stored| / max(1, |c_stored|)`.
    pub deviation: f64,
    pub root_error: f64,
    /// Exact data: shadow of the exact `b` and `c` against the numeric ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shadow_deviation: Option<f64>,
    /// Companion-matrix oracle on the exact data; `None` when not run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub tol: f64,
    pub steps: Vec<StepCheck>,
    pub flagged: Vec<usize>,
    pub max_deviation: f64,
    pub max_residual: f64,
    pub max_root_error: f64,
}

fn relative_deviation(x: &[HpComplex], y: &[HpComplex]) -> f64 {
    let scale = max_norm(y).max(1.0);
    x.iter().zip(y).map(|(u, v)| u.minus(v).abs_f64()).fold(0.0, f64::max) / scale
}

/// Recomputes every step of a trace from its stored `b` values.
pub fn verify_trace(trace: &ReductionTrace, tol: f64) -> Result<VerifyReport> {
    let prec = trace.precision;
    let a = trace.input_coeffs()?;
    if a.degree() != trace.n {
        return Err(AlgebraError::InvalidArgument("trace degree does not match its input".into()));
    }
    let mut prev = to_hp(&a, prec);
    let mut prev_exact: Option<CoeffVector<TowerElem>> = Some(a.map(|q| Tower::new().rational(q)));
    let mut checks = Vec::new();
    for (index, step) in trace.steps.iter().enumerate() {
        let b = parse_vector(&step.b, prec)?;
        let c = parse_vector(&step.c, prec)?;
        if b.len() != trace.n || c.len() != trace.n {
            return Err(AlgebraError::InvalidArgument(format!("step {index} has the wrong length")));
        }
        let recomputed = transform_coeffs_hp(&prev, &b)?;
        let deviation = relative_deviation(recomputed.coeffs(), &c);
        let c_vec = CoeffVector::new(c.clone())?;
        let root_error = root_correspondence_hp(&prev, &b, &c_vec);
        let (mut shadow_deviation, mut oracle_agrees) = (None, None);
        let mut next_exact = None;
        if let Some(ex) = &step.exact {
            let tower = Tower::from_radicands(ex.radicands.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?);
            let bx = load_exact(&ex.b, &tower)?;
            let cx = load_exact(&ex.c, &tower)?;
            let shadows = |v: &[TowerElem]| v.iter().map(|x| x.shadow(prec)).collect::<Vec<_>>();
            shadow_deviation = Some(relative_deviation(&shadows(&bx), &b).max(relative_deviation(&shadows(&cx), &c)));
            if let Some(px) = &prev_exact {
                if trace.n <= DEFAULT_ORACLE_CAP {
                    let px = px.map(|x| tower.embed(x));
                    let oracle = transform_coeffs_oracle(&px, &bx, DEFAULT_ORACLE_CAP)?;
                    oracle_agrees = Some(oracle.coeffs() == &cx[..]);
                }
            }
            next_exact = Some(CoeffVector::new(cx)?);
        }
        let flagged = !(deviation <= tol)
            || !(root_error <= ROOT_TOL)
            || shadow_deviation.is_some_and(|d| !(d <= tol))
            || oracle_agrees == Some(false);
        checks.push(StepCheck { index, deviation, root_error, shadow_deviation, oracle_agrees, flagged });
        prev = c_vec;
        prev_exact = next_exact;
    }
    let max_residual = residuals(&prev, trace.level.killed()).iter().map(|r| r.value).fold(0.0, f64::max);
    let flagged: Vec<usize> = checks.iter().filter(|c| c.flagged).map(|c| c.index).collect();
    Ok(VerifyReport {
        ok: flagged.is_empty() && max_residual <= tol && !checks.is_empty(),
        tol,
        max_deviation: checks.iter().map(|c| c.deviation).fold(0.0, f64::max),
        max_root_error: checks.iter().map(|c| c.root_error).fold(0.0, f64::max),
        steps: checks,
        flagged,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn hyperbolic_plane_diagonalizes() {
        let half = BigRational::new(1.into(), 2.into());
        let form = QuadricForm::new(vec![vec![q(0), half.clone()], vec![half, q(0)]]).unwrap();
        let d = form.diagonalize();
        assert!(d.diagonal.iter().all(|x| !x.is_zero()));
        assert!(d.diagonal[0].clone() * &d.diagonal[1] < q(0));
        let iso = maximal_isotropic(&form).unwrap();
        assert!(iso.tower.radicands().is_empty());
        assert!(form.eval(&iso.basis[0]).unwrap().is_zero_elem());
    }

    #[test]
    fn sum_of_squares_needs_sqrt_minus_one() {
        let form = QuadricForm::new(vec![vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        let iso = maximal_isotropic(&form).unwrap();
        assert_eq!(iso.tower.radicands(), &[q(-1)]);
        assert_eq!(iso.basis[0][0].to_string(), "sqrt(-1)");
        assert_eq!(iso.basis[0][1].to_string(), "1");
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        assert!(QuadricForm::new(vec![vec![q(0), q(1)], vec![q(0), q(0)]]).is_err());
    }
}
