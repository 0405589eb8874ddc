//! Tschirnhaus forms `T_i` and the transformation map `(a, b) -> c`.
//!
//! `T_i` is the homogeneous degree-`i` form in `b_0..b_{n-1}` whose value is the
//! `i`-th power sum of the roots `sum_j b_j z^j` of the transformed polynomial:
//! `T_i = sum_{|k| = i} multinomial(i; k) p_{||k||}(a) b^k`, with `||k|| = sum_j j k_j`.

use crate::error::{AlgebraError, Result};
use crate::linalg::{charpoly, mat_mul, transpose, Matrix};
use crate::numeric::roots_c64;
use crate::poly::{indexed_vars, Monomial, MultiPoly, Substitution};
use crate::ring::{Field, Ring};
use crate::scalar::{RingKind, Scalar};
use crate::symmetric::{coeffs_from_power_sums, power_sums, symbolic_power_sums, CoeffVector};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const DEFAULT_ORACLE_CAP: usize = 8;

pub fn b_vars(n: usize) -> Vec<String> {
    indexed_vars("b", 0..n)
}

pub fn a_vars(n: usize) -> Vec<String> {
    indexed_vars("a", 1..n + 1)
}

/// All `k` in `N^n` with `|k| = total`, in descending lex order.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(n: usize, total: u32) -> Self {
        if n == 0 {
            return Compositions { current: None };
        }
        let mut first = vec![0; n];
        first[0] = total;
        Compositions { current: Some(first) }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let n = out.len();
        // rightmost nonzero entry before the last slot moves one unit right
        if let Some(j) = (0..n.saturating_sub(1)).rev().find(|&j| out[j] > 0) {
            let mut next = out.clone();
            let tail: u32 = next[j + 1..].iter().sum();
            next[j] -= 1;
            for x in next[j + 1..].iter_mut() {
                *x = 0;
            }
            next[j + 1] = tail + 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn multinomial(kappa: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &k in kappa {
        for t in 1..=k as u64 {
            running += 1;
            acc = acc * BigUint::from(running) / BigUint::from(t);
        }
    }
    acc
}

/// `||k|| = sum_j j * k_j`.
pub fn weight(kappa: &[u32]) -> usize {
    kappa.iter().enumerate().map(|(j, &k)| j * k as usize).sum()
}

/// One summand `multinomial * p_weight * b^kappa` of a Tschirnhaus form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTerm {
    pub kappa: Vec<u32>,
    pub multinomial: BigUint,
    pub weight: usize,
}

impl FormTerm {
    /// `6*p_4*b1^2*b2` style rendering with the power sum unexpanded.
    pub fn render(&self) -> String {
        let mono: Vec<String> = self
            .kappa
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| if k == 1 { format!("b{j}") } else { format!("b{j}^{k}") })
            .collect();
        let coeff = if self.multinomial.is_one() { String::new() } else { format!("{}*", self.multinomial) };
        format!("{coeff}p_{}*{}", self.weight, mono.join("*"))
    }
}

/// Streams the summands of `T_i` without expanding power sums.
pub fn form_terms(n: usize, i: u32) -> impl Iterator<Item = FormTerm> {
    Compositions::new(n, i).map(|kappa| {
        let multinomial = multinomial(&kappa);
        let weight = weight(&kappa);
        FormTerm { kappa, multinomial, weight }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TschirnhausForm {
    pub n: usize,
    pub degree: u32,
    /// Integral polynomial in `b0..b{n-1}, a1..an`.
    pub poly: MultiPoly,
}

impl TschirnhausForm {
    /// Value at `(a, b)` over `QQ`.
    pub fn eval(&self, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
        let mut point: Vec<Scalar> = b.to_vec();
        point.extend(a.iter().cloned());
        self.poly.change_ring(&a[0].ring())?.eval(&point)
    }
}

pub fn tschirnhaus_form(n: usize, i: u32) -> Result<TschirnhausForm> {
    if n == 0 || i == 0 {
        return Err(AlgebraError::InvalidArgument("need n >= 1 and i >= 1".into()));
    }
    let p = symbolic_power_sums(n, (n - 1) * i as usize);
    let mut vars = b_vars(n);
    vars.extend(a_vars(n));
    let mut poly = MultiPoly::zero(RingKind::Integers, vars);
    for term in form_terms(n, i) {
        let m = Scalar::Int(BigInt::from(term.multinomial.clone()));
        for (amono, c) in p[term.weight].terms() {
            let mut exp = term.kappa.clone();
            exp.extend(amono.0.iter().copied());
            poly.add_term(Monomial(exp), c.checked_mul(&m)?)?;
        }
    }
    Ok(TschirnhausForm { n, degree: i, poly })
}

/// Degrees `i_1 < ... < i_k` of a Tschirnhaus complete intersection; `reduced`
/// intersects with the hyperplane `b_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersectionSpec {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub reduced: bool,
}

impl CompleteIntersectionSpec {
    pub fn new(n: usize, degrees: Vec<u32>, reduced: bool) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidArgument("n must be >= 1".into()));
        }
        if degrees.is_empty() || degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::InvalidArgument("degrees must be strictly increasing and >= 1".into()));
        }
        Ok(CompleteIntersectionSpec { n, degrees, reduced })
    }
}

/// Zeroes every term containing `var`, keeping the variable list.
pub fn set_var_zero(poly: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let i = poly.var_index(var)?;
    MultiPoly::from_terms(
        poly.ring().clone(),
        poly.vars().to_vec(),
        poly.terms().filter(|(m, _)| m.0[i] == 0).map(|(m, c)| (m.0.clone(), c.clone())),
    )
}

pub fn complete_intersection(spec: &CompleteIntersectionSpec) -> Result<Vec<TschirnhausForm>> {
    spec.degrees
        .iter()
        .map(|&i| {
            let mut f = tschirnhaus_form(spec.n, i)?;
            if spec.reduced {
                f.poly = set_var_zero(&f.poly, "b0")?;
            }
            Ok(f)
        })
        .collect()
}

/// One-parameter families of polynomials used for the smoothness arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pencil {
    /// `x^n + a`
    Radical,
    /// `x^n + a x`
    RadicalLinear,
}

impl Pencil {
    /// Position `k` of the parameter in `(a_1, ..., a_n)`.
    pub fn slot(self, n: usize) -> usize {
        match self {
            Pencil::Radical => n,
            Pencil::RadicalLinear => n - 1,
        }
    }

    /// Period of the nonvanishing power sums: `n` or `n - 1`.
    pub fn period(self, n: usize) -> usize {
        match self {
            Pencil::Radical => n,
            Pencil::RadicalLinear => n - 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pencil::Radical => "x^n+a",
            Pencil::RadicalLinear => "x^n+ax",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "radical" | "x^n+a" => Ok(Pencil::Radical),
            "radical-linear" | "linear" | "x^n+ax" => Ok(Pencil::RadicalLinear),
            other => Err(AlgebraError::Parse(format!("unknown pencil `{other}`"))),
        }
    }

    /// Coefficient vector of the member with parameter value `a`.
    pub fn coeffs<T: Ring>(self, n: usize, a: &T) -> CoeffVector<T> {
        let mut c = vec![a.zero_like(); n];
        c[self.slot(n) - 1] = a.clone();
        CoeffVector::new(c).expect("n >= 1")
    }

    /// Power sums `p_0..p_kmax` on the pencil as integral polynomials in `a`:
    /// `p_k = m (-a)^{k/m}` when the period `m` divides `k`, else `0`
    /// (plus `p_0 = n` for the linear pencil, whose extra root is `0`).
    pub fn power_sums(self, n: usize, kmax: usize) -> Vec<MultiPoly> {
        let vars = vec!["a".to_string()];
        let m = self.period(n);
        (0..=kmax)
            .map(|k| {
                let ring = RingKind::Integers;
                if k == 0 {
                    return MultiPoly::constant(ring.clone(), vars.clone(), ring.from_int(n as i64)).unwrap();
                }
                if k % m != 0 {
                    return MultiPoly::zero(ring, vars.clone());
                }
                let e = (k / m) as u32;
                let sign = if e.is_multiple_of(2) { 1 } else { -1 };
                MultiPoly::from_terms(ring.clone(), vars.clone(), [(vec![e], ring.from_int(sign * m as i64))]).unwrap()
            })
            .collect()
    }
}

/// Restricts a form to a pencil; the result lives in `b0..b{n-1}, a`.
pub fn radical_specialize(form: &TschirnhausForm, pencil: Pencil) -> Result<MultiPoly> {
    let n = form.n;
    let mut vars = b_vars(n);
    vars.push("a".into());
    let mut all = vars.clone();
    all.extend(a_vars(n));
    let lifted = form.poly.with_vars(all)?;
    let ring = RingKind::Integers;
    let a_poly = MultiPoly::variable(ring.clone(), vars.clone(), "a")?;
    let zero = MultiPoly::zero(ring, vars);
    let names = a_vars(n);
    let subs: Vec<(&str, Substitution)> = names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let s = if k + 1 == pencil.slot(n) { a_poly.clone() } else { zero.clone() };
            (name.as_str(), Substitution::Poly(s))
        })
        .collect();
    lifted.specialize(&subs)
}

/// `T_i` on a pencil built directly from the pencil's power sums.
pub fn pencil_form(n: usize, i: u32, pencil: Pencil) -> Result<MultiPoly> {
    let p = pencil.power_sums(n, (n - 1) * i as usize);
    let mut vars = b_vars(n);
    vars.push("a".into());
    let mut poly = MultiPoly::zero(RingKind::Integers, vars);
    for term in form_terms(n, i) {
        let pk = &p[term.weight];
        if pk.is_zero() {
            continue;
        }
        let m = Scalar::Int(BigInt::from(term.multinomial));
        for (amono, c) in pk.terms() {
            let mut exp = term.kappa.clone();
            exp.push(amono.0[0]);
            poly.add_term(Monomial(exp), c.checked_mul(&m)?)?;
        }
    }
    Ok(poly)
}

/// Drops the coordinates eliminated by the linear form on a pencil:
/// `b0` for `x^n + a`, `b0` and `b{n-1}` for `x^n + a x`.
pub fn restrict_to_chart(poly: &MultiPoly, n: usize, pencil: Pencil) -> Result<MultiPoly> {
    let zero = poly.ring().zero();
    let last = format!("b{}", n - 1);
    let mut subs: Vec<(&str, Substitution)> = vec![("b0", Substitution::Value(zero.clone()))];
    if pencil == Pencil::RadicalLinear {
        subs.push((last.as_str(), Substitution::Value(zero)));
    }
    poly.specialize(&subs)
}

/// Chart variables left by [`restrict_to_chart`], followed by `a`.
pub fn chart_vars(n: usize, pencil: Pencil) -> Vec<String> {
    let top = match pencil {
        Pencil::Radical => n,
        Pencil::RadicalLinear => n - 1,
    };
    let mut v = indexed_vars("b", 1..top);
    v.push("a".into());
    v
}

fn chart_term(vars_len: usize, pairs: &[(usize, u32)], a_exp: u32, c: i64) -> (Vec<u32>, Scalar) {
    let mut exp = vec![0u32; vars_len];
    for &(j, e) in pairs {
        exp[j - 1] += e;
    }
    exp[vars_len - 1] = a_exp;
    (exp, Scalar::Int(BigInt::from(c)))
}

/// Displayed closed form of the quadric `T_2` on a pencil, in [`chart_vars`].
///
/// `x^n + a`: `-2na sum_{i <= (n-1)/2} b_i b_{n-i}` (n odd) or
/// `-na (b_{n/2}^2 + 2 sum_{i < n/2} b_i b_{n-i})` (n even).
/// `x^n + a x`: the same with `n` replaced by `n - 1` throughout.
pub fn quadric_closed_form(n: usize, pencil: Pencil) -> Result<MultiPoly> {
    let m = pencil.period(n);
    if m < 2 {
        return Err(AlgebraError::InvalidArgument("pencil too small for a quadric".into()));
    }
    let vars = chart_vars(n, pencil);
    let len = vars.len();
    let mut terms = Vec::new();
    for i in 1..=(m - 1) / 2 {
        terms.push(chart_term(len, &[(i, 1), (m - i, 1)], 1, -2 * m as i64));
    }
    if m.is_multiple_of(2) {
        terms.push(chart_term(len, &[(m / 2, 2)], 1, -(m as i64)));
    }
    MultiPoly::from_terms(RingKind::Integers, vars, terms)
}

/// Closed-form partial `d T_2 / d b_j = -2 m a b_{m-j}` with `m` the pencil period.
pub fn quadric_closed_partial(n: usize, pencil: Pencil, j: usize) -> Result<MultiPoly> {
    let m = pencil.period(n);
    let vars = chart_vars(n, pencil);
    if j == 0 || j >= m {
        return Err(AlgebraError::InvalidArgument(format!("index {j} outside 1..{}", m - 1)));
    }
    let len = vars.len();
    MultiPoly::from_terms(RingKind::Integers, vars, [chart_term(len, &[(m - j, 1)], 1, -2 * m as i64)])
}

fn check_shapes<T>(a: &CoeffVector<T>, b: &[T]) -> Result<()>
where
    T: Clone,
{
    if b.len() != a.degree() {
        return Err(AlgebraError::InvalidArgument(format!(
            "Tschirnhaus vector has {} entries, expected {}",
            b.len(),
            a.degree()
        )));
    }
    Ok(())
}

/// Power sums `p_0..p_kmax` of the transformed roots, division free:
/// `p_k(c) = sum_m [z^m] w(z)^k * p_m(a)` with `w = sum_j b_j z^j`.
pub fn transformed_power_sums<T: Ring>(a: &CoeffVector<T>, b: &[T], kmax: usize) -> Result<Vec<T>> {
    check_shapes(a, b)?;
    let n = a.degree();
    let pa = power_sums(a, (n - 1) * kmax);
    let mut out = Vec::with_capacity(kmax + 1);
    let mut wk: Vec<T> = vec![b[0].one_like()];
    out.push(b[0].int_like(n as i64));
    for _ in 1..=kmax {
        let mut next = vec![b[0].zero_like(); wk.len() + n - 1];
        for (i, x) in wk.iter().enumerate() {
            if x.is_zero_elem() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                next[i + j] = next[i + j].plus(&x.times(y));
            }
        }
        wk = next;
        let pk = wk.iter().enumerate().fold(b[0].zero_like(), |acc, (m, x)| acc.plus(&x.times(pa.get(m))));
        out.push(pk);
    }
    Ok(out)
}

/// The transformed monic polynomial's coefficients `c`, through power sums.
pub fn transform_coeffs<T: Field>(a: &CoeffVector<T>, b: &[T]) -> Result<CoeffVector<T>> {
    let p = transformed_power_sums(a, b, a.degree())?;
    coeffs_from_power_sums(&p[1..])
}

/// Independent route: characteristic polynomial of `w(M)` for the companion matrix `M` of `a`.
pub fn transform_coeffs_oracle<T: Ring>(a: &CoeffVector<T>, b: &[T], cap: usize) -> Result<CoeffVector<T>> {
    check_shapes(a, b)?;
    let n = a.degree();
    if n > cap {
        return Err(AlgebraError::InvalidArgument(format!("oracle limited to n <= {cap}, got {n}")));
    }
    let sample = &b[0];
    // multiplication by z on the basis 1, z, ..., z^{n-1}
    let mut comp: Matrix<T> = vec![vec![sample.zero_like(); n]; n];
    for j in 0..n - 1 {
        comp[j + 1][j] = sample.one_like();
    }
    for k in 0..n {
        comp[k][n - 1] = a.get(n - k).negated();
    }
    let mut power = crate::linalg::identity(n, sample);
    let mut w: Matrix<T> = vec![vec![sample.zero_like(); n]; n];
    for bj in b {
        for r in 0..n {
            for c in 0..n {
                w[r][c] = w[r][c].plus(&bj.times(&power[r][c]));
            }
        }
        power = crate::linalg::mat_mul(&power, &comp);
    }
    let cp = charpoly(&w);
    CoeffVector::new(cp[1..].to_vec())
}

/// Whether `b` lies on the Tschirnhaus complete intersection of `a` (exact).
pub fn membership<T: Ring>(a: &CoeffVector<T>, b: &[T], spec: &CompleteIntersectionSpec) -> Result<bool> {
    if spec.n != a.degree() {
        return Err(AlgebraError::InvalidArgument("spec degree does not match polynomial degree".into()));
    }
    if spec.reduced && !b[0].is_zero_elem() {
        return Ok(false);
    }
    let kmax = *spec.degrees.last().unwrap() as usize;
    let p = transformed_power_sums(a, b, kmax)?;
    Ok(spec.degrees.iter().all(|&i| p[i as usize].is_zero_elem()))
}

/// Numeric membership: listed power sums below `tol` relative to `max(1, |b|^i)`.
pub fn membership_numeric(
    a: &CoeffVector<Complex64>,
    b: &[Complex64],
    spec: &CompleteIntersectionSpec,
    tol: f64,
) -> Result<bool> {
    let kmax = *spec.degrees.last().unwrap() as usize;
    let p = transformed_power_sums(a, b, kmax)?;
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    if spec.reduced && b[0].norm() > tol * scale {
        return Ok(false);
    }
    Ok(spec.degrees.iter().all(|&i| p[i as usize].norm() <= tol * scale.powi(i as i32)))
}

/// `c_1 = ... = c_k = 0` for the transformed polynomial.
pub fn coefficient_vanishing<T: Field>(a: &CoeffVector<T>, b: &[T], k: usize) -> Result<bool> {
    let c = transform_coeffs(a, b)?;
    Ok(c.coeffs().iter().take(k).all(Ring::is_zero_elem))
}

/// Largest distance after greedily matching the roots of `c` with `w(z_i)` for the roots `z_i` of `a`.
pub fn root_correspondence_error(a: &CoeffVector<Complex64>, b: &[Complex64], c: &CoeffVector<Complex64>) -> f64 {
    let za = roots_c64(&a.monic_coeffs());
    let zc = roots_c64(&c.monic_coeffs());
    let images: Vec<Complex64> =
        za.iter().map(|z| b.iter().rev().fold(Complex64::zero(), |acc, bj| acc * z + bj)).collect();
    greedy_match_error(&images, &zc)
}

/// Max distance of a greedy nearest-pair matching between two equal-size multisets.
pub fn greedy_match_error(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    let mut used = vec![false; ys.len()];
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut done = vec![false; xs.len()];
    let mut worst = 0.0f64;
    for (d, i, j) in pairs {
        if !done[i] && !used[j] {
            done[i] = true;
            used[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// Substitution `b = S b'` solving `T_1 = 0` for `b_0`: row 0 is `-p_i / n`, the rest the identity.
pub fn t1_substitution(a: &CoeffVector<BigRational>) -> Matrix<BigRational> {
    let n = a.degree();
    let p = power_sums(a, n - 1);
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut s = vec![vec![BigRational::zero(); n - 1]; n];
    for i in 1..n {
        s[0][i - 1] = -p.get(i) / &nn;
        s[i][i - 1] = BigRational::one();
    }
    s
}

/// Gram matrix `(p_{i+j})` of `T_2`, so `T_2(b) = b^T G b`.
pub fn t2_gram(a: &CoeffVector<BigRational>) -> Matrix<BigRational> {
    let n = a.degree();
    let p = power_sums(a, 2 * n - 2);
    (0..n).map(|i| (0..n).map(|j| p.get(i + j).clone()).collect()).collect()
}

/// Gram matrix of the quadric `T_12` in the coordinates `b_1..b_{n-1}` of `T_1`.
pub fn t12_gram(a: &CoeffVector<BigRational>) -> Matrix<BigRational> {
    let s = t1_substitution(a);
    let g = t2_gram(a);
    mat_mul(&mat_mul(&transpose(&s), &g), &s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn compositions_are_complete_and_ordered() {
        let all: Vec<Vec<u32>> = Compositions::new(3, 2).collect();
        assert_eq!(all, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
        assert_eq!(Compositions::new(9, 4).count(), 495);
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
    }

    #[test]
    fn linear_form_small_cases() {
        let t = tschirnhaus_form(2, 1).unwrap();
        assert_eq!(t.poly.to_string(), "-b1*a1 + 2*b0");
        let t3 = tschirnhaus_form(3, 1).unwrap();
        assert_eq!(t3.poly.to_string(), "b2*a1^2 - b1*a1 - 2*b2*a2 + 3*b0");
    }

    #[test]
    fn transform_examples() {
        let a = CoeffVector::new(vec![q(-3), q(2)]).unwrap();
        let id = transform_coeffs(&a, &[q(0), q(1)]).unwrap();
        assert_eq!(id.coeffs(), &[q(-3), q(2)]);
        let cst = transform_coeffs(&a, &[q(1), q(0)]).unwrap();
        assert_eq!(cst.coeffs(), &[q(-2), q(1)]);
        let dbl = transform_coeffs(&a, &[q(0), q(2)]).unwrap();
        assert_eq!(dbl.coeffs(), &[q(-6), q(8)]);
        for b in [[q(0), q(1)], [q(1), q(0)], [q(0), q(2)]] {
            assert_eq!(transform_coeffs_oracle(&a, &b, DEFAULT_ORACLE_CAP).unwrap(), transform_coeffs(&a, &b).unwrap());
        }
    }

    #[test]
    fn pencil_routes_agree() {
        for n in 3..7 {
            for pencil in [Pencil::Radical, Pencil::RadicalLinear] {
                let f = tschirnhaus_form(n, 2).unwrap();
                assert_eq!(radical_specialize(&f, pencil).unwrap(), pencil_form(n, 2, pencil).unwrap());
            }
        }
    }
}
