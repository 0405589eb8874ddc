//! Power sums and elementary symmetric functions via Newton's identities.
//!
//! A monic polynomial `z^n + a_1 z^{n-1} + ... + a_n` is stored as its
//! [`CoeffVector`] `(a_1, ..., a_n)`; its roots' power sums `p_k` satisfy
//! `p_k + a_1 p_{k-1} + ... + a_{k-1} p_1 + k a_k = 0` for `k <= n` and the
//! same recurrence without the `k a_k` term above `n`.

use crate::error::{AlgebraError, Result};
use crate::linalg::{determinant, Matrix};
use crate::poly::{indexed_vars, MultiPoly};
use crate::ring::{Field, Ring};
use crate::scalar::{parse_rational, RingKind};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector<T> {
    coeffs: Vec<T>,
}

impl<T: Clone> CoeffVector<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(AlgebraError::InvalidArgument("degree must be at least 1".into()));
        }
        Ok(CoeffVector { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `(a_1, ..., a_n)`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a_k` for `1 <= k <= n`.
    pub fn get(&self, k: usize) -> &T {
        &self.coeffs[k - 1]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> CoeffVector<U> {
        CoeffVector { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl CoeffVector<BigRational> {
    /// Comma-separated rationals `a_1,...,a_n`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl<T: Ring> CoeffVector<T> {
    /// Coefficients of the monic polynomial, leading `1` first.
    pub fn monic_coeffs(&self) -> Vec<T> {
        let mut out = vec![self.coeffs[0].one_like()];
        out.extend(self.coeffs.iter().cloned());
        out
    }

    pub fn eval(&self, z: &T) -> T {
        self.monic_coeffs().iter().fold(z.zero_like(), |acc, c| acc.times(z).plus(c))
    }
}

/// `p_0, ..., p_kmax` with `p_0 = n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums<T> {
    n: usize,
    sums: Vec<T>,
}

impl<T: Clone> PowerSums<T> {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn max_index(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn get(&self, k: usize) -> &T {
        &self.sums[k]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.sums
    }
}

pub fn power_sums<T: Ring>(a: &CoeffVector<T>, kmax: usize) -> PowerSums<T> {
    let n = a.degree();
    let sample = &a.coeffs[0];
    let mut p: Vec<T> = Vec::with_capacity(kmax + 1);
    p.push(sample.int_like(n as i64));
    for k in 1..=kmax {
        let mut acc = if k <= n { a.get(k).times(&sample.int_like(k as i64)) } else { sample.zero_like() };
        for i in k.saturating_sub(n).max(1)..k {
            acc = acc.plus(&a.get(k - i).times(&p[i]));
        }
        p.push(acc.negated());
    }
    PowerSums { n, sums: p }
}

/// Inverts Newton's identities: `(p_1, ..., p_n) -> (a_1, ..., a_n)`.
/// Fails when some `k <= n` is not invertible in the coefficient field.
pub fn coeffs_from_power_sums<T: Field>(p: &[T]) -> Result<CoeffVector<T>> {
    let n = p.len();
    if n == 0 {
        return Err(AlgebraError::InvalidArgument("need at least one power sum".into()));
    }
    let mut a: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = p[k - 1].clone();
        for i in 1..k {
            acc = acc.plus(&a[k - i - 1].times(&p[i - 1]));
        }
        let kinv = p[0]
            .int_like(k as i64)
            .inverse()
            .ok_or_else(|| AlgebraError::NotInvertible(format!("{k} (Newton inversion needs 1..={n} invertible)")))?;
        a.push(acc.times(&kinv).negated());
    }
    CoeffVector::new(a)
}

pub fn power_sums_from_roots(roots: &[Complex64], kmax: usize) -> Vec<Complex64> {
    (0..=kmax).map(|k| roots.iter().map(|z| z.powu(k as u32)).sum()).collect()
}

/// Monic coefficients `(a_1, ..., a_n)` of `prod (z - r_i)`.
pub fn coeffs_from_roots<T: Ring>(roots: &[T]) -> CoeffVector<T> {
    let mut c = vec![roots[0].one_like()];
    for r in roots {
        let mut next = c.clone();
        next.push(r.zero_like());
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].minus(&ci.times(r));
        }
        c = next;
    }
    CoeffVector { coeffs: c[1..].to_vec() }
}

/// Power sums of the generic monic polynomial, as integral polynomials in `a1..an`.
pub fn symbolic_power_sums(n: usize, kmax: usize) -> Vec<MultiPoly> {
    let vars = indexed_vars("a", 1..n + 1);
    let a: Vec<MultiPoly> =
        vars.iter().map(|v| MultiPoly::variable(RingKind::Integers, vars.clone(), v).unwrap()).collect();
    let cv = CoeffVector { coeffs: a };
    power_sums(&cv, kmax).sums
}

/// Discriminant of a monic polynomial, via the Sylvester resultant with its derivative.
pub fn discriminant(a: &CoeffVector<BigRational>) -> BigRational {
    let n = a.degree();
    if n == 1 {
        return BigRational::from_integer(1.into());
    }
    let f = a.monic_coeffs();
    let df: Vec<BigRational> = (0..n).map(|i| &f[i] * BigRational::from_integer(((n - i) as i64).into())).collect();
    let size = 2 * n - 1;
    let mut s: Matrix<BigRational> = vec![vec![BigRational::zero(); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f.iter().enumerate() {
            s[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().enumerate() {
            s[n - 1 + r][r + j] = c.clone();
        }
    }
    let res = determinant(&s);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Hankel matrix `(p_{i+j})_{0 <= i, j < n}`, whose determinant is the discriminant.
pub fn hankel<T: Clone>(p: &PowerSums<T>) -> Matrix<T> {
    let n = p.degree();
    (0..n).map(|i| (0..n).map(|j| p.get(i + j).clone()).collect()).collect()
}

// Panicking trait impl for use in generic recurrences over polynomials.
impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.ring().clone(), self.vars().to_vec())
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.ring().clone(), self.vars().to_vec(), self.ring().one()).unwrap()
    }
    fn int_like(&self, n: i64) -> Self {
        MultiPoly::constant(self.ring().clone(), self.vars().to_vec(), self.ring().from_int(n)).unwrap()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("polynomial mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs).expect("polynomial mismatch")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("polynomial mismatch")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cubic_power_sums() {
        // roots 1, 2, 3: z^3 - 6 z^2 + 11 z - 6
        let a = CoeffVector::new(vec![q(-6), q(11), q(-6)]).unwrap();
        let p = power_sums(&a, 5);
        let expect: Vec<BigRational> = [3, 6, 14, 36, 98, 276].iter().map(|&x| q(x)).collect();
        assert_eq!(p.as_slice(), &expect[..]);
        assert_eq!(coeffs_from_power_sums(&p.as_slice()[1..4]).unwrap(), a);
        assert_eq!(discriminant(&a), q(4));
        assert_eq!(determinant(&hankel(&p)), q(4));
    }

    #[test]
    fn symbolic_matches_textbook() {
        let p = symbolic_power_sums(3, 3);
        assert_eq!(p[1].to_string(), "-a1");
        assert_eq!(p[2].to_string(), "a1^2 - 2*a2");
        assert_eq!(p[3].to_string(), "-a1^3 + 3*a1*a2 - 3*a3");
    }

    #[test]
    fn newton_inversion_needs_small_integers_invertible() {
        let f = RingKind::finite(3, 1).unwrap();
        let p = vec![f.one(), f.one(), f.one()];
        assert!(matches!(coeffs_from_power_sums(&p), Err(AlgebraError::NotInvertible(_))));
    }
}
