//! Multiquadratic number fields `Q(sqrt(d_1), ..., sqrt(d_k))`.
//!
//! An element is a coefficient vector indexed by subsets `S` of the radicals,
//! standing for `sum_S c_S * prod_{i in S} sqrt(d_i)`. Radicands are kept
//! independent modulo rational squares, so the vector is a basis expansion and
//! the norm-based inverse below is exact.

use crate::numeric::{HpComplex, Real};
use crate::ring::{Field, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, Default)]
pub struct Tower {
    radicands: Arc<Vec<BigRational>>,
}

#[derive(Clone, Debug)]
pub struct TowerElem {
    radicands: Arc<Vec<BigRational>>,
    coeffs: Vec<BigRational>,
}

fn is_rational_square(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn mask_product(rads: &[BigRational], mask: usize) -> BigRational {
    let mut acc = BigRational::one();
    for (i, d) in rads.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc *= d;
        }
    }
    acc
}

fn mul_masks(a: &[BigRational], b: &[BigRational], rads: &[BigRational]) -> Vec<BigRational> {
    let len = a.len();
    let mut out = vec![BigRational::zero(); len];
    let products: Vec<BigRational> = (0..len).map(|m| mask_product(rads, m)).collect();
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[s ^ t] += x * y * &products[s & t];
        }
    }
    out
}

fn inv_rec(c: &[BigRational], rads: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = rads.len();
    if k == 0 {
        return (!c[0].is_zero()).then(|| vec![c[0].recip()]);
    }
    let half = c.len() / 2;
    let (u, v) = c.split_at(half);
    let sub = &rads[..k - 1];
    let d = &rads[k - 1];
    let uu = mul_masks(u, u, sub);
    let vv = mul_masks(v, v, sub);
    let norm: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - d * y).collect();
    let ninv = inv_rec(&norm, sub)?;
    let mut out = mul_masks(u, &ninv, sub);
    out.extend(mul_masks(v, &ninv, sub).into_iter().map(|x| -x));
    Some(out)
}

impl Tower {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn radicands(&self) -> &[BigRational] {
        &self.radicands
    }

    /// Degree over `Q`.
    pub fn degree(&self) -> usize {
        1 << self.radicands.len()
    }

    pub fn rational(&self, q: &BigRational) -> TowerElem {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q.clone();
        TowerElem { radicands: self.radicands.clone(), coeffs }
    }

    /// A square root of `d`, adjoining a new radical only when `d` is not
    /// already a square in the current field.
    pub fn sqrt(&mut self, d: &BigRational) -> TowerElem {
        if d.is_zero() {
            return self.rational(d);
        }
        if let Some(r) = is_rational_square(d) {
            return self.rational(&r);
        }
        for mask in 1..self.degree() {
            let dm = mask_product(&self.radicands, mask);
            if let Some(r) = is_rational_square(&(d * &dm)) {
                // sqrt(d) = sqrt(d * dm) / sqrt(dm) = r * prod sqrt(d_i) / dm
                let mut e = self.rational(&BigRational::zero());
                e.coeffs[mask] = r / dm;
                return e;
            }
        }
        let mut rads = (*self.radicands).clone();
        rads.push(d.clone());
        self.radicands = Arc::new(rads);
        let mut e = self.rational(&BigRational::zero());
        let last = e.coeffs.len() / 2;
        e.coeffs[last] = BigRational::one();
        e
    }

    /// Rebuilds a tower from stored radicands, which must already be
    /// independent modulo squares (as produced by [`Tower::sqrt`]).
    pub fn from_radicands(radicands: Vec<BigRational>) -> Self {
        Tower { radicands: Arc::new(radicands) }
    }

    /// Element with the given basis coefficients, indexed by radical subsets.
    pub fn element(&self, coeffs: Vec<BigRational>) -> Option<TowerElem> {
        (coeffs.len() == self.degree()).then(|| TowerElem { radicands: self.radicands.clone(), coeffs })
    }

    /// Lifts an element built before later radicals were adjoined.
    pub fn embed(&self, x: &TowerElem) -> TowerElem {
        x.extended_to(&self.radicands)
    }
}

impl TowerElem {
    pub fn radicands(&self) -> &[BigRational] {
        &self.radicands
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn extended_to(&self, rads: &Arc<Vec<BigRational>>) -> TowerElem {
        debug_assert!(rads.len() >= self.radicands.len() && rads[..self.radicands.len()] == self.radicands[..]);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << rads.len(), BigRational::zero());
        TowerElem { radicands: rads.clone(), coeffs }
    }

    fn aligned(&self, rhs: &TowerElem) -> (TowerElem, TowerElem) {
        if self.radicands.len() >= rhs.radicands.len() {
            (self.clone(), rhs.extended_to(&self.radicands))
        } else {
            (self.extended_to(&rhs.radicands), rhs.clone())
        }
    }

    /// Numeric value, taking the principal branch of each square root.
    pub fn shadow(&self, prec: u32) -> HpComplex {
        let roots: Vec<HpComplex> = self
            .radicands
            .iter()
            .map(|d| {
                let r = Real::from_rational(&d.abs(), prec + 16).sqrt().unwrap();
                if d.is_negative() {
                    HpComplex::new(Real::zero(prec + 16), r)
                } else {
                    HpComplex::from_real(r)
                }
            })
            .collect();
        let mut acc = HpComplex::zero(prec + 16);
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = HpComplex::from_rational(c, prec + 16);
            for (i, r) in roots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    t = t.times(r);
                }
            }
            acc = acc.plus(&t);
        }
        HpComplex::new(acc.re.with_prec(prec), acc.im.with_prec(prec))
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> TowerElem {
        let f = if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
        };
        TowerElem { radicands: self.radicands.clone(), coeffs: self.coeffs.iter().map(|c| c * &f).collect() }
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Ring for TowerElem {
    fn zero_like(&self) -> Self {
        TowerElem { radicands: self.radicands.clone(), coeffs: vec![BigRational::zero(); self.coeffs.len()] }
    }
    fn one_like(&self) -> Self {
        self.int_like(1)
    }
    fn int_like(&self, n: i64) -> Self {
        let mut e = self.zero_like();
        e.coeffs[0] = BigRational::from_integer(n.into());
        e
    }
    fn plus(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        TowerElem { radicands: a.radicands, coeffs }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let coeffs = mul_masks(&a.coeffs, &b.coeffs, &a.radicands);
        TowerElem { radicands: a.radicands, coeffs }
    }
    fn negated(&self) -> Self {
        TowerElem { radicands: self.radicands.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Field for TowerElem {
    fn inverse(&self) -> Option<Self> {
        inv_rec(&self.coeffs, &self.radicands).map(|coeffs| TowerElem { radicands: self.radicands.clone(), coeffs })
    }
    fn rational_like(&self, q: &BigRational) -> Option<Self> {
        let mut e = self.zero_like();
        e.coeffs[0] = q.clone();
        Some(e)
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let roots: Vec<String> = self
                .radicands
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, d)| format!("sqrt({d})"))
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if roots.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&roots.join("*"))?;
            } else {
                write!(f, "{mag}*{}", roots.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_roots_square_back() {
        let mut t = Tower::new();
        let s2 = t.sqrt(&q(2, 1));
        let s3 = t.sqrt(&q(-3, 1));
        let s6 = t.sqrt(&q(-6, 1));
        assert_eq!(t.radicands().len(), 2, "sqrt(-6) is sqrt(2)*sqrt(-3) up to sign");
        assert_eq!(s6.times(&s6).as_rational(), Some(q(-6, 1)));
        let s8 = t.sqrt(&q(8, 9));
        assert_eq!(s8.times(&s8), t.rational(&q(8, 9)));
        let s2 = t.embed(&s2);
        let x = s2.plus(&s3).plus(&t.rational(&q(1, 2)));
        let inv = x.inverse().unwrap();
        assert!(inv.times(&x).is_rational());
        assert_eq!(inv.times(&x).as_rational(), Some(q(1, 1)));
        let sh = x.shadow(128).to_c64();
        assert!((sh.re - (2f64.sqrt() + 0.5)).abs() < 1e-14 && (sh.im - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn display() {
        let mut t = Tower::new();
        let s = t.sqrt(&q(5, 1));
        let x = s.mul_pow2(-1).plus(&t.rational(&q(-1, 2)));
        assert_eq!(x.to_string(), "-1/2 + 1/2*sqrt(5)");
    }
}
