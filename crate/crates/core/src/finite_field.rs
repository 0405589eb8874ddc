//! Finite fields `F_{p^m}` as `F_p[x]/(f)`.
//!
//! The modulus `f` is the first monic irreducible of degree `m` in a fixed
//! enumeration order (constant term varies fastest), so every run builds the
//! same field. Elements are coefficient vectors of length `m`, low degree first.

use crate::arith::{is_prime_u64, prime_divisors};
use crate::error::{AlgebraError, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    m: u32,
    /// Monic modulus, low degree first, length `m + 1`.
    modulus: Vec<u64>,
}

pub type FfElem = Vec<u64>;

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::InvalidArgument(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(AlgebraError::InvalidArgument("extension degree must be >= 1".into()));
        }
        let modulus = first_irreducible(p, m as usize);
        Ok(FiniteField { p, m, modulus })
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::InvalidArgument(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidArgument(
                "modulus must be monic of degree >= 1 with reduced coefficients".into(),
            ));
        }
        if !is_irreducible(p, &modulus) {
            return Err(AlgebraError::InvalidArgument("modulus is reducible".into()));
        }
        let m = (modulus.len() - 1) as u32;
        Ok(FiniteField { p, m, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m)
    }

    /// Field order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn name(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.m)
        }
    }

    pub fn zero(&self) -> FfElem {
        vec![0; self.m as usize]
    }

    pub fn one(&self) -> FfElem {
        self.from_int(1)
    }

    /// The class of `x`, which generates the field over `F_p`.
    pub fn generator(&self) -> FfElem {
        let mut e = self.zero();
        if self.m == 1 {
            e[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            e[1] = 1;
        }
        e
    }

    pub fn from_int(&self, n: i64) -> FfElem {
        let mut e = self.zero();
        e[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn from_bigint(&self, n: &BigInt) -> FfElem {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        let mut e = self.zero();
        e[0] = r.to_u64().unwrap();
        e
    }

    pub fn from_rational(&self, q: &BigRational) -> Option<FfElem> {
        let d = self.from_bigint(q.denom());
        let inv = self.inv(&d)?;
        Some(self.mul(&self.from_bigint(q.numer()), &inv))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FfElem> {
        if coeffs.len() > self.m as usize {
            return Err(AlgebraError::Parse(format!("element of {} has at most {} coordinates", self.name(), self.m)));
        }
        let mut e = self.zero();
        for (slot, c) in e.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        Ok(e)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FfElem {
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FfElem {
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, self.p - y % self.p, self.p)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> FfElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FfElem {
        let prod = poly_mul(a, b, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m as usize, 0);
        r
    }

    pub fn pow(&self, a: &[u64], e: &BigUint) -> FfElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_int(&self, a: &[u64], e: &BigInt) -> Option<FfElem> {
        let (sign, mag) = e.clone().into_parts();
        if sign == Sign::Minus {
            Some(self.pow(&self.inv(a)?, &mag))
        } else {
            Some(self.pow(a, &mag))
        }
    }

    pub fn inv(&self, a: &[u64]) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, &(self.order() - 2u32)))
    }

    /// The `t`-th element in base-`p` digit order; inverse of [`Self::index_of`].
    pub fn element_from_index(&self, mut t: u64) -> FfElem {
        let mut e = self.zero();
        for slot in e.iter_mut() {
            *slot = t % self.p;
            t /= self.p;
        }
        e
    }

    pub fn index_of(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// An element of exact multiplicative order `n`, if `n` divides `q - 1`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<FfElem> {
        let q1 = self.order() - 1u32;
        let nb = BigUint::from(n);
        if n == 0 || !(&q1 % &nb).is_zero() {
            return None;
        }
        let cofactor = &q1 / &nb;
        let primes = prime_divisors(n);
        let one = self.one();
        // Small-weight candidates first: x, x+1, ..., then the integers.
        let mut candidates: Vec<FfElem> = Vec::new();
        let g = self.generator();
        for c in 0..self.p.min(64) {
            candidates.push(self.add(&g, &self.from_int(c as i64)));
        }
        for t in 2..self.p.min(64) {
            candidates.push(self.from_int(t as i64));
        }
        let mut t = 1u64;
        loop {
            let x = candidates.get((t - 1) as usize).cloned().unwrap_or_else(|| self.element_from_index(t));
            t += 1;
            if self.is_zero(&x) {
                continue;
            }
            let y = self.pow(&x, &cofactor);
            if primes.iter().all(|&l| self.pow(&y, &BigUint::from(n / l)) != one) {
                return Some(y);
            }
            if t > 1_000_000 {
                return None;
            }
        }
    }

    pub fn format_elem(&self, a: &[u64]) -> String {
        if self.m == 1 {
            a[0].to_string()
        } else {
            let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Parses `c` or `(c0,c1,...)`, integers reduced mod `p`.
    pub fn parse_elem(&self, s: &str) -> Result<FfElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let mut coeffs = Vec::new();
            for part in inner.split(',') {
                let v: BigInt =
                    part.trim().parse().map_err(|_| AlgebraError::Parse(format!("bad coordinate `{part}`")))?;
                coeffs.push(self.from_bigint(&v)[0]);
            }
            self.from_coeffs(&coeffs)
        } else {
            let v: BigInt = s.parse().map_err(|_| AlgebraError::Parse(format!("bad field element `{s}`")))?;
            Ok(self.from_bigint(&v))
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    out
}

/// Remainder by a monic `f`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        for (i, &c) in f.iter().enumerate() {
            let sub = mul_mod(lead, c, p);
            r[shift + i] = add_mod(r[shift + i], p - sub, p);
        }
        r = trim(r);
    }
    r
}

fn poly_rem_general(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let lead_inv = crate::arith::pow_mod(*b.last().unwrap(), p - 2, p);
    let monic: Vec<u64> = b.iter().map(|&c| mul_mod(c, lead_inv, p)).collect();
    poly_rem(a, &monic, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem_general(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test.
pub(crate) fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut frob = Vec::with_capacity(m + 1);
    let mut h = poly_rem(&x, f, p);
    frob.push(h.clone());
    for _ in 0..m {
        h = poly_pow_mod(&h, p, f, p);
        frob.push(h.clone());
    }
    if trim(frob[m].clone()) != poly_rem(&x, f, p) {
        return false;
    }
    for l in prime_divisors(m as u64) {
        let k = m / l as usize;
        let mut diff = frob[k].clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = add_mod(diff[1], p - 1, p);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
        }
        e >>= 1;
        if e > 0 {
            base = poly_rem(&poly_mul(&base, &base, p), f, p);
        }
    }
    acc
}

fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut tail = vec![0u64; m];
    loop {
        // advance the tail as a base-p counter
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i += 1;
        }
        let mut f = tail.clone();
        f.push(1);
        if f[0] != 0 && (p > 64 || !has_root(&f, p)) && is_irreducible(p, &f) {
            return f;
        }
    }
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| f.iter().rev().fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, p), c, p)) == 0)
}

impl std::fmt::Display for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Prime-power parse: `q -> (p, m)`.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = *prime_divisors(q).first()?;
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

impl FiniteField {
    pub fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 % self.p && a[1..].iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_deterministic_and_irreducible() {
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(is_irreducible(2, &[1, 1, 0, 0, 1]));
    }

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(3, 2).unwrap();
        for i in 1..9 {
            let a = f.element_from_index(i);
            let inv = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &inv)));
            assert_eq!(f.index_of(&a), i);
        }
        let g = f.primitive_root_of_unity(8).unwrap();
        assert!(f.is_one(&f.pow(&g, &BigUint::from(8u32))));
        assert!(!f.is_one(&f.pow(&g, &BigUint::from(4u32))));
    }

    #[test]
    fn rational_images() {
        let f = FiniteField::new(7, 1).unwrap();
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, vec![4]);
        assert!(f.from_rational(&BigRational::new(1.into(), 7.into())).is_none());
        assert_eq!(split_prime_power(49), Some((7, 2)));
        assert_eq!(split_prime_power(12), None);
    }
}
