//! Arbitrary-precision binary floating point and complex arithmetic, plus a
//! polynomial root finder (Aberth iteration in `f64`, Newton polish at full precision).
//!
//! A [`Real`] is `mant * 2^exp` with `|mant| < 2^prec`. Conversion to and from
//! `BigRational` is exact in one direction (to rational) and correctly rounded
//! in the other, which keeps the numeric shadow of exact data honest.

use crate::ring::{Field, Ring};
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub const DEFAULT_PRECISION: u32 = 128;

/// Working precision in bits: `TSCH_PRECISION` if set (minimum 64), else 128.
pub fn default_precision() -> u32 {
    std::env::var("TSCH_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|p| p.max(64))
        .unwrap_or(DEFAULT_PRECISION)
}

#[derive(Clone, Debug)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        Real { mant: n, exp: 0, prec }.normalized()
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let mantissa = if exponent == 0 {
            (bits & 0xf_ffff_ffff_ffff) << 1
        } else {
            (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
        };
        Real { mant: BigInt::from(mantissa) * sign, exp: exponent - 1075, prec }.normalized()
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let shift = prec as i64 + 2 - (nb - db);
        let scaled = if shift >= 0 { q.numer() << shift as usize } else { q.numer() >> (-shift) as usize };
        let (quot, rem) = scaled.div_rem(q.denom());
        // round half away from zero
        let twice = rem.abs() * 2u32;
        let quot = if twice >= *q.denom() { quot + q.numer().signum() } else { quot };
        Real { mant: quot, exp: -shift, prec }.normalized()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Real { prec, ..self.clone() }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let negative = self.mant.is_negative();
            let mag = self.mant.abs();
            let mut q: BigInt = &mag >> shift as usize;
            if mag.bit(shift - 1) {
                q += 1;
            }
            self.exp += shift as i64;
            if q.bits() > self.prec as u64 {
                q >>= 1;
                self.exp += 1;
            }
            self.mant = if negative { -q } else { q };
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exponent of the most significant bit (`floor(log2 |x|)`), `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64 - 1)
    }

    pub fn neg(&self) -> Self {
        Real { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        let (top_a, top_b) = (self.log2_floor().unwrap(), rhs.log2_floor().unwrap());
        if top_b < top_a - prec as i64 - 4 {
            return self.with_prec(prec);
        }
        if top_a < top_b - prec as i64 - 4 {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let m = (&self.mant << (self.exp - e) as usize) + (&rhs.mant << (rhs.exp - e) as usize);
        Real { mant: m, exp: e, prec }.normalized()
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        Real { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp, prec: self.prec.max(rhs.prec) }.normalized()
    }

    /// `None` on division by zero.
    pub fn div(&self, rhs: &Real) -> Option<Real> {
        if rhs.is_zero() {
            return None;
        }
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Some(Real::zero(prec));
        }
        let shift = (prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << shift as usize) / &rhs.mant;
        Some(Real { mant: q, exp: self.exp - rhs.exp - shift, prec }.normalized())
    }

    /// `None` for negative input.
    pub fn sqrt(&self) -> Option<Real> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut shift = (2 * self.prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let root = (&self.mant << shift as usize).sqrt();
        Some(Real { mant: root, exp: (self.exp - shift) / 2, prec: self.prec }.normalized())
    }

    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    /// Exact value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 62).max(0);
        let m = (&self.mant >> shift as usize).to_f64().unwrap();
        let e = self.exp + shift;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split to avoid intermediate overflow in powi
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        // estimate the decimal exponent, then correct
        let mut e10 = ((self.log2_floor().unwrap() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigRational::from_integer(BigInt::from(10));
        let pow10 = |k: i64| -> BigRational {
            if k >= 0 {
                BigRational::from_integer(BigInt::from(10).pow(k as u32))
            } else {
                BigRational::new(BigInt::one(), BigInt::from(10).pow((-k) as u32))
            }
        };
        let mut scaled = &q / pow10(e10);
        while scaled >= ten {
            scaled /= &ten;
            e10 += 1;
        }
        while scaled < BigRational::one() {
            scaled *= &ten;
            e10 -= 1;
        }
        let shifted = scaled * pow10(digits as i64 - 1);
        let mut int = shifted.round().to_integer();
        if int >= BigInt::from(10).pow(digits as u32) {
            int /= 10;
            e10 += 1;
        }
        let s = int.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mantissa = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
        format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e10)
    }

    /// Parses a decimal literal such as `-1.5e-3` (or a rational `a/b`).
    pub fn parse(s: &str, prec: u32) -> Option<Real> {
        let s = s.trim();
        let (body, e10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let mut q = crate::scalar::parse_rational(body).ok()?;
        let ten = BigInt::from(10);
        if e10 >= 0 {
            q *= BigRational::from_integer(ten.pow(e10 as u32));
        } else {
            q /= BigRational::from_integer(ten.pow((-e10) as u32));
        }
        Some(Real::from_rational(&q, prec))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Real {
    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (a, b) if a != b => {
                let rank = |s: Sign| match s {
                    Sign::Minus => 0,
                    Sign::NoSign => 1,
                    Sign::Plus => 2,
                };
                rank(a).cmp(&rank(b))
            }
            (Sign::NoSign, _) => Ordering::Equal,
            _ => {
                let e = self.exp.min(other.exp);
                let a = &self.mant << (self.exp - e) as usize;
                let b = &other.mant << (other.exp - e) as usize;
                a.cmp(&b)
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_sci_string(digits.max(1)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: Real,
    pub im: Real,
}

impl HpComplex {
    pub fn zero(prec: u32) -> Self {
        HpComplex { re: Real::zero(prec), im: Real::zero(prec) }
    }

    pub fn new(re: Real, im: Real) -> Self {
        HpComplex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        HpComplex { re, im: Real::zero(prec) }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_real(Real::from_rational(q, prec))
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        HpComplex { re: Real::from_f64(z.re, prec), im: Real::from_f64(z.im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt().unwrap()
    }

    /// `|z|` as an `f64`, robust against overflow of the square.
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale_real(&self, r: &Real) -> Self {
        HpComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        HpComplex { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = Real::from_i64(2, prec);
        if !self.re.is_negative() {
            let t = r.add(&self.re).div(&two).unwrap().sqrt().unwrap();
            let im = self.im.div(&t.mul(&two)).unwrap();
            HpComplex { re: t, im }
        } else {
            let t = r.sub(&self.re).div(&two).unwrap().sqrt().unwrap();
            let re = self.im.abs().div(&t.mul(&two)).unwrap();
            let im = if self.im.is_negative() { t.neg() } else { t };
            HpComplex { re, im }
        }
    }

    pub fn to_strings(&self, digits: usize) -> (String, String) {
        (self.re.to_sci_string(digits), self.im.to_sci_string(digits))
    }
}

impl Ring for HpComplex {
    fn zero_like(&self) -> Self {
        HpComplex::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        HpComplex::from_real(Real::from_i64(1, self.prec()))
    }
    fn int_like(&self, n: i64) -> Self {
        HpComplex::from_real(Real::from_i64(n, self.prec()))
    }
    fn plus(&self, rhs: &Self) -> Self {
        HpComplex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
    fn minus(&self, rhs: &Self) -> Self {
        HpComplex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
    fn times(&self, rhs: &Self) -> Self {
        HpComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
    fn negated(&self) -> Self {
        HpComplex { re: self.re.neg(), im: self.im.neg() }
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Field for HpComplex {
    fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(HpComplex { re: c.re.div(&n)?, im: c.im.div(&n)? })
    }
    fn rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(HpComplex::from_rational(q, self.prec()))
    }
}

/// Max norm of a vector of high-precision complex numbers, as `f64`.
pub fn max_abs(v: &[HpComplex]) -> f64 {
    v.iter().map(HpComplex::abs_f64).fold(0.0, f64::max)
}

fn horner_c64(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // coeffs are high degree first
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `coeffs[0] z^d + ... + coeffs[d]` by Aberth iteration.
pub fn roots_c64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = {
        let start = coeffs.iter().position(|c| c.norm() != 0.0).unwrap_or(coeffs.len());
        coeffs[start..].to_vec()
    };
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[0];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-type radius for the initial circle
    let radius = (1..=d).map(|k| monic[k].norm().powf(1.0 / k as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner_c64(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::zero();
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() != 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::one() - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Roots at full precision: Aberth seeds, then Newton polish of each root.
pub fn roots_hp(coeffs: &[HpComplex]) -> Vec<HpComplex> {
    let prec = coeffs.iter().map(HpComplex::prec).max().unwrap_or(DEFAULT_PRECISION);
    let seeds = roots_c64(&coeffs.iter().map(HpComplex::to_c64).collect::<Vec<_>>());
    let start = coeffs.iter().position(|c| !c.is_zero_elem()).unwrap_or(coeffs.len());
    let coeffs = &coeffs[start..];
    seeds.into_iter().map(|s| newton_polish(coeffs, HpComplex::from_c64(s, prec))).collect()
}

fn newton_polish(coeffs: &[HpComplex], mut z: HpComplex) -> HpComplex {
    let prec = z.prec();
    for _ in 0..(8 + prec / 16) {
        let mut p = z.zero_like();
        let mut dp = z.zero_like();
        for c in coeffs {
            dp = dp.times(&z).plus(&p);
            p = p.times(&z).plus(c);
        }
        let step = match p.divided(&dp) {
            Some(s) => s,
            None => break,
        };
        z = z.minus(&step);
        let size = z.abs_f64().max(1.0);
        let s = step.abs_f64();
        if s == 0.0 || s.log2() < size.log2() - prec as f64 + 4.0 {
            break;
        }
    }
    z
}
