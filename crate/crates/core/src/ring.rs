//! Minimal arithmetic traits shared by the exact and numeric back ends.
//!
//! Constants are produced from an existing value (`zero_like`, `one_like`)
//! because some rings (finite fields, radical towers) carry runtime context.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

pub trait Ring: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// `None` when the element is not invertible.
    fn inverse(&self) -> Option<Self>;

    /// Image of a rational number, `None` if the denominator is not invertible.
    fn rational_like(&self, q: &BigRational) -> Option<Self>;

    fn divided(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::zero()
    }
    fn one_like(&self) -> Self {
        Complex64::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero_elem() {
            None
        } else {
            Some(self.inv())
        }
    }
    fn rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(Complex64::new(rational_to_f64(q), 0.0))
    }
}

/// Nearest-ish `f64` for a big rational, safe for huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (q.numer().abs() << shift as usize) / q.denom()
    } else {
        (q.numer().abs() >> (-shift) as usize) / q.denom()
    };
    let m = scaled.to_f64().unwrap_or(0.0);
    let v = m * 2f64.powi(-shift as i32);
    if q.is_negative() {
        -v
    } else {
        v
    }
}
