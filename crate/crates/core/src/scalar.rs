//! Coefficient rings: `ZZ`, `QQ` and finite fields.

use crate::error::{AlgebraError, Result};
use crate::finite_field::{split_prime_power, FfElem, FiniteField};
use crate::ring::{Field, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub enum RingKind {
    Integers,
    Rationals,
    Finite(Arc<FiniteField>),
}

impl RingKind {
    pub fn finite(p: u64, m: u32) -> Result<Self> {
        Ok(RingKind::Finite(Arc::new(FiniteField::new(p, m)?)))
    }

    /// Accepts `ZZ`, `QQ`, `GF(p)`, `GF(p^m)` and `GF(q)` for a prime power `q`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "ZZ" | "Z" => return Ok(RingKind::Integers),
            "QQ" | "Q" => return Ok(RingKind::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| AlgebraError::Parse(format!("unknown ring `{t}`")))?;
        let bad = || AlgebraError::Parse(format!("bad field spec `{t}`"));
        let (p, m) = match inner.split_once('^') {
            Some((p, m)) => (p.trim().parse::<u64>().map_err(|_| bad())?, m.trim().parse::<u32>().map_err(|_| bad())?),
            None => {
                let q = inner.trim().parse::<u64>().map_err(|_| bad())?;
                split_prime_power(q).ok_or_else(bad)?
            }
        };
        RingKind::finite(p, m)
    }

    pub fn name(&self) -> String {
        match self {
            RingKind::Integers => "ZZ".into(),
            RingKind::Rationals => "QQ".into(),
            RingKind::Finite(f) => f.name(),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            RingKind::Integers => Scalar::Int(n.clone()),
            RingKind::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            RingKind::Finite(f) => Scalar::Ff(f.clone(), f.from_bigint(n)),
        }
    }

    /// Image of a rational; fails in `ZZ` for non-integers and in `F_q` for denominators divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            RingKind::Integers if q.is_integer() => Ok(Scalar::Int(q.to_integer())),
            RingKind::Integers => Err(AlgebraError::NotInvertible(q.denom().to_string())),
            RingKind::Rationals => Ok(Scalar::Rat(q.clone())),
            RingKind::Finite(f) => f
                .from_rational(q)
                .map(|e| Scalar::Ff(f.clone(), e))
                .ok_or_else(|| AlgebraError::NotInvertible(q.denom().to_string())),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            RingKind::Integers => {
                s.parse::<BigInt>().map(Scalar::Int).map_err(|_| AlgebraError::Parse(format!("bad integer `{s}`")))
            }
            RingKind::Rationals => parse_rational(s).map(Scalar::Rat),
            RingKind::Finite(f) => {
                if s.starts_with('(') {
                    return f.parse_elem(s).map(|e| Scalar::Ff(f.clone(), e));
                }
                self.from_rational(&parse_rational(s)?)
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingKind::Finite(f) => f.characteristic(),
            _ => 0,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses `a`, `a/b` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("bad rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = int_part.abs() * &scale + frac_part;
        let v = BigRational::new(mag, scale);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Ff(Arc<FiniteField>, FfElem),
}

impl Scalar {
    pub fn ring(&self) -> RingKind {
        match self {
            Scalar::Int(_) => RingKind::Integers,
            Scalar::Rat(_) => RingKind::Rationals,
            Scalar::Ff(f, _) => RingKind::Finite(f.clone()),
        }
    }

    fn same_ring(&self, rhs: &Scalar) -> Result<()> {
        let ok = match (self, rhs) {
            (Scalar::Int(_), Scalar::Int(_)) | (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Ff(f, _), Scalar::Ff(g, _)) => Arc::ptr_eq(f, g) || f == g,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring().name(), rhs.ring().name()))
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_ring(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Ff(f, a), Scalar::Ff(_, b)) => Scalar::Ff(f.clone(), f.add(a, b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_ring(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Ff(f, a), Scalar::Ff(_, b)) => Scalar::Ff(f.clone(), f.mul(a, b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_ring(rhs)?;
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                if (a % b).is_zero() {
                    Ok(Scalar::Int(a / b))
                } else {
                    Err(AlgebraError::NotInvertible(b.to_string()))
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Ff(f, a), Scalar::Ff(_, b)) => Ok(Scalar::Ff(f.clone(), f.mul(a, &f.inv(b).unwrap()))),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Ff(f, a) => Scalar::Ff(f.clone(), f.neg(a)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_zero(),
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Ff(f, a) => f.is_zero(a),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_one(),
            Scalar::Rat(a) => a.is_one(),
            Scalar::Ff(f, a) => f.is_one(a),
        }
    }

    /// `Some` for integers and rationals.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(a) => Some(BigRational::from_integer(a.clone())),
            Scalar::Rat(a) => Some(a.clone()),
            Scalar::Ff(..) => None,
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_negative(),
            Scalar::Rat(a) => a.is_negative(),
            Scalar::Ff(..) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => write!(f, "{a}"),
            Scalar::Ff(field, a) => f.write_str(&field.format_elem(a)),
        }
    }
}

// The trait impls panic on mixed rings; polynomial code checks rings once up front.
impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn int_like(&self, n: i64) -> Self {
        self.ring().from_int(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("ring mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("ring mismatch")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("ring mismatch")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for Scalar {
    fn inverse(&self) -> Option<Self> {
        self.one_like().checked_div(self).ok()
    }
    fn rational_like(&self, q: &BigRational) -> Option<Self> {
        self.ring().from_rational(q).ok()
    }
}
