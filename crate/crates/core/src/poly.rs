//! Sparse multivariate polynomials over a [`RingKind`].
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lex monomials, so equal
//! polynomials have identical term lists and printing is canonical.

use crate::error::{AlgebraError, Result};
use crate::scalar::{RingKind, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lex with the first variable most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    ring: RingKind,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Replacement for one variable in [`MultiPoly::specialize`].
#[derive(Clone, Debug)]
pub enum Substitution {
    Value(Scalar),
    /// Polynomial in the variables that remain after specialization.
    Poly(MultiPoly),
}

impl MultiPoly {
    pub fn zero(ring: RingKind, vars: Vec<String>) -> Self {
        MultiPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: RingKind, vars: Vec<String>, c: Scalar) -> Result<Self> {
        let mut p = Self::zero(ring, vars);
        let n = p.vars.len();
        p.add_term(Monomial::one(n), c)?;
        Ok(p)
    }

    pub fn variable(ring: RingKind, vars: Vec<String>, name: &str) -> Result<Self> {
        let idx = vars.iter().position(|v| v == name).ok_or_else(|| AlgebraError::UnknownVariable(name.into()))?;
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let one = ring.one();
        let mut p = Self::zero(ring, vars);
        p.add_term(Monomial(exp), one)?;
        Ok(p)
    }

    pub fn from_terms<I>(ring: RingKind, vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(ring, vars);
        for (exp, c) in terms {
            if exp.len() != p.vars.len() {
                return Err(AlgebraError::VariableMismatch(format!(
                    "exponent vector of length {} for {} variables",
                    exp.len(),
                    p.vars.len()
                )));
            }
            p.add_term(Monomial(exp), c)?;
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingKind {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| AlgebraError::UnknownVariable(name.into()))
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exp.to_vec())).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
    }

    pub fn add_term(&mut self, mono: Monomial, c: Scalar) -> Result<()> {
        if c.ring() != self.ring {
            return Err(AlgebraError::RingMismatch(self.ring.name(), c.ring().name()));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.checked_add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
        Ok(())
    }

    fn compatible(&self, rhs: &MultiPoly) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(AlgebraError::RingMismatch(self.ring.name(), rhs.ring.name()));
        }
        if self.vars != rhs.vars {
            return Err(AlgebraError::VariableMismatch(format!("{:?} vs {:?}", self.vars, rhs.vars)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(rhs)?;
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.checked_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<MultiPoly> {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.checked_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly> {
        let mut acc = Self::constant(self.ring.clone(), self.vars.clone(), self.ring.one())?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::VariableMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        for x in point {
            if x.ring() != self.ring {
                return Err(AlgebraError::RingMismatch(self.ring.name(), x.ring().name()));
            }
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.checked_mul(x)?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    pub fn partial(&self, var: &str) -> Result<MultiPoly> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[i] -= 1;
            out.add_term(Monomial(exp), c.checked_mul(&self.ring.from_int(e as i64))?)?;
        }
        Ok(out)
    }

    /// Substitutes the listed variables and drops them from the variable list.
    pub fn specialize(&self, subs: &[(&str, Substitution)]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(subs.len());
        for (name, _) in subs {
            idx.push(self.var_index(name)?);
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !idx.contains(i)).collect();
        let new_vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let ring = self.ring.clone();
        let mut values: Vec<MultiPoly> = Vec::with_capacity(subs.len());
        for (name, s) in subs {
            let v = match s {
                Substitution::Value(c) => {
                    if c.ring() != ring {
                        return Err(AlgebraError::RingMismatch(ring.name(), c.ring().name()));
                    }
                    MultiPoly::constant(ring.clone(), new_vars.clone(), c.clone())?
                }
                Substitution::Poly(p) => {
                    if p.vars != new_vars || p.ring != ring {
                        return Err(AlgebraError::VariableMismatch(format!(
                            "substitution for `{name}` must be a {} polynomial in {:?}",
                            ring.name(),
                            new_vars
                        )));
                    }
                    p.clone()
                }
            };
            values.push(v);
        }
        // powers[k][e] = values[k]^e, filled lazily
        let mut powers: Vec<Vec<MultiPoly>> = values
            .iter()
            .map(|_| vec![MultiPoly::constant(ring.clone(), new_vars.clone(), ring.one()).unwrap()])
            .collect();
        let mut out = Self::zero(ring.clone(), new_vars.clone());
        for (m, c) in &self.terms {
            let exp: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            let mut t = Self::zero(ring.clone(), new_vars.clone());
            t.add_term(Monomial(exp), c.clone())?;
            for (k, &i) in idx.iter().enumerate() {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().mul(&values[k])?;
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][e])?;
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a superset (or permutation) of its variables.
    pub fn with_vars(&self, vars: Vec<String>) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            map.push(vars.iter().position(|w| w == v).ok_or_else(|| AlgebraError::UnknownVariable(v.clone()))?);
        }
        let mut out = Self::zero(self.ring.clone(), vars);
        let n = out.vars.len();
        for (m, c) in &self.terms {
            let mut exp = vec![0; n];
            for (j, &e) in m.0.iter().enumerate() {
                exp[map[j]] = e;
            }
            out.add_term(Monomial(exp), c.clone())?;
        }
        Ok(out)
    }

    /// Image in another ring (e.g. reduction of an integral polynomial mod `p`).
    pub fn change_ring(&self, ring: &RingKind) -> Result<MultiPoly> {
        let mut out = Self::zero(ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let img = match c.to_rational() {
                Some(q) => ring.from_rational(&q)?,
                None if c.ring() == *ring => c.clone(),
                None => return Err(AlgebraError::RingMismatch(c.ring().name(), ring.name())),
            };
            out.add_term(m.clone(), img)?;
        }
        Ok(out)
    }

    /// Positive gcd of the coefficients of an integral polynomial (zero for the zero polynomial).
    pub fn content(&self) -> Result<BigInt> {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            match c {
                Scalar::Int(a) => g = g.gcd(a),
                _ => return Err(AlgebraError::InvalidArgument("content is defined for ZZ polynomials".into())),
            }
        }
        Ok(g)
    }

    /// Divides an integral polynomial by its content.
    pub fn primitive_part(&self) -> Result<MultiPoly> {
        let g = self.content()?;
        if g.is_zero() || g.is_one() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            if let Scalar::Int(a) = c {
                out.terms.insert(m.clone(), Scalar::Int(a / &g));
            }
        }
        Ok(out)
    }

    /// Parses the text format written by `Display`.
    pub fn parse(src: &str, ring: RingKind, vars: Vec<String>) -> Result<MultiPoly> {
        let tokens = tokenize(src)?;
        let mut parser = Parser { tokens, pos: 0, ring, vars };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(AlgebraError::Parse(format!("unexpected token {:?}", parser.tokens[parser.pos])));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            ring: self.ring.name(),
            vars: self.vars.clone(),
            terms: self.terms().map(|(m, c)| TermJson { exp: m.0.clone(), coeff: c.to_string() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let ring = RingKind::parse(&j.ring)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((t.exp.clone(), ring.parse_scalar(&t.coeff)?));
        }
        MultiPoly::from_terms(ring, j.vars.clone(), terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(&m.0)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mono = format_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    /// Finite-field element literal `(c0,c1,...)`.
    Tuple(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if c == '(' {
            // A parenthesised group with a top-level comma is a field element literal.
            let mut depth = 0;
            let mut j = i;
            let mut has_comma = false;
            while j < chars.len() {
                match chars[j] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    ',' if depth == 1 => has_comma = true,
                    _ => {}
                }
                j += 1;
            }
            if has_comma && j < chars.len() {
                out.push(Token::Tuple(chars[i..=j].iter().collect()));
                i = j + 1;
            } else {
                out.push(Token::Op('('));
                i += 1;
            }
        } else if "+-*/^)".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    ring: RingKind,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn constant(&self, c: Scalar) -> Result<MultiPoly> {
        MultiPoly::constant(self.ring.clone(), self.vars.clone(), c)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while let Some(Token::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let f = self.factor()?;
            if op == '*' {
                acc = acc.mul(&f)?;
            } else {
                let d = match (f.total_degree(), f.terms.values().next()) {
                    (Some(0), Some(c)) => c.clone(),
                    _ => return Err(AlgebraError::Parse("division only by nonzero constants".into())),
                };
                let inv = self.ring.one().checked_div(&d)?;
                acc = acc.scale(&inv)?;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    return base.pow(e);
                }
                _ => return Err(AlgebraError::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = self.peek().cloned().ok_or_else(|| AlgebraError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => self.constant(self.ring.from_bigint(&n)),
            Token::Ident(name) => MultiPoly::variable(self.ring.clone(), self.vars.clone(), &name),
            Token::Tuple(s) => {
                let c = self.ring.parse_scalar(&s)?;
                self.constant(c)
            }
            Token::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(AlgebraError::Parse("expected `)`".into())),
                }
            }
            Token::Op('-') => Ok(self.factor()?.neg()),
            other => Err(AlgebraError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Variable names `prefix0, prefix1, ...`.
pub fn indexed_vars(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

impl MultiPoly {
    /// Largest absolute coefficient of an integral or rational polynomial.
    pub fn max_abs_coeff(&self) -> Option<num_rational::BigRational> {
        self.terms.values().filter_map(Scalar::to_rational).map(|q| q.abs()).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn print_parse_round_trip() {
        let v = vars(&["x", "y"]);
        let p = MultiPoly::parse("3*x^2*y - x + 1/2 - y^3", RingKind::Rationals, v.clone()).unwrap();
        assert_eq!(p.to_string(), "3*x^2*y - y^3 - x + 1/2");
        let q = MultiPoly::parse(&p.to_string(), RingKind::Rationals, v).unwrap();
        assert_eq!(p, q);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(MultiPoly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn finite_field_literals() {
        let f = RingKind::parse("GF(2^2)").unwrap();
        let v = vars(&["x"]);
        let p = MultiPoly::parse("(0,1)*x^2 + x + (1,1)", f.clone(), v.clone()).unwrap();
        assert_eq!(p.to_string(), "(0,1)*x^2 + x + (1,1)");
        assert_eq!(MultiPoly::parse(&p.to_string(), f, v).unwrap(), p);
    }

    #[test]
    fn specialize_and_partials() {
        let v = vars(&["x", "y", "z"]);
        let p = MultiPoly::parse("x^2*y + y*z - 3*z", RingKind::Integers, v).unwrap();
        let s = p
            .specialize(&[
                ("z", Substitution::Value(RingKind::Integers.from_int(2))),
                ("x", Substitution::Poly(MultiPoly::parse("y + 1", RingKind::Integers, vars(&["y"])).unwrap())),
            ])
            .unwrap();
        assert_eq!(s.to_string(), "y^3 + 2*y^2 + 3*y - 6");
        assert_eq!(p.partial("x").unwrap().to_string(), "2*x*y");
        assert!(matches!(p.partial("w"), Err(AlgebraError::UnknownVariable(_))));
        assert!(p.specialize(&[("w", Substitution::Value(RingKind::Integers.one()))]).is_err());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let v = vars(&["x"]);
        let a = MultiPoly::variable(RingKind::Integers, v.clone(), "x").unwrap();
        let b = MultiPoly::variable(RingKind::Rationals, v, "x").unwrap();
        assert!(matches!(a.add(&b), Err(AlgebraError::RingMismatch(..))));
    }

    #[test]
    fn content_and_reduction() {
        let v = vars(&["x", "y"]);
        let p = MultiPoly::parse("6*x^2 - 4*x*y + 2", RingKind::Integers, v).unwrap();
        assert_eq!(p.content().unwrap(), BigInt::from(2));
        let pp = p.primitive_part().unwrap();
        assert_eq!(pp.to_string(), "3*x^2 - 2*x*y + 1");
        let f3 = RingKind::finite(3, 1).unwrap();
        assert_eq!(pp.change_ring(&f3).unwrap().to_string(), "x*y + 1");
    }
}
