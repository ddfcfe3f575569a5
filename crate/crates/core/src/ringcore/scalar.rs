//! Elements of the fraction field of Laurent polynomials over the rationals.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, EvalError, Monomial, Poly, Rational};
use super::var::{canonical_cmp, Var};
use crate::error::{Error, Result};

/// A reduced fraction `num / den`.
///
/// Canonical form: `den` is an ordinary polynomial without monomial factor
/// (monomial factors live in `num` as negative exponents), `num` and `den`
/// are coprime, and the first term of `den` in printing order has
/// coefficient 1. Two scalars are equal iff their canonical forms are
/// structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_poly(Poly::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn from_rational(q: Rational) -> Scalar {
        Scalar::from_poly(Poly::constant(q))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &str) -> Scalar {
        Scalar::from_poly(Poly::var(Var::new(name)))
    }

    pub fn from_var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    /// `u^k`, i.e. `q^(k/2)`.
    pub fn u_pow(k: i64) -> Scalar {
        let k = i32::try_from(k).expect("u exponent fits in i32");
        Scalar::from_poly(Poly::term(Monomial::var(Var::u(), k), Rational::one()))
    }

    pub fn from_fraction(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some((m, c)) = den.as_monomial() {
            return Ok(Scalar::from_poly(num.mul_term(&m.inv(), &c.recip())));
        }
        if let Some(q) = num.div_exact(&den) {
            return Ok(Scalar::from_poly(q));
        }
        let (den_shift, den0) = den.split_monomial_factor();
        let num = num.mul_monomial(&den_shift.inv());
        let (num_shift, num0) = num.split_monomial_factor();
        let g = gcd(&num0, &den0);
        let (num0, den0) = if g.is_constant() {
            (num0, den0)
        } else {
            (
                num0.div_exact(&g).expect("gcd divides numerator"),
                den0.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lead = den0
            .canonical_lead_coeff()
            .cloned()
            .expect("nonzero denominator");
        let scale = lead.recip();
        let num = num0.mul_term(&num_shift, &scale);
        let den = den0.scale(&scale);
        if den.is_one() {
            return Ok(Scalar::from_poly(num));
        }
        Ok(Scalar { num, den })
    }

    /// Canonical form of `num / den` when the two are already coprime.
    fn from_coprime(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (shift, den) = den.split_monomial_factor();
        let scale = den
            .canonical_lead_coeff()
            .cloned()
            .expect("nonzero denominator")
            .recip();
        let num = num.mul_term(&shift.inv(), &scale);
        let den = den.scale(&scale);
        if den.is_one() {
            return Scalar::from_poly(num);
        }
        Scalar { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The variable, if this scalar is exactly one bare indeterminate.
    pub fn as_single_var(&self) -> Option<Var> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.as_monomial() {
            Some((m, c)) if c.is_one() => match m.pairs() {
                [(v, 1)] => Some(*v),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs.sort_by(|a, b| canonical_cmp(*a, *b));
        vs.dedup();
        vs
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Scalar::from_fraction(self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        // a/b + c/d with g = gcd(b, d): only gcd(t, g) can cancel
        let g = gcd(&self.den, &other.den);
        let b = exact(&self.den, &g);
        let d = exact(&other.den, &g);
        let t = self.num.mul(&d).add(&other.num.mul(&b));
        if t.is_zero() {
            return Scalar::zero();
        }
        let g2 = gcd(&t, &g);
        Scalar::from_coprime(exact(&t, &g2), b.mul(&exact(&other.den, &g2)))
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d)
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let num = exact(&self.num, &g1).mul(&exact(&other.num, &g2));
        let den = exact(&self.den, &g2).mul(&exact(&other.den, &g1));
        Scalar::from_coprime(num, den)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = u32::try_from(k).map_err(|_| Error::Unsupported("exponent too large".into()))?;
        if self.den.is_one() {
            return Ok(Scalar::from_poly(self.num.pow(k)));
        }
        // numerator and denominator stay coprime under powers
        Ok(Scalar {
            num: self.num.pow(k),
            den: self.den.pow(k),
        })
    }

    /// Exact value at a point. Every variable must be bound.
    pub fn substitute(&self, bindings: &HashMap<String, Rational>) -> Result<Rational> {
        self.substitute_with(&|v: Var| bindings.get(&*v.name()).cloned())
    }

    pub fn substitute_with<F>(&self, lookup: &F) -> Result<Rational>
    where
        F: Fn(Var) -> Option<Rational>,
    {
        let map_err = |e: EvalError| match e {
            EvalError::Unbound(v) => Error::UnboundVariable(v.name().to_string()),
            EvalError::Pole => Error::PoleAtPoint,
        };
        let den = self.den.eval(lookup).map_err(map_err)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let num = self.num.eval(lookup).map_err(map_err)?;
        Ok(num / den)
    }

    /// Parses a rational `p`, `p/q`, or a bare identifier.
    pub fn parse_atom(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty value".into()));
        }
        if is_identifier(s) {
            return Ok(Scalar::var(s));
        }
        parse_rational(s).map(Scalar::from_rational)
    }
}

fn exact(p: &Poly, d: &Poly) -> Poly {
    if d.is_one() {
        return p.clone();
    }
    p.div_exact(d).expect("divisor is a gcd factor")
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.print_terms().into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let abs = c.abs();
        if m.is_one() {
            write!(f, "{abs}")?;
            continue;
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        let mut pairs: Vec<(Var, i32)> = m.pairs().to_vec();
        pairs.sort_by(|a, b| canonical_cmp(a.0, b.0));
        for (j, (v, e)) in pairs.iter().enumerate() {
            if j > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
    }
    Ok(())
}

fn write_factor(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.len() > 1 {
        write!(f, "(")?;
        write_poly(f, p)?;
        write!(f, ")")
    } else {
        write_poly(f, p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly(f, &self.num);
        }
        write_factor(f, &self.num)?;
        write!(f, "/")?;
        write_factor(f, &self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Scalar {
        Scalar::from_rational(q)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc.add(&x))
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc.mul(&x))
    }
}
