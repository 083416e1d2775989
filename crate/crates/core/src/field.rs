//! Exact scalar fields.
//!
//! Everything in this crate runs over an exact field: either the rationals
//! ([`Rational`], an arbitrary-precision reduced fraction) or the Gaussian
//! rationals ℚ(i) ([`GaussianRational`]). The [`Field`] trait captures the
//! operations the linear algebra needs, so matrix code is written once for
//! both.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EigenError, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// An exact field the engine can compute over.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_integer(value: i64) -> Self;

    fn from_rational(value: Rational) -> Self;

    /// Builds `re + im·i`, or `None` when the field cannot hold it.
    fn from_parts(re: Rational, im: Rational) -> Option<Self>;

    fn re(&self) -> Rational;

    fn im(&self) -> Rational;

    fn conj(&self) -> Self;

    fn is_real(&self) -> bool {
        self.im().is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(EigenError::DivisionByZero)
        } else {
            Ok(self.clone() / rhs)
        }
    }

    /// Positive rational `c` such that `c·v` has integral (Gaussian-integral)
    /// components whose parts share no common factor. Returns 1 for the zero
    /// vector.
    fn primitive_factor(values: &[Self]) -> Rational {
        let mut den_lcm = BigInt::one();
        let mut parts = Vec::with_capacity(values.len() * 2);
        for v in values {
            for p in [v.re(), v.im()] {
                if !p.is_zero() {
                    den_lcm = den_lcm.lcm(p.denom());
                    parts.push(p);
                }
            }
        }
        if parts.is_empty() {
            return Rational::one();
        }
        let mut num_gcd = BigInt::zero();
        for p in &parts {
            let scaled = p.numer() * (&den_lcm / p.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        Rational::new(den_lcm, num_gcd)
    }
}

impl Field for Rational {
    fn from_integer(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn from_rational(value: Rational) -> Self {
        value
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn re(&self) -> Rational {
        self.clone()
    }

    fn im(&self) -> Rational {
        Rational::zero()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_real(&self) -> bool {
        true
    }
}

/// Exact complex scalar `re + im·i` with rational parts.
///
/// Ordering is lexicographic on `(re, im)`; it is a total order used for
/// deterministic output, not a field ordering.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

/// The four field operations, for [`gq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(re: i64) -> Self {
        Self::new(Rational::from_integer(re.into()), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    /// `num/den + 0i`. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(num.into(), den.into()), Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn real(&self) -> &Rational {
        &self.re
    }

    pub fn imag(&self) -> &Rational {
        &self.im
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(EigenError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }
}

/// Exact arithmetic in ℚ(i); the only failure is division by zero.
pub fn gq_arith(a: &GaussianRational, b: &GaussianRational, op: ArithOp) -> Result<GaussianRational> {
    Ok(match op {
        ArithOp::Add => a.clone() + b,
        ArithOp::Sub => a.clone() - b,
        ArithOp::Mul => a.clone() * b,
        ArithOp::Div => a.clone() * &b.inv()?,
    })
}

pub fn gq_parse(text: &str) -> Result<GaussianRational> {
    text.parse()
}

pub fn gq_conj(a: &GaussianRational) -> GaussianRational {
    a.conj()
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::new(v, Rational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

fn add_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational::new(&a.re * &b.re, Rational::zero());
    }
    GaussianRational::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

fn div_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    if b.im.is_zero() {
        assert!(!b.re.is_zero(), "attempt to divide by zero");
        return GaussianRational::new(&a.re / &b.re, &a.im / &b.re);
    }
    match b.inv() {
        Ok(inv) => mul_ref(a, &inv),
        Err(_) => panic!("attempt to divide by zero"),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $f(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                $f(&self, rhs)
            }
        }
        impl<'a, 'b> $trait<&'b GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'b GaussianRational) -> GaussianRational {
                $f(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Field for GaussianRational {
    fn from_integer(value: i64) -> Self {
        Self::from_int(value)
    }

    fn from_rational(value: Rational) -> Self {
        value.into()
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        Some(Self::new(re, im))
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn im(&self) -> Rational {
        self.im.clone()
    }

    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        gq_arith(self, rhs, ArithOp::Div)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text form following the scalar grammar: `3`, `-3/2`, `2-i`, `1-1/2i`,
/// `-3/2i`, `i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
        } else if self.im.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.im.abs();
        if !mag.is_one() {
            fmt_rational(&mag, f)?;
        }
        f.write_str("i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_error(text: &str, reason: &str) -> EigenError {
    EigenError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_digits(text: &str, digits: &str) -> Result<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(text, "expected decimal digits"));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| parse_error(text, "expected decimal digits"))
}

/// `int ['/' posint]` without sign.
fn parse_magnitude(text: &str, body: &str) -> Result<Rational> {
    match body.split_once('/') {
        None => Ok(Rational::from_integer(parse_digits(text, body)?)),
        Some((num, den)) => {
            let num = parse_digits(text, num)?;
            let den = parse_digits(text, den)?;
            if den.is_zero() {
                return Err(EigenError::DivisionByZero);
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn parse_real(text: &str, body: &str) -> Result<Rational> {
    match body.strip_prefix('-') {
        Some(rest) => Ok(-parse_magnitude(text, rest)?),
        None => parse_magnitude(text, body),
    }
}

/// Coefficient of an imaginary term, `body` being the text before `i`.
fn parse_imag(text: &str, body: &str) -> Result<Rational> {
    let (negative, mag) = if let Some(rest) = body.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = body.strip_prefix('+') {
        (false, rest)
    } else {
        (false, body)
    };
    let value = if mag.is_empty() {
        Rational::one()
    } else {
        parse_magnitude(text, mag)?
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for GaussianRational {
    type Err = EigenError;

    fn from_str(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(parse_error(text, "empty scalar"));
        }
        let Some(body) = text.strip_suffix('i') else {
            return Ok(Self::new(parse_real(text, text)?, Rational::zero()));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_real(text, &body[..k])?;
                let im = parse_imag(text, &body[k..])?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(Rational::zero(), parse_imag(text, body)?)),
        }
    }
}
