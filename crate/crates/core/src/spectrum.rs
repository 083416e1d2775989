//! Characteristic polynomials and exact eigenvalue extraction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational, Rational};
use crate::matrix::{mat_mul, Matrix};

/// Polynomial with coefficients in ascending degree. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T = GaussianRational> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_integer(c)).collect())
    }

    /// `x − root`.
    pub fn linear(root: &T) -> Self {
        Self::new(vec![-root.clone(), T::one()])
    }

    /// `Π (x − λ)^m` over the spectrum.
    pub fn from_spectrum(s: &Spectrum<T>) -> Self {
        let mut p = Self::new(vec![T::one()]);
        for (value, mult) in s.pairs() {
            let factor = Self::linear(value);
            for _ in 0..*mult {
                p = p.mul(&factor);
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(T::is_one)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(T::is_real)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        Self::new(out)
    }

    /// Synthetic division by `x − root`: returns the quotient and remainder.
    pub fn deflate(&self, root: &T) -> (Self, T) {
        if self.coeffs.is_empty() {
            return (self.clone(), T::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + carry * root;
            if k == 0 {
                return (Self::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!("loop returns at k = 0")
    }

    fn to_rational(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.is_real().then(|| c.re()))
            .collect()
    }
}

impl<T: Field> fmt::Display for Polynomial<T> {
    /// Renders with variable `l`, highest degree first: `l^2 - 7*l + 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && c.re().is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let coeff = if magnitude.is_real() {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str("l")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Distinct eigenvalues with algebraic multiplicities, sorted ascending by
/// `(re, im)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum<T = GaussianRational> {
    pairs: Vec<(T, usize)>,
}

impl<T: Field> Spectrum<T> {
    pub fn new(mut pairs: Vec<(T, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(EigenError::InvalidSpectrum("spectrum is empty".into()));
        }
        if let Some((v, _)) = pairs.iter().find(|(_, m)| *m == 0) {
            return Err(EigenError::InvalidSpectrum(format!(
                "eigenvalue {v} has multiplicity 0"
            )));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(EigenError::InvalidSpectrum(format!(
                "eigenvalue {} listed twice",
                w[0].0
            )));
        }
        Ok(Spectrum { pairs })
    }

    /// Panics on an invalid list; meant for literals.
    pub fn from_ints(pairs: &[(i64, usize)]) -> Self {
        Self::new(pairs.iter().map(|&(v, m)| (T::from_integer(v), m)).collect())
            .expect("valid literal spectrum")
    }

    pub fn pairs(&self) -> &[(T, usize)] {
        &self.pairs
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.pairs.iter().map(|(v, _)| v)
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn multiplicity(&self, value: &T) -> Option<usize> {
        self.pairs.iter().find(|(v, _)| v == value).map(|(_, m)| *m)
    }

    pub fn contains(&self, value: &T) -> bool {
        self.multiplicity(value).is_some()
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn multiset(&self) -> Vec<T> {
        self.pairs
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect()
    }

    pub fn polynomial(&self) -> Polynomial<T> {
        Polynomial::from_spectrum(self)
    }

    /// Closed under conjugation with matching multiplicities.
    pub fn is_conjugate_closed(&self) -> bool {
        self.pairs
            .iter()
            .all(|(v, m)| self.multiplicity(&v.conj()) == Some(*m))
    }
}

impl<T: Field> fmt::Display for Spectrum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, m)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        f.write_str("}")
    }
}

/// Monic `det(λI − A)` by the Faddeev–LeVerrier trace recursion.
pub fn charpoly<T: Field>(a: &Matrix<T>) -> Result<Polynomial<T>> {
    a.require_square()?;
    let n = a.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mat_mul(a, &m, None)?;
        for i in 0..n {
            let v = next.get(i, i).clone() + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let am = mat_mul(a, &next, None)?;
        coeffs[n - k] = -(am.trace() / T::from_integer(k as i64));
        m = next;
    }
    Ok(Polynomial::new(coeffs))
}

/// All roots of a monic rational polynomial, provided they lie in the field.
///
/// Rational roots come from a rational-root search with deflation; a
/// remaining quadratic is solved when its discriminant is `±r²`.
pub fn find_spectrum<T: Field>(p: &Polynomial<T>) -> Result<Spectrum<T>> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(EigenError::InvalidSpectrum(
                "polynomial must have degree at least 1".into(),
            ))
        }
    };
    let Some(mut q) = p.to_rational() else {
        return Err(EigenError::IrrationalSpectrum {
            residual_degree: degree,
        });
    };
    let lead = q[degree].clone();
    for c in &mut q {
        *c = &*c / &lead;
    }

    let mut roots: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut poly = Polynomial::<Rational>::new(q);
    while poly.coeffs.first().is_some_and(Zero::is_zero) && poly.coeffs.len() > 1 {
        poly.coeffs.remove(0);
        *roots.entry(Rational::zero()).or_default() += 1;
    }
    for r in rational_root_candidates(&poly.coeffs) {
        loop {
            let (quot, rem) = poly.deflate(&r);
            if !rem.is_zero() {
                break;
            }
            poly = quot;
            *roots.entry(r.clone()).or_default() += 1;
        }
        if poly.degree() == Some(0) {
            break;
        }
    }

    let mut pairs: Vec<(T, usize)> = roots
        .into_iter()
        .map(|(r, m)| (T::from_rational(r), m))
        .collect();
    match poly.degree() {
        Some(0) => {}
        Some(2) => {
            let c = &poly.coeffs;
            let b = &c[1] / &c[2];
            let c0 = &c[0] / &c[2];
            let disc = &b * &b - Rational::from_integer(4.into()) * &c0;
            // rational roots were already removed, so only a negative square remains
            let r = rational_sqrt(&-disc.clone()).ok_or(EigenError::IrrationalSpectrum {
                residual_degree: 2,
            })?;
            let half = Rational::new(1.into(), 2.into());
            let re = -&b * &half;
            let im = r * &half;
            for im_part in [-im.clone(), im] {
                let value = T::from_parts(re.clone(), im_part)
                    .ok_or(EigenError::IrrationalSpectrum { residual_degree: 2 })?;
                pairs.push((value, 1));
            }
        }
        Some(d) => return Err(EigenError::IrrationalSpectrum { residual_degree: d }),
        None => unreachable!("deflating a monic polynomial never yields zero"),
    }
    Spectrum::new(pairs)
}

/// Multiplicity of `root` in `p`, and the quotient left after dividing out
/// `(x − root)` that many times.
pub fn root_multiplicity<T: Field>(p: &Polynomial<T>, root: &T) -> (usize, Polynomial<T>) {
    let mut p = p.clone();
    let mut m = 0;
    while p.degree().is_some_and(|d| d > 0) {
        let (q, r) = p.deflate(root);
        if !r.is_zero() {
            break;
        }
        p = q;
        m += 1;
    }
    (m, p)
}

/// `find_spectrum(charpoly(a))`.
pub fn spectrum_of<T: Field>(a: &Matrix<T>) -> Result<Spectrum<T>> {
    find_spectrum(&charpoly(a)?)
}

/// Accepts `claimed` iff it matches `a`'s characteristic polynomial exactly.
pub fn verify_spectrum<T: Field>(a: &Matrix<T>, claimed: &Spectrum<T>) -> Result<Spectrum<T>> {
    a.require_square()?;
    if claimed.dim() != a.rows() {
        return Err(EigenError::InvalidSpectrum(format!(
            "multiplicities sum to {}, matrix is {}x{}",
            claimed.dim(),
            a.rows(),
            a.cols()
        )));
    }
    let p = charpoly(a)?;
    if claimed.polynomial() != p {
        return Err(EigenError::InvalidSpectrum(format!(
            "product of (l - eigenvalue) factors does not equal the characteristic polynomial {p}"
        )));
    }
    Ok(claimed.clone())
}

/// Spectrum of `A − μI` given the spectrum of `A`.
pub fn shift_spectrum<T: Field>(s: &Spectrum<T>, mu: &T) -> Spectrum<T> {
    Spectrum::new(
        s.pairs
            .iter()
            .map(|(v, m)| (v.clone() - mu, *m))
            .collect(),
    )
    .expect("shifting preserves distinctness")
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Candidate roots `±p/q` with `p | a₀` and `q | aₙ` of the
/// denominator-cleared polynomial, small magnitudes first, restricted to the
/// Cauchy bound.
fn rational_root_candidates(q: &[Rational]) -> Vec<Rational> {
    if q.len() < 2 {
        return Vec::new();
    }
    let den_lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    if a0.is_zero() {
        return vec![Rational::zero()];
    }
    let lead = &q[q.len() - 1];
    let bound = q[..q.len() - 1]
        .iter()
        .map(|c| (c / lead).abs())
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::one();

    let mut out: Vec<Rational> = Vec::new();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            let r = Rational::new(num.clone(), den);
            if r > bound {
                continue;
            }
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    out.dedup();
    out
}

/// Positive divisors of `|n|`, `n ≠ 0`. Trial division runs up to 10⁶; a
/// larger leftover cofactor is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= m && d <= limit {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += if d.to_u32() == Some(2) { 1u32 } else { 2u32 };
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for base in &divs {
            let mut pow = base.clone();
            for _ in 0..=e {
                next.push(pow.clone());
                pow *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
