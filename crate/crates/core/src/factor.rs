//! Diagonalization, matrix powers and general solutions of `X′ = A·X`.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational, Rational};
use crate::jordan::build_chains;
use crate::kappa::{eigen_system, is_diagonalizable, Side};
use crate::matrix::{mat_inverse, mat_mul, mat_vec_mul, Matrix, Vector};
use crate::spectrum::{spectrum_of, verify_spectrum, Spectrum};

/// `A = P·D·P⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization<T = GaussianRational> {
    pub p: Matrix<T>,
    pub d: Matrix<T>,
    pub p_inv: Matrix<T>,
    /// Diagonal of `D`, ascending with multiplicity.
    pub eigen_order: Vec<T>,
}

impl<T: Field> Diagonalization<T> {
    pub fn reconstruct(&self) -> Result<Matrix<T>> {
        mat_mul(&mat_mul(&self.p, &self.d, None)?, &self.p_inv, None)
    }

    /// `P·Dⁿ·P⁻¹`.
    pub fn power(&self, n: u32) -> Result<Matrix<T>> {
        let dn: Vec<T> = self.eigen_order.iter().map(|v| pow(v, n)).collect();
        let mut pd = self.p.clone();
        for i in 0..pd.rows() {
            for (j, d) in dn.iter().enumerate() {
                let x = pd.get(i, j).clone() * d;
                pd.set(i, j, x);
            }
        }
        mat_mul(&pd, &self.p_inv, None)
    }
}

fn pow<T: Field>(x: &T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x)
}

fn resolve_spectrum<T: Field>(a: &Matrix<T>, s: Option<&Spectrum<T>>) -> Result<Spectrum<T>> {
    match s {
        Some(s) => verify_spectrum(a, s),
        None => spectrum_of(a),
    }
}

/// Diagonalizes `a`, eigenvalues ascending along `D`. Fails with the nonzero
/// product of distinct κ-matrices when `a` is defective.
pub fn diagonalize<T: Field>(a: &Matrix<T>, s: Option<&Spectrum<T>>) -> Result<Diagonalization<T>> {
    let s = resolve_spectrum(a, s)?;
    let verdict = is_diagonalizable(a, &s, None)?;
    if let Some(w) = verdict.witness() {
        return Err(EigenError::NotDiagonalizable {
            witness: w.to_string(),
        });
    }
    let system = eigen_system(a, &s, Side::Right, None)?;
    let mut columns = Vec::with_capacity(a.rows());
    let mut eigen_order = Vec::with_capacity(a.rows());
    for space in &system.spaces {
        for v in &space.vectors {
            columns.push(v.clone());
            eigen_order.push(space.eigenvalue.clone());
        }
    }
    if columns.len() != a.rows() {
        return Err(EigenError::InternalInconsistency(format!(
            "product test passed but only {} eigenvectors were found",
            columns.len()
        )));
    }
    let p = Matrix::from_columns(&columns)?;
    let p_inv = mat_inverse(&p)?;
    let out = Diagonalization {
        d: Matrix::diagonal(&eigen_order),
        p,
        p_inv,
        eigen_order,
    };
    if out.reconstruct()? != *a {
        return Err(EigenError::InternalInconsistency(
            "P·D·P⁻¹ does not reproduce the matrix".into(),
        ));
    }
    Ok(out)
}

/// `Aⁿ`: through `P·Dⁿ·P⁻¹` when `a` is diagonalizable over the field,
/// otherwise by repeated squaring.
pub fn matrix_power<T: Field>(a: &Matrix<T>, n: u32, s: Option<&Spectrum<T>>) -> Result<Matrix<T>> {
    a.require_square()?;
    match diagonalize(a, s) {
        Ok(d) => d.power(n),
        Err(
            EigenError::NotDiagonalizable { .. }
            | EigenError::IrrationalSpectrum { .. },
        ) => a.pow(n),
        Err(e) => Err(e),
    }
}

/// `vector · tᵖ / divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPart<T = GaussianRational> {
    pub vector: Vector<T>,
    pub power: u32,
    pub factorial: u64,
}

/// Sine half of a real oscillatory solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigPart<T = GaussianRational> {
    pub beta: T,
    pub sin_polynomial: Vec<PolyPart<T>>,
}

/// One independent solution, multiplied by the constant `c_label`.
///
/// Without a trig part: `X(t) = e^{λt} · Σ vector·tᵖ/p!`.
/// With one: `X(t) = e^{αt} · (Σ … · cos βt + Σ … · sin βt)` where the first
/// sum is `vector_polynomial` and `α` is `exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeSolutionTerm<T = GaussianRational> {
    pub label: usize,
    pub exponent: T,
    pub vector_polynomial: Vec<PolyPart<T>>,
    pub trig: Option<TrigPart<T>>,
}

impl<T: Field> OdeSolutionTerm<T> {
    /// `X(0)`.
    pub fn initial_value(&self) -> Vector<T> {
        let n = self.vector_polynomial[0].vector.len();
        self.vector_polynomial
            .iter()
            .filter(|p| p.power == 0)
            .fold(Vector::zeros(n), |acc, p| {
                acc.add(&p.vector.as_column()).expect("equal lengths")
            })
    }
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

/// Coefficient vectors `C_p` of `tᵖ`, with the factorials folded in.
fn coefficients<T: Field>(parts: &[PolyPart<T>], n: usize, degree: usize) -> Vec<Vector<T>> {
    let mut out = vec![Vector::zeros(n); degree + 2];
    for p in parts {
        let scaled = p.vector.as_column().scale(&T::from_rational(Rational::new(
            1.into(),
            p.factorial.into(),
        )));
        out[p.power as usize] = out[p.power as usize].add(&scaled).expect("equal lengths");
    }
    out
}

/// Checks `X′ = A·X` coefficient by coefficient.
///
/// Exponential terms need `A·C_p = λ·C_p + (p+1)·C_{p+1}`. Oscillatory terms
/// need `A·C_p = α·C_p + (p+1)·C_{p+1} + β·S_p` and
/// `A·S_p = α·S_p + (p+1)·S_{p+1} − β·C_p`.
pub fn verify_ode_term<T: Field>(a: &Matrix<T>, term: &OdeSolutionTerm<T>) -> Result<bool> {
    let n = a.rows();
    let degree = term
        .vector_polynomial
        .iter()
        .chain(term.trig.iter().flat_map(|t| &t.sin_polynomial))
        .map(|p| p.power as usize)
        .max()
        .unwrap_or(0);
    let c = coefficients(&term.vector_polynomial, n, degree);
    let lam = &term.exponent;
    let next = |v: &[Vector<T>], p: usize| v[p + 1].scale(&T::from_integer(p as i64 + 1));
    match &term.trig {
        None => {
            for p in 0..=degree {
                let lhs = mat_vec_mul(a, &c[p], None)?;
                let rhs = c[p].scale(lam).add(&next(&c, p))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Some(t) => {
            let s = coefficients(&t.sin_polynomial, n, degree);
            for p in 0..=degree {
                let lhs = mat_vec_mul(a, &c[p], None)?;
                let rhs = c[p].scale(lam).add(&next(&c, p))?.add(&s[p].scale(&t.beta))?;
                if lhs != rhs {
                    return Ok(false);
                }
                let lhs = mat_vec_mul(a, &s[p], None)?;
                let rhs = s[p].scale(lam).add(&next(&s, p))?.sub(&c[p].scale(&t.beta))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

type Combine<'a, T> = dyn Fn(&Vector<T>, &Vector<T>) -> Vector<T> + 'a;

/// General solution of `X′ = A·X` as `n` independent terms.
///
/// Each Jordan chain `x₁, …, x_m` of `λ` gives the solutions
/// `X_k = e^{λt} Σ_{j≤k} x_j t^{k−j}/(k−j)!`. With `realify`, a real matrix
/// has each conjugate pair `α ± βi` replaced by the real and imaginary parts
/// of the solutions for `α + βi`.
pub fn ode_general_solution<T: Field>(
    a: &Matrix<T>,
    s: Option<&Spectrum<T>>,
    realify: bool,
) -> Result<Vec<OdeSolutionTerm<T>>> {
    a.require_square()?;
    if realify && !a.is_real() {
        return Err(EigenError::RealifyOnComplexMatrix);
    }
    let s = resolve_spectrum(a, s)?;
    let mut terms = Vec::with_capacity(a.rows());
    for lambda in s.values() {
        let im = lambda.im();
        let trig = realify && !im.is_zero();
        if trig && im.is_negative() {
            continue;
        }
        for chain in build_chains(a, lambda)? {
            for k in 1..=chain.len() {
                let parts: Vec<PolyPart<T>> = (1..=k)
                    .map(|j| {
                        let power = (k - j) as u32;
                        PolyPart {
                            vector: chain.vectors[j - 1].clone(),
                            power,
                            factorial: factorial(power),
                        }
                    })
                    .collect();
                if !trig {
                    terms.push(OdeSolutionTerm {
                        label: terms.len() + 1,
                        exponent: lambda.clone(),
                        vector_polynomial: parts,
                        trig: None,
                    });
                    continue;
                }
                let alpha = T::from_rational(lambda.re());
                let beta = T::from_rational(im.clone());
                let split = |f: &Combine<'_, T>| -> Vec<PolyPart<T>> {
                    parts
                        .iter()
                        .map(|p| {
                            let (re, imv) = real_imag(&p.vector);
                            PolyPart {
                                vector: f(&re, &imv),
                                power: p.power,
                                factorial: p.factorial,
                            }
                        })
                        .collect()
                };
                let neg = -T::one();
                // Re: (Re V)·cos − (Im V)·sin;  Im: (Im V)·cos + (Re V)·sin
                terms.push(OdeSolutionTerm {
                    label: terms.len() + 1,
                    exponent: alpha.clone(),
                    vector_polynomial: split(&|re, _| re.clone()),
                    trig: Some(TrigPart {
                        beta: beta.clone(),
                        sin_polynomial: split(&|_, imv| imv.scale(&neg)),
                    }),
                });
                terms.push(OdeSolutionTerm {
                    label: terms.len() + 1,
                    exponent: alpha,
                    vector_polynomial: split(&|_, imv| imv.clone()),
                    trig: Some(TrigPart {
                        beta,
                        sin_polynomial: split(&|re, _| re.clone()),
                    }),
                });
            }
        }
    }
    if terms.len() != a.rows() {
        return Err(EigenError::InternalInconsistency(format!(
            "{} solution terms for a {}-dimensional system",
            terms.len(),
            a.rows()
        )));
    }
    Ok(terms)
}

fn real_imag<T: Field>(v: &Vector<T>) -> (Vector<T>, Vector<T>) {
    let re = v.entries().iter().map(|x| T::from_rational(x.re())).collect();
    let im = v.entries().iter().map(|x| T::from_rational(x.im())).collect();
    (Vector::column(re), Vector::column(im))
}

fn render_vector<T: Field>(v: &Vector<T>) -> String {
    let items: Vec<String> = v.entries().iter().map(ToString::to_string).collect();
    format!("[{}]^T", items.join(","))
}

fn render_scalar<T: Field>(x: &T) -> String {
    let s = x.to_string();
    if x.is_real() && !s.contains('/') {
        s
    } else {
        format!("({s})")
    }
}

fn render_poly<T: Field>(parts: &[PolyPart<T>]) -> String {
    let mut out = String::new();
    for (k, p) in parts.iter().filter(|p| !p.vector.is_zero()).enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&render_vector(&p.vector));
        match p.power {
            0 => {}
            1 => out.push_str("*t"),
            e => {
                let _ = write!(out, "*t^{e}");
            }
        }
        if p.factorial > 1 {
            let _ = write!(out, "/{}", p.factorial);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Text form of one term, e.g. `c1*[-1,1]^T*exp(2t)`.
pub fn render_term<T: Field>(term: &OdeSolutionTerm<T>) -> String {
    let exp = format!("exp({}t)", render_scalar(&term.exponent));
    let wrap = |parts: &[PolyPart<T>]| {
        let s = render_poly(parts);
        if parts.iter().filter(|p| !p.vector.is_zero()).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    match &term.trig {
        None => format!("c{}*{}*{exp}", term.label, wrap(&term.vector_polynomial)),
        Some(t) => {
            let beta = render_scalar(&t.beta);
            format!(
                "c{}*{exp}*({}*cos({beta}t) + {}*sin({beta}t))",
                term.label,
                wrap(&term.vector_polynomial),
                wrap(&t.sin_polynomial)
            )
        }
    }
}

/// `X(t) = Σ c_k X_k(t)` as text.
pub fn render_solution<T: Field>(terms: &[OdeSolutionTerm<T>]) -> String {
    let parts: Vec<String> = terms.iter().map(render_term).collect();
    format!("X(t) = {}", parts.join(" + "))
}
