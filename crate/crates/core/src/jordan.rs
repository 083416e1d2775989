//! Generalized eigenvectors, Jordan chains and Jordan canonical forms from
//! powers of `κ_λ(A)`.

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational};
use crate::matrix::{
    mat_inverse, mat_mul, mat_nullspace_basis, mat_rank, mat_rref, mat_sub_scalar_diag, mat_vec_mul,
    stacked_rank, Matrix, Vector,
};
use crate::spectrum::{charpoly, root_multiplicity, verify_spectrum, Spectrum};

/// Vectors `x₁, …, x_m` with `κ·x₁ = 0` and `κ·x_{j+1} = x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChain<T = GaussianRational> {
    pub eigenvalue: T,
    /// `x₁` (the eigenvector) first, the chain top last.
    pub vectors: Vec<Vector<T>>,
}

impl<T: Field> JordanChain<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn top(&self) -> &Vector<T> {
        self.vectors.last().expect("chains are nonempty")
    }

    /// Checks every chain relation exactly.
    pub fn verify(&self, a: &Matrix<T>) -> Result<bool> {
        let k = mat_sub_scalar_diag(a, &self.eigenvalue)?;
        let mut expected = Vector::zeros(a.rows());
        for x in &self.vectors {
            if x.is_zero() || mat_vec_mul(&k, x, None)? != expected {
                return Ok(false);
            }
            expected = x.clone();
        }
        Ok(true)
    }
}

/// `A = P·J·P⁻¹` with `J` in Jordan form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanForm<T = GaussianRational> {
    pub p: Matrix<T>,
    pub j: Matrix<T>,
    pub p_inv: Matrix<T>,
    /// `(eigenvalue, block size)` in the order the blocks appear in `J`.
    pub blocks: Vec<(T, usize)>,
    pub chains: Vec<JordanChain<T>>,
}

impl<T: Field> JordanForm<T> {
    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|(_, s)| *s == 1)
    }

    pub fn reconstruct(&self) -> Result<Matrix<T>> {
        mat_mul(&mat_mul(&self.p, &self.j, None)?, &self.p_inv, None)
    }

    /// Block sizes for one eigenvalue, in `J` order.
    pub fn block_sizes(&self, eigenvalue: &T) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|(v, _)| v == eigenvalue)
            .map(|(_, s)| *s)
            .collect()
    }
}

fn algebraic_multiplicity<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<usize> {
    let (m, _) = root_multiplicity(&charpoly(a)?, lambda);
    if m == 0 {
        return Err(EigenError::NotInSpectrum(lambda.to_string()));
    }
    Ok(m)
}

/// `κ, κ², …` with their ranks, up to the first power whose rank is
/// `n − alg_mult(λ)`. The length is the index of `λ`.
pub fn kappa_power_sequence<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<Vec<(Matrix<T>, usize)>> {
    let alg = algebraic_multiplicity(a, lambda)?;
    let n = a.rows();
    let k = mat_sub_scalar_diag(a, lambda)?;
    let mut power = k.clone();
    let mut out = Vec::new();
    for _ in 0..alg {
        let r = mat_rank(&power);
        let done = r == n - alg;
        out.push((power.clone(), r));
        if done {
            return Ok(out);
        }
        power = mat_mul(&power, &k, None)?;
    }
    Err(EigenError::InternalInconsistency(format!(
        "rank of powers of A - ({lambda})I did not reach {} within {alg} steps",
        n - alg
    )))
}

/// Null-space basis of `κ^j` for `j ≥ 0`.
fn kernel_basis<T: Field>(seq: &[(Matrix<T>, usize)], j: usize) -> Vec<Vector<T>> {
    if j == 0 {
        Vec::new()
    } else {
        mat_nullspace_basis(&seq[j - 1].0)
    }
}

/// Vectors of rank exactly `rank_j`: null-space basis vectors of `κ^j` that
/// are independent modulo `null(κ^{j−1})`.
pub fn generalized_eigenvectors<T: Field>(a: &Matrix<T>, lambda: &T, rank_j: usize) -> Result<Vec<Vector<T>>> {
    let seq = kappa_power_sequence(a, lambda)?;
    if rank_j == 0 || rank_j > seq.len() {
        return Err(EigenError::RankTooLarge {
            requested: rank_j,
            index: seq.len(),
        });
    }
    let mut kept = kernel_basis(&seq, rank_j - 1);
    let base = kept.len();
    for x in kernel_basis(&seq, rank_j) {
        kept.push(x);
        if stacked_rank(&kept) < kept.len() {
            kept.pop();
        }
    }
    Ok(kept.split_off(base))
}

/// Solves `κ_λ(A)·x = v`, returning the solution with free variables set to
/// zero, or `None` when `v` is not in the column space.
pub fn solve_chain_predecessor<T: Field>(a: &Matrix<T>, lambda: &T, v: &Vector<T>) -> Result<Option<Vector<T>>> {
    let k = mat_sub_scalar_diag(a, lambda)?;
    let aug = k.hstack(&Matrix::from_columns(&[v.as_column()])?)?;
    let (r, pivots) = mat_rref(&aug, None);
    if pivots.last() == Some(&k.cols()) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); k.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, k.cols()).clone();
    }
    Ok(Some(Vector::column(x)))
}

/// Jordan chains for `λ`, longest first.
///
/// Block sizes follow from the rank sequence: the number of blocks of size at
/// least `j` is `rank(κ^{j−1}) − rank(κ^j)`. Chain tops are picked from the
/// deepest level down, each independent of everything already at its level
/// modulo `null(κ^{j−1})`, and each chain is generated by repeated
/// multiplication by `κ`. Each chain is then scaled by a single common factor.
pub fn build_chains<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<Vec<JordanChain<T>>> {
    let seq = kappa_power_sequence(a, lambda)?;
    let n = a.rows();
    let index = seq.len();
    let alg = n - seq[index - 1].1;
    let rank = |j: usize| if j == 0 { n } else { seq[j - 1].1 };
    let at_least = |j: usize| if j > index { 0 } else { rank(j - 1) - rank(j) };
    let k = &seq[0].0;

    let mut chains: Vec<JordanChain<T>> = Vec::new();
    for level in (1..=index).rev() {
        let wanted = at_least(level) - at_least(level + 1);
        if wanted == 0 {
            continue;
        }
        // Vectors already sitting at this level: images of longer chain tops.
        let mut span: Vec<Vector<T>> = kernel_basis(&seq, level - 1);
        for c in &chains {
            span.push(c.vectors[level - 1].clone());
        }
        let mut new_tops = Vec::new();
        for x in kernel_basis(&seq, level) {
            if new_tops.len() == wanted {
                break;
            }
            span.push(x.clone());
            if stacked_rank(&span) == span.len() {
                new_tops.push(x);
            } else {
                span.pop();
            }
        }
        if new_tops.len() != wanted {
            return Err(EigenError::InternalInconsistency(format!(
                "needed {wanted} chains of length {level} for {lambda}, found {}",
                new_tops.len()
            )));
        }
        for top in new_tops {
            let mut vectors = vec![top];
            for _ in 1..level {
                let next = mat_vec_mul(k, vectors.last().expect("nonempty"), None)?;
                vectors.push(next);
            }
            vectors.reverse();
            chains.push(JordanChain {
                eigenvalue: lambda.clone(),
                vectors,
            });
        }
    }

    for c in &mut chains {
        let all: Vec<T> = c.vectors.iter().flat_map(|v| v.entries().to_vec()).collect();
        let factor = T::from_rational(T::primitive_factor(&all));
        for v in &mut c.vectors {
            *v = v.scale(&factor);
        }
    }
    let total: usize = chains.iter().map(JordanChain::len).sum();
    if total != alg {
        return Err(EigenError::InternalInconsistency(format!(
            "chains for {lambda} hold {total} vectors, multiplicity is {alg}"
        )));
    }
    Ok(chains)
}

/// Jordan form with eigenvalues ascending and blocks of one eigenvalue in
/// decreasing size. The reconstruction `P·J·P⁻¹ = A` is checked before
/// returning.
pub fn jordan_form<T: Field>(a: &Matrix<T>, s: &Spectrum<T>) -> Result<JordanForm<T>> {
    let s = verify_spectrum(a, s)?;
    let n = a.rows();
    let mut chains = Vec::new();
    for v in s.values() {
        chains.extend(build_chains(a, v)?);
    }
    let columns: Vec<Vector<T>> = chains.iter().flat_map(|c| c.vectors.clone()).collect();
    let p = Matrix::from_columns(&columns)?;
    let mut j = Matrix::zeros(n, n);
    let mut blocks = Vec::new();
    let mut offset = 0;
    for c in &chains {
        for i in 0..c.len() {
            j.set(offset + i, offset + i, c.eigenvalue.clone());
            if i + 1 < c.len() {
                j.set(offset + i, offset + i + 1, T::one());
            }
        }
        blocks.push((c.eigenvalue.clone(), c.len()));
        offset += c.len();
    }
    let p_inv = mat_inverse(&p).map_err(|_| {
        EigenError::InternalInconsistency("chain vectors are linearly dependent".into())
    })?;
    let form = JordanForm {
        p,
        j,
        p_inv,
        blocks,
        chains,
    };
    if form.reconstruct()? != *a {
        return Err(EigenError::InternalInconsistency(
            "P·J·P⁻¹ does not reproduce the matrix".into(),
        ));
    }
    Ok(form)
}
