//! Eigenvectors from products of characteristic matrices `κ_λ(A) = A − λI`.
//!
//! For a diagonalizable `A`, every nonzero column of the product of the
//! κ-matrices of all eigenvalues other than `λ` is an eigenvector for `λ`.
//! Columns are evaluated one at a time as chains of matrix-vector products,
//! so the full product matrix is never formed.

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational};
use crate::matrix::{
    count_add, cross_product_3, independent_subset, mat_det, mat_mul, mat_rref, mat_sub_scalar_diag,
    mat_vec_mul, nullspace_basis_counted, Matrix, OpCounter, Vector,
};
use crate::spectrum::{charpoly, root_multiplicity, Spectrum};

/// `A − λI` tagged with `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaMatrix<T = GaussianRational> {
    pub matrix: Matrix<T>,
    pub eigenvalue: T,
    pub source_dim: usize,
}

impl<T: Field> KappaMatrix<T> {
    /// `matrix + λI`, the source matrix.
    pub fn reconstruct(&self) -> Matrix<T> {
        mat_sub_scalar_diag(&self.matrix, &-self.eigenvalue.clone()).expect("square by construction")
    }
}

/// Which side a vector multiplies the matrix from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `A·v = λ·v`, column vectors.
    Right,
    /// `w·A = λ·w`, row vectors.
    Left,
}

/// Eigenvectors for one distinct eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSpace<T = GaussianRational> {
    pub eigenvalue: T,
    pub alg_mult: usize,
    pub vectors: Vec<Vector<T>>,
}

impl<T: Field> EigenSpace<T> {
    pub fn geom_mult(&self) -> usize {
        self.vectors.len()
    }
}

/// Eigenspaces for every distinct eigenvalue, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem<T = GaussianRational> {
    pub spaces: Vec<EigenSpace<T>>,
}

impl<T: Field> EigenSystem<T> {
    pub fn is_complete(&self) -> bool {
        self.spaces.iter().all(|s| s.geom_mult() == s.alg_mult)
    }
}

/// Outcome of the diagonalizability test: the product over distinct
/// eigenvalues, which is zero exactly when `A` is diagonalizable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalizability<T = GaussianRational> {
    pub diagonalizable: bool,
    pub product: Matrix<T>,
}

impl<T: Field> Diagonalizability<T> {
    /// The nonzero product, when `A` is not diagonalizable.
    pub fn witness(&self) -> Option<&Matrix<T>> {
        (!self.diagonalizable).then_some(&self.product)
    }
}

pub fn kappa_of<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<KappaMatrix<T>> {
    Ok(KappaMatrix {
        matrix: mat_sub_scalar_diag(a, lambda)?,
        eigenvalue: lambda.clone(),
        source_dim: a.rows(),
    })
}

fn counted_kappa<T: Field>(a: &Matrix<T>, lambda: &T, counter: Option<&OpCounter>) -> Result<Matrix<T>> {
    count_add(counter, a.rows() as u64);
    mat_sub_scalar_diag(a, lambda)
}

fn check_target<T: Field>(a: &Matrix<T>, s: &Spectrum<T>, target: &T) -> Result<usize> {
    a.require_square()?;
    if s.dim() != a.rows() {
        return Err(EigenError::InvalidSpectrum(format!(
            "multiplicities sum to {}, matrix is {}x{}",
            s.dim(),
            a.rows(),
            a.cols()
        )));
    }
    s.multiplicity(target)
        .ok_or_else(|| EigenError::TargetNotInSpectrum(target.to_string()))
}

/// Factors `(κ_μ, power)` for every eigenvalue `μ ≠ target`, ascending.
fn complement_factors<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    target: &T,
    with_multiplicity: bool,
    counter: Option<&OpCounter>,
) -> Result<Vec<(Matrix<T>, usize)>> {
    s.pairs()
        .iter()
        .filter(|(v, _)| v != target)
        .map(|(v, m)| Ok((counted_kappa(a, v, counter)?, if with_multiplicity { *m } else { 1 })))
        .collect()
}

/// Product of κ-matrices over the eigenvalues complementary to `target`, in
/// ascending eigenvalue order.
///
/// Without multiplicity each other distinct eigenvalue contributes one
/// factor. With multiplicity the full multiset is used and the target's own
/// factor appears `m − 1` times.
pub fn complementary_product<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    target: &T,
    with_multiplicity: bool,
    counter: Option<&OpCounter>,
) -> Result<Matrix<T>> {
    let m = check_target(a, s, target)?;
    let mut product = Matrix::identity(a.rows());
    for (v, mult) in s.pairs() {
        let power = match (v == target, with_multiplicity) {
            (true, true) => m - 1,
            (true, false) => 0,
            (false, true) => *mult,
            (false, false) => 1,
        };
        if power == 0 {
            continue;
        }
        let k = counted_kappa(a, v, counter)?;
        for _ in 0..power {
            product = mat_mul(&product, &k, counter)?;
        }
    }
    Ok(product)
}

/// Applies the factors to one unit vector. Right side: the rightmost factor
/// first, giving a column of the product. Left side: the leftmost factor
/// first, giving a row.
fn product_slice<T: Field>(
    factors: &[(Matrix<T>, usize)],
    n: usize,
    index: usize,
    side: Side,
    counter: Option<&OpCounter>,
) -> Result<Vector<T>> {
    let mut v = Vector::unit(n, index);
    if side == Side::Left {
        v = v.transposed();
    }
    let ordered: Vec<&(Matrix<T>, usize)> = match side {
        Side::Right => factors.iter().rev().collect(),
        Side::Left => factors.iter().collect(),
    };
    for (k, p) in ordered {
        for _ in 0..*p {
            v = mat_vec_mul(k, &v, counter)?;
        }
    }
    Ok(v)
}

fn satisfies<T: Field>(a: &Matrix<T>, lambda: &T, v: &Vector<T>) -> bool {
    !v.is_zero()
        && mat_vec_mul(a, v, None)
            .map(|av| av == v.scale(lambda))
            .unwrap_or(false)
}

fn kappa_vectors<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    target: &T,
    side: Side,
    counter: Option<&OpCounter>,
) -> Result<Vec<Vector<T>>> {
    let alg = check_target(a, s, target)?;
    let n = a.rows();
    let orient = |v: Vector<T>| match side {
        Side::Right => v,
        Side::Left => v.transposed(),
    };
    let kt = counted_kappa(a, target, counter)?;
    if kt.is_zero() {
        return Ok((0..n).map(|i| orient(Vector::unit(n, i))).collect());
    }

    let oriented_a = match side {
        Side::Right => a.clone(),
        Side::Left => a.transpose(),
    };
    let factors = complement_factors(a, s, target, true, counter)?;
    let mut found: Vec<Vector<T>> = Vec::new();
    for i in 0..n {
        if found.len() == alg {
            break;
        }
        let mut v = product_slice(&factors, n, i, side, counter)?;
        if v.is_zero() {
            continue;
        }
        // Up to m − 1 further κ_target factors: stop at the last nonzero
        // vector, which κ_target sends to zero.
        for _ in 1..alg {
            let w = mat_vec_mul(&kt, &v, counter)?;
            if w.is_zero() {
                break;
            }
            v = w;
        }
        if !satisfies(&oriented_a, target, &v.as_column()) {
            continue;
        }
        let v = v.normalized()?;
        let mut trial = found.iter().map(Vector::as_column).collect::<Vec<_>>();
        trial.push(v.as_column());
        if counted_rank(&trial, counter) == trial.len() {
            found.push(v);
        }
    }

    if found.len() < alg {
        let geom = n - mat_rref(&kt, counter).1.len();
        if found.len() < geom {
            // The eigenspace lies in the range of the complementary product:
            // it is R·null(κ_target·R) on the right, null((R·κ_target)ᵀ)ᵀ·R on the left.
            let r = factors.iter().try_fold(Matrix::identity(n), |acc, (k, p)| {
                (0..*p).try_fold(acc, |acc, _| mat_mul(&acc, k, counter))
            })?;
            let (m, rr) = match side {
                Side::Right => (mat_mul(&kt, &r, counter)?, r.clone()),
                Side::Left => (mat_mul(&r, &kt, counter)?.transpose(), r.transpose()),
            };
            let images = nullspace_basis_counted(&m, counter)
                .into_iter()
                .map(|x| mat_vec_mul(&rr, &x, counter))
                .collect::<Result<Vec<_>>>()?;
            let mut kept: Vec<Vector<T>> = found.iter().map(Vector::as_column).collect();
            let base = kept.len();
            kept = independent_subset(kept.into_iter().chain(images));
            for v in kept.into_iter().skip(base) {
                if satisfies(&oriented_a, target, &v) {
                    found.push(orient(v.normalized()?));
                }
            }
        }
        if found.len() != geom {
            return Err(EigenError::InternalInconsistency(format!(
                "found {} eigenvectors for {target}, null space has dimension {geom}",
                found.len()
            )));
        }
    }
    Ok(found)
}

fn counted_rank<T: Field>(columns: &[Vector<T>], counter: Option<&OpCounter>) -> usize {
    Matrix::from_columns(columns).map_or(0, |m| mat_rref(&m, counter).1.len())
}

/// Basis of the eigenspace of `target`, taken from nonzero columns of the
/// complementary κ-product.
///
/// Each column is pushed through the remaining `κ_target` factors only as far
/// as it stays nonzero, so repeated eigenvalues of defective matrices still
/// produce true eigenvectors. Columns are kept leftmost first when they raise
/// the rank, and the scan stops once the algebraic multiplicity is reached.
/// Every returned vector has been checked against `A·v = λ·v`.
pub fn eigenvectors_via_kappa<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    target: &T,
    counter: Option<&OpCounter>,
) -> Result<Vec<Vector<T>>> {
    kappa_vectors(a, s, target, Side::Right, counter)
}

/// Left eigenvectors (row vectors with `w·A = λ·w`) from rows of the same
/// product.
pub fn left_eigenvectors_via_kappa<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    target: &T,
    counter: Option<&OpCounter>,
) -> Result<Vec<Vector<T>>> {
    kappa_vectors(a, s, target, Side::Left, counter)
}

/// Eigenspaces for every distinct eigenvalue of `s`.
pub fn eigen_system<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    side: Side,
    counter: Option<&OpCounter>,
) -> Result<EigenSystem<T>> {
    let spaces = s
        .pairs()
        .iter()
        .map(|(v, m)| {
            Ok(EigenSpace {
                eigenvalue: v.clone(),
                alg_mult: *m,
                vectors: kappa_vectors(a, s, v, side, counter)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenSystem { spaces })
}

/// Eigenvectors of the first and of the second eigenvalue.
pub type EigenvectorPair<T> = (Vec<Vector<T>>, Vec<Vector<T>>);

/// For a matrix whose spectrum is exactly `{λ₁, λ₂}`: eigenvectors of `λ₁`
/// from the columns of `κ_{λ₂}` and eigenvectors of `λ₂` from the columns of
/// `κ_{λ₁}`.
pub fn two_spectrum_eigenvectors<T: Field>(
    a: &Matrix<T>,
    lambda1: &T,
    lambda2: &T,
) -> Result<EigenvectorPair<T>> {
    a.require_square()?;
    if lambda1 == lambda2 {
        return Err(EigenError::WrongSpectrum);
    }
    let p = charpoly(a)?;
    let (m1, rest) = root_multiplicity(&p, lambda1);
    let (m2, rest) = root_multiplicity(&rest, lambda2);
    if m1 == 0 || m2 == 0 || rest.degree() != Some(0) {
        return Err(EigenError::WrongSpectrum);
    }
    let k1 = mat_sub_scalar_diag(a, lambda1)?;
    let k2 = mat_sub_scalar_diag(a, lambda2)?;
    let product = mat_mul(&k1, &k2, None)?;
    if !product.is_zero() {
        return Err(EigenError::NotDiagonalizable {
            witness: product.to_string(),
        });
    }
    let columns_of = |k: &Matrix<T>, lambda: &T| -> Result<Vec<Vector<T>>> {
        let cols = independent_subset((0..k.cols()).map(|j| k.col(j)));
        cols.into_iter()
            .map(|v| {
                if satisfies(a, lambda, &v) {
                    v.normalized()
                } else {
                    Err(EigenError::InternalInconsistency(format!(
                        "column {v} is not an eigenvector for {lambda}"
                    )))
                }
            })
            .collect()
    };
    Ok((columns_of(&k2, lambda1)?, columns_of(&k1, lambda2)?))
}

/// Closed-form eigenvectors of a 2×2 matrix `[[a, b], [c, d]]`:
/// `v₁ = (a − λ₂, c)` and `v₂ = (b, d − λ₁)`, each falling back to the other
/// column of the same κ-matrix when it vanishes.
pub fn shortcut_2x2<T: Field>(a: &Matrix<T>, lambda1: &T, lambda2: &T) -> Result<(Vector<T>, Vector<T>)> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(EigenError::DimensionMismatch(format!(
            "2x2 shortcut applied to a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if lambda1.clone() + lambda2 != a.trace()
        || lambda1.clone() * lambda2 != mat_det(a)?
    {
        return Err(EigenError::WrongSpectrum);
    }
    if *a == Matrix::scalar(2, lambda1.clone()) {
        return Ok((Vector::unit(2, 0), Vector::unit(2, 1)));
    }
    let k1 = mat_sub_scalar_diag(a, lambda1)?;
    let k2 = mat_sub_scalar_diag(a, lambda2)?;
    let pick = |first: Vector<T>, second: Vector<T>| if first.is_zero() { second } else { first };
    let v1 = pick(k2.col(0), k2.col(1));
    let v2 = pick(k1.col(1), k1.col(0));
    if lambda1 == lambda2 {
        return Err(EigenError::Defective {
            eigenvalue: lambda1.to_string(),
            direction: v1.normalized()?.to_string(),
        });
    }
    for (v, l) in [(&v1, lambda1), (&v2, lambda2)] {
        if !satisfies(a, l, v) {
            return Err(EigenError::InternalInconsistency(format!(
                "shortcut vector {v} fails for {l}"
            )));
        }
    }
    Ok((v1.normalized()?, v2.normalized()?))
}

/// Combined κ-matrix for a matrix with at most two distinct eigenvalues:
/// column `i` is column `i` of `κ_μ(A)`, where `μ` is the eigenvalue
/// complementary to `assignment[i]`.
///
/// Returns the matrix and the indices of its zero columns.
pub fn spectrum2_combined_matrix<T: Field>(a: &Matrix<T>, assignment: &[T]) -> Result<(Matrix<T>, Vec<usize>)> {
    a.require_square()?;
    if assignment.len() != a.cols() {
        return Err(EigenError::DimensionMismatch(format!(
            "{} assignments for {} columns",
            assignment.len(),
            a.cols()
        )));
    }
    let mut distinct: Vec<T> = assignment.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() > 2 {
        return Err(EigenError::SpectrumTooLarge(distinct.len()));
    }
    let complement = |x: &T| distinct.iter().find(|v| *v != x).unwrap_or(x).clone();
    let mut m = a.clone();
    for (i, x) in assignment.iter().enumerate() {
        let v = m.get(i, i).clone() - complement(x);
        m.set(i, i, v);
    }
    let zero_cols = (0..m.cols()).filter(|&j| m.col(j).is_zero()).collect();
    Ok((m, zero_cols))
}

/// Eigenvector of a 3×3 matrix as the cross product of two non-parallel rows
/// of `κ_λ(A)`, trying row pairs (1,2), (1,3), (2,3).
pub fn cross_product_eigenvector_3x3<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<Vector<T>> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(EigenError::DimensionMismatch(format!(
            "cross-product method needs a 3x3 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let k = mat_sub_scalar_diag(a, lambda)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = cross_product_3(&k.row(i).as_column(), &k.row(j).as_column())?;
        if v.is_zero() {
            continue;
        }
        if !satisfies(a, lambda, &v) {
            return Err(EigenError::NotInSpectrum(lambda.to_string()));
        }
        return v.normalized();
    }
    Err(EigenError::AllRowsParallel)
}

/// Basis of `col(b1) ∩ col(b2)` from the null space of `[B₁ | −B₂]`.
pub fn column_space_intersection<T: Field>(b1: &Matrix<T>, b2: &Matrix<T>) -> Result<Vec<Vector<T>>> {
    if b1.rows() != b2.rows() {
        return Err(EigenError::DimensionMismatch(format!(
            "column spaces in dimensions {} and {}",
            b1.rows(),
            b2.rows()
        )));
    }
    let block = b1.hstack(&b2.scale(&-T::one()))?;
    let images = nullspace_basis_counted(&block, None)
        .into_iter()
        .map(|w| {
            let a_part = Vector::column(w.entries()[..b1.cols()].to_vec());
            mat_vec_mul(b1, &a_part, None)
        })
        .collect::<Result<Vec<_>>>()?;
    independent_subset(images)
        .into_iter()
        .map(|v| v.normalized())
        .collect()
}

/// Diagonalizable iff the product of `κ_λ(A)` over distinct eigenvalues is
/// zero. The product is returned either way.
pub fn is_diagonalizable<T: Field>(
    a: &Matrix<T>,
    s: &Spectrum<T>,
    counter: Option<&OpCounter>,
) -> Result<Diagonalizability<T>> {
    a.require_square()?;
    let mut product = Matrix::identity(a.rows());
    for v in s.values() {
        let k = counted_kappa(a, v, counter)?;
        product = mat_mul(&product, &k, counter)?;
    }
    Ok(Diagonalizability {
        diagonalizable: product.is_zero(),
        product,
    })
}

/// Canonical scaling: Gaussian-integral entries without common factor, first
/// nonzero entry a positive integer.
pub fn normalize_eigenvector<T: Field>(v: &Vector<T>) -> Result<Vector<T>> {
    v.normalized()
}
