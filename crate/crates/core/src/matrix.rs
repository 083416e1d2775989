//! Dense matrices over an exact [`Field`], with instrumented elementary
//! operations.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! elimination result is deterministic.

use std::cell::Cell;
use std::fmt;

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational};

/// Tally of field operations performed while it is attached to a
/// computation. Not `Sync`: one counter belongs to one computation.
#[derive(Debug, Default, Clone)]
pub struct OpCounter {
    mults: Cell<u64>,
    adds: Cell<u64>,
    divs: Cell<u64>,
}

/// Snapshot of an [`OpCounter`].
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounts {
    pub scalar_mults: u64,
    pub scalar_adds: u64,
    pub scalar_divs: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.scalar_mults + self.scalar_adds + self.scalar_divs
    }
}

impl std::ops::Sub for OpCounts {
    type Output = OpCounts;
    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            scalar_mults: self.scalar_mults - rhs.scalar_mults,
            scalar_adds: self.scalar_adds - rhs.scalar_adds,
            scalar_divs: self.scalar_divs - rhs.scalar_divs,
        }
    }
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self) -> OpCounts {
        OpCounts {
            scalar_mults: self.mults.get(),
            scalar_adds: self.adds.get(),
            scalar_divs: self.divs.get(),
        }
    }

    fn bump(cell: &Cell<u64>, n: u64) {
        cell.set(cell.get() + n);
    }
}

#[inline]
pub(crate) fn count_mul(c: Option<&OpCounter>, n: u64) {
    if let Some(c) = c {
        OpCounter::bump(&c.mults, n);
    }
}

#[inline]
pub(crate) fn count_add(c: Option<&OpCounter>, n: u64) {
    if let Some(c) = c {
        OpCounter::bump(&c.adds, n);
    }
}

#[inline]
pub(crate) fn count_div(c: Option<&OpCounter>, n: u64) {
    if let Some(c) = c {
        OpCounter::bump(&c.divs, n);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Column,
    Row,
}

/// A column or row vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector<T = GaussianRational> {
    entries: Vec<T>,
    orientation: Orientation,
}

impl<T: Field> Vector<T> {
    pub fn column(entries: Vec<T>) -> Self {
        Vector {
            entries,
            orientation: Orientation::Column,
        }
    }

    pub fn row(entries: Vec<T>) -> Self {
        Vector {
            entries,
            orientation: Orientation::Row,
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::column(values.iter().map(|&v| T::from_integer(v)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self::column(vec![T::zero(); len])
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.entries[k] = T::one();
        v
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(T::is_real)
    }

    pub fn transposed(&self) -> Self {
        Vector {
            entries: self.entries.clone(),
            orientation: match self.orientation {
                Orientation::Column => Orientation::Row,
                Orientation::Row => Orientation::Column,
            },
        }
    }

    pub fn as_column(&self) -> Self {
        Self::column(self.entries.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector {
            entries: self.entries.iter().map(|x| x.clone() * k).collect(),
            orientation: self.orientation,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b)
                .collect(),
            orientation: self.orientation,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b)
                .collect(),
            orientation: self.orientation,
        })
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, other: &Self) -> Result<T> {
        self.check_len(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    /// Canonical representative of the line through `self`: the first
    /// nonzero component becomes a positive integer, all components are
    /// (Gaussian) integers, and their parts share no common factor.
    ///
    /// `normalized(c·v) == normalized(v)` for every nonzero scalar `c`.
    pub fn normalized(&self) -> Result<Self> {
        let lead = self
            .entries
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(EigenError::ZeroVector)?
            .clone();
        let unit: Vec<T> = self.entries.iter().map(|x| x.clone() / &lead).collect();
        let k = T::from_rational(T::primitive_factor(&unit));
        Ok(Vector {
            entries: unit.into_iter().map(|x| x * &k).collect(),
            orientation: self.orientation,
        })
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(EigenError::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl<T: Field> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")?;
        if self.orientation == Orientation::Column {
            f.write_str("^T")?;
        }
        Ok(())
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T = GaussianRational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(EigenError::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(EigenError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((k, bad)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(EigenError::DimensionMismatch(format!(
                "row {k} has {} entries, expected {c}",
                bad.len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_integer(v)).collect())
                .collect(),
        )
        .expect("well-formed integer matrix")
    }

    pub fn from_columns(cols: &[Vector<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::len);
        if cols.iter().any(|v| v.len() != r) {
            return Err(EigenError::DimensionMismatch("ragged column set".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for v in cols {
                data.push(v.entries[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    pub fn from_row_vectors(rows: &[Vector<T>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|v| v.entries.clone()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, value: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector::row(self.row_slice(i).to_vec())
    }

    pub fn col(&self, j: usize) -> Vector<T> {
        Vector::column((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(T::is_real)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, k: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(EigenError::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row_slice(i));
            data.extend_from_slice(other.row_slice(i));
        }
        Self::new(self.rows, self.cols + other.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other, None)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        self.require_square()?;
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul(&acc, &base, None)?;
            }
            e >>= 1;
            if e > 0 {
                base = mat_mul(&base, &base, None)?;
            }
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(EigenError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EigenError::DimensionMismatch(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Exact product `a·b`.
pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>, counter: Option<&OpCounter>) -> Result<Matrix<T>> {
    if a.cols != b.rows {
        return Err(EigenError::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::<T>::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if bkj.is_zero() {
                    continue;
                }
                let idx = i * out.cols + j;
                let acc = std::mem::replace(&mut out.data[idx], T::zero());
                out.data[idx] = acc + aik.clone() * bkj;
                count_mul(counter, 1);
                count_add(counter, 1);
            }
        }
    }
    Ok(out)
}

/// `A − λI`.
pub fn mat_sub_scalar_diag<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<Matrix<T>> {
    a.require_square()?;
    let mut out = a.clone();
    for i in 0..a.rows {
        let v = out.get(i, i).clone() - lambda;
        out.set(i, i, v);
    }
    Ok(out)
}

/// Reduced row echelon form and the ascending list of pivot columns.
pub fn mat_rref<T: Field>(a: &Matrix<T>, counter: Option<&OpCounter>) -> (Matrix<T>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let pivot = m.get(r, c).clone();
        if !pivot.is_one() {
            for j in c..m.cols {
                let x = m.get(r, j);
                if !x.is_zero() {
                    let v = x.clone() / &pivot;
                    m.set(r, j, v);
                    count_div(counter, 1);
                }
            }
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..m.cols {
                let prj = m.get(r, j);
                if prj.is_zero() {
                    continue;
                }
                let v = m.get(i, j).clone() - factor.clone() * prj;
                m.set(i, j, v);
                count_mul(counter, 1);
                count_add(counter, 1);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn mat_rank<T: Field>(a: &Matrix<T>) -> usize {
    mat_rref(a, None).1.len()
}

/// Counted variant of [`mat_nullspace_basis`].
pub fn nullspace_basis_counted<T: Field>(a: &Matrix<T>, counter: Option<&OpCounter>) -> Vec<Vector<T>> {
    let (r, pivots) = mat_rref(a, counter);
    let mut basis = Vec::new();
    for free in (0..a.cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![T::zero(); a.cols];
        x[free] = T::one();
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = -r.get(row, free).clone();
        }
        let v = Vector::column(x)
            .normalized()
            .expect("free-variable vector is nonzero");
        basis.push(v);
    }
    basis
}

/// Basis of the null space: one normalized vector per free column.
pub fn mat_nullspace_basis<T: Field>(a: &Matrix<T>) -> Vec<Vector<T>> {
    nullspace_basis_counted(a, None)
}

pub fn mat_det<T: Field>(a: &Matrix<T>) -> Result<T> {
    det_counted(a, None)
}

pub(crate) fn det_counted<T: Field>(a: &Matrix<T>, counter: Option<&OpCounter>) -> Result<T> {
    a.require_square()?;
    let n = a.rows;
    let mut m = a.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
            return Ok(T::zero());
        };
        if p != c {
            m.swap_rows(c, p);
            det = -det;
        }
        let pivot = m.get(c, c).clone();
        det = det * &pivot;
        count_mul(counter, 1);
        for i in c + 1..n {
            let x = m.get(i, c);
            if x.is_zero() {
                continue;
            }
            let factor = x.clone() / &pivot;
            count_div(counter, 1);
            for j in c..n {
                let pcj = m.get(c, j);
                if pcj.is_zero() {
                    continue;
                }
                let v = m.get(i, j).clone() - factor.clone() * pcj;
                m.set(i, j, v);
                count_mul(counter, 1);
                count_add(counter, 1);
            }
        }
    }
    Ok(det)
}

pub fn mat_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    a.require_square()?;
    let n = a.rows;
    let aug = a.hstack(&Matrix::identity(n))?;
    let (r, pivots) = mat_rref(&aug, None);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(EigenError::Singular);
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        data.extend_from_slice(&r.row_slice(i)[n..]);
    }
    Matrix::new(n, n, data)
}

/// `A·v` for a column vector, `v·A` for a row vector.
pub fn mat_vec_mul<T: Field>(a: &Matrix<T>, v: &Vector<T>, counter: Option<&OpCounter>) -> Result<Vector<T>> {
    match v.orientation {
        Orientation::Column => {
            if v.len() != a.cols {
                return Err(EigenError::DimensionMismatch(format!(
                    "{}x{} matrix times column of length {}",
                    a.rows,
                    a.cols,
                    v.len()
                )));
            }
            let mut out = Vec::with_capacity(a.rows);
            for i in 0..a.rows {
                let mut acc = T::zero();
                for (aij, vj) in a.row_slice(i).iter().zip(&v.entries) {
                    if aij.is_zero() || vj.is_zero() {
                        continue;
                    }
                    acc = acc + aij.clone() * vj;
                    count_mul(counter, 1);
                    count_add(counter, 1);
                }
                out.push(acc);
            }
            Ok(Vector::column(out))
        }
        Orientation::Row => {
            if v.len() != a.rows {
                return Err(EigenError::DimensionMismatch(format!(
                    "row of length {} times {}x{} matrix",
                    v.len(),
                    a.rows,
                    a.cols
                )));
            }
            let mut out = vec![T::zero(); a.cols];
            for (i, vi) in v.entries.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                for (j, aij) in a.row_slice(i).iter().enumerate() {
                    if aij.is_zero() {
                        continue;
                    }
                    out[j] = out[j].clone() + vi.clone() * aij;
                    count_mul(counter, 1);
                    count_add(counter, 1);
                }
            }
            Ok(Vector::row(out))
        }
    }
}

/// Determinant-expansion cross product of two length-3 vectors.
pub fn cross_product_3<T: Field>(u: &Vector<T>, v: &Vector<T>) -> Result<Vector<T>> {
    if u.len() != 3 || v.len() != 3 {
        return Err(EigenError::DimensionMismatch(format!(
            "cross product needs length-3 vectors, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (a, b) = (&u.entries, &v.entries);
    let x = a[1].clone() * &b[2] - a[2].clone() * &b[1];
    let y = a[2].clone() * &b[0] - a[0].clone() * &b[2];
    let z = a[0].clone() * &b[1] - a[1].clone() * &b[0];
    Ok(Vector::column(vec![x, y, z]))
}

/// Rank of the matrix whose columns are `vectors` (0 for an empty set).
pub fn stacked_rank<T: Field>(vectors: &[Vector<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(vectors).map_or(0, |m| mat_rank(&m))
}

/// Greedy leftmost-first selection: keeps a vector only if it raises the
/// rank of the kept set.
pub fn independent_subset<T: Field>(candidates: impl IntoIterator<Item = Vector<T>>) -> Vec<Vector<T>> {
    let mut kept: Vec<Vector<T>> = Vec::new();
    for v in candidates {
        if v.is_zero() {
            continue;
        }
        kept.push(v);
        if stacked_rank(&kept) < kept.len() {
            kept.pop();
        }
    }
    kept
}
