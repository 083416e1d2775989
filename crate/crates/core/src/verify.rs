//! Independent checks: the echelon-form eigenvector oracle, residual and span
//! comparisons, Cayley–Hamilton, and a seeded generator of matrices with
//! prescribed spectra and Jordan structure.
//!
//! Nothing here calls into the κ-product code, so the oracle stays
//! independent of the method it checks.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EigenError, Result};
use crate::field::{Field, GaussianRational};
use crate::matrix::{
    count_add, independent_subset, mat_det, mat_inverse, mat_mul, mat_sub_scalar_diag, mat_vec_mul,
    nullspace_basis_counted, stacked_rank, Matrix, OpCounter, Vector,
};
use crate::kappa::Side;
use crate::spectrum::Spectrum;

/// Null-space basis of `A − λI` by row reduction, one normalized vector per
/// free column.
pub fn oracle_eigenvectors<T: Field>(a: &Matrix<T>, lambda: &T, counter: Option<&OpCounter>) -> Result<Vec<Vector<T>>> {
    count_add(counter, a.rows() as u64);
    let k = mat_sub_scalar_diag(a, lambda)?;
    let basis = nullspace_basis_counted(&k, counter);
    if basis.is_empty() {
        return Err(EigenError::NotInSpectrum(lambda.to_string()));
    }
    Ok(basis)
}

/// Left eigenvectors by the same procedure on the transpose.
pub fn oracle_left_eigenvectors<T: Field>(a: &Matrix<T>, lambda: &T) -> Result<Vec<Vector<T>>> {
    Ok(oracle_eigenvectors(&a.transpose(), lambda, None)?
        .into_iter()
        .map(|v| v.transposed())
        .collect())
}

/// Whether `A·v = λ·v` (right) or `v·A = λ·v` (left) holds exactly.
pub fn residual_check<T: Field>(a: &Matrix<T>, lambda: &T, v: &Vector<T>, side: Side) -> Result<bool> {
    if v.is_zero() {
        return Err(EigenError::ZeroVector);
    }
    let oriented = match side {
        Side::Right => v.as_column(),
        Side::Left => v.as_column().transposed(),
    };
    let image = mat_vec_mul(a, &oriented, None)?;
    Ok(image == oriented.scale(lambda))
}

/// Linearly independent spanning set of a subspace of `T^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis<T = GaussianRational> {
    vectors: Vec<Vector<T>>,
    ambient_dim: usize,
}

impl<T: Field> SpanBasis<T> {
    /// Keeps an independent subset of `vectors`, as columns.
    pub fn new(vectors: &[Vector<T>], ambient_dim: usize) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(EigenError::DimensionMismatch(format!(
                "vector of length {} in a span of dimension {ambient_dim}",
                v.len()
            )));
        }
        Ok(SpanBasis {
            vectors: independent_subset(vectors.iter().map(Vector::as_column)),
            ambient_dim,
        })
    }

    pub fn vectors(&self) -> &[Vector<T>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &Vector<T>) -> bool {
        let mut all = self.vectors.clone();
        all.push(v.as_column());
        stacked_rank(&all) == self.dim()
    }
}

/// Equal spans: `rank(b1) = rank(b2) = rank(b1 ∪ b2)`.
pub fn span_equal<T: Field>(b1: &SpanBasis<T>, b2: &SpanBasis<T>) -> Result<bool> {
    if b1.ambient_dim != b2.ambient_dim {
        return Err(EigenError::DimensionMismatch(format!(
            "spans in dimensions {} and {}",
            b1.ambient_dim, b2.ambient_dim
        )));
    }
    let union: Vec<Vector<T>> = b1.vectors.iter().chain(&b2.vectors).cloned().collect();
    let r = stacked_rank(&union);
    Ok(stacked_rank(&b1.vectors) == r && stacked_rank(&b2.vectors) == r)
}

/// Convenience wrapper over [`span_equal`] for plain vector lists.
pub fn same_span<T: Field>(a: &[Vector<T>], b: &[Vector<T>], ambient_dim: usize) -> Result<bool> {
    span_equal(&SpanBasis::new(a, ambient_dim)?, &SpanBasis::new(b, ambient_dim)?)
}

/// Whether the product of `A − λI` over the full eigenvalue multiset is zero.
pub fn cayley_hamilton_check<T: Field>(a: &Matrix<T>, s: &Spectrum<T>) -> Result<bool> {
    a.require_square()?;
    let mut product = Matrix::identity(a.rows());
    for v in s.multiset() {
        product = mat_mul(&product, &mat_sub_scalar_diag(a, &v)?, None)?;
    }
    Ok(product.is_zero())
}

/// Recipe for a random matrix `A = P·J·P⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig<T = GaussianRational> {
    pub dim: usize,
    pub spectrum: Spectrum<T>,
    pub seed: u64,
    /// `P` entries are drawn from `[−entry_bound, entry_bound]`.
    pub entry_bound: i64,
    /// Jordan block sizes per distinct eigenvalue, in spectrum order. Empty
    /// means every block has size 1.
    pub block_sizes: Vec<Vec<usize>>,
    /// Realize each semisimple conjugate pair `α ± βi` as the real block
    /// `[[α, β], [−β, α]]`, so a real `P` gives a real `A`.
    pub real_form: bool,
}

impl<T: Field> GeneratorConfig<T> {
    pub fn diagonal(spectrum: Spectrum<T>, seed: u64) -> Self {
        GeneratorConfig {
            dim: spectrum.dim(),
            spectrum,
            seed,
            entry_bound: 2,
            block_sizes: Vec::new(),
            real_form: false,
        }
    }

    /// Block sizes of each distinct eigenvalue, defaulting to all ones.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        if self.block_sizes.is_empty() {
            self.spectrum.pairs().iter().map(|(_, m)| vec![1; *m]).collect()
        } else {
            self.block_sizes.clone()
        }
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.blocks().iter().flatten().all(|&b| b == 1)
    }

    fn validate(&self) -> Result<()> {
        if self.spectrum.dim() != self.dim {
            return Err(EigenError::InvalidSpectrum(format!(
                "multiplicities sum to {}, dimension is {}",
                self.spectrum.dim(),
                self.dim
            )));
        }
        if self.entry_bound < 1 {
            return Err(EigenError::InvalidSpectrum("entry bound must be positive".into()));
        }
        let blocks = self.blocks();
        if blocks.len() != self.spectrum.len() {
            return Err(EigenError::InvalidSpectrum(
                "one block list per distinct eigenvalue is required".into(),
            ));
        }
        for ((v, m), b) in self.spectrum.pairs().iter().zip(&blocks) {
            if b.iter().sum::<usize>() != *m || b.contains(&0) {
                return Err(EigenError::InvalidSpectrum(format!(
                    "blocks {b:?} do not partition multiplicity {m} of {v}"
                )));
            }
            if self.real_form && !v.is_real() && b.iter().any(|&s| s > 1) {
                return Err(EigenError::InvalidSpectrum(format!(
                    "real form needs nonreal eigenvalue {v} to be semisimple"
                )));
            }
        }
        if self.real_form && !self.spectrum.is_conjugate_closed() {
            return Err(EigenError::InvalidSpectrum(
                "real form needs a spectrum closed under conjugation".into(),
            ));
        }
        Ok(())
    }
}

/// Block-diagonal matrix with the configured Jordan (or real rotation)
/// blocks, eigenvalues ascending.
pub fn jordan_matrix<T: Field>(cfg: &GeneratorConfig<T>) -> Result<Matrix<T>> {
    cfg.validate()?;
    let n = cfg.dim;
    let mut j = Matrix::zeros(n, n);
    let mut at = 0;
    for ((v, m), sizes) in cfg.spectrum.pairs().iter().zip(cfg.blocks()) {
        if cfg.real_form && !v.is_real() {
            if v.im().is_negative() {
                continue;
            }
            let alpha = T::from_rational(v.re());
            let beta = T::from_rational(v.im());
            for _ in 0..*m {
                j.set(at, at, alpha.clone());
                j.set(at, at + 1, beta.clone());
                j.set(at + 1, at, -beta.clone());
                j.set(at + 1, at + 1, alpha.clone());
                at += 2;
            }
            continue;
        }
        for size in sizes {
            for i in 0..size {
                j.set(at + i, at + i, v.clone());
                if i + 1 < size {
                    j.set(at + i, at + i + 1, T::one());
                }
            }
            at += size;
        }
    }
    Ok(j)
}

/// `P·D·P⁻¹`.
pub fn conjugate_by<T: Field>(p: &Matrix<T>, d: &Matrix<T>) -> Result<Matrix<T>> {
    mat_mul(&mat_mul(p, d, None)?, &mat_inverse(p)?, None)
}

const GENERATOR_ATTEMPTS: usize = 64;

/// `(A, P)` with `A = P·J·P⁻¹`; deterministic in the seed.
pub fn random_spectral_matrix<T: Field>(cfg: &GeneratorConfig<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let j = jordan_matrix(cfg)?;
    let n = cfg.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let data = (0..n * n)
            .map(|_| T::from_integer(rng.gen_range(-cfg.entry_bound..=cfg.entry_bound)))
            .collect();
        let p = Matrix::new(n, n, data)?;
        if mat_det(&p)?.is_zero() {
            continue;
        }
        return Ok((conjugate_by(&p, &j)?, p));
    }
    Err(EigenError::GenerationFailed(GENERATOR_ATTEMPTS))
}

/// A generated matrix together with the recipe that produced it.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub config: GeneratorConfig<GaussianRational>,
    pub matrix: Matrix<GaussianRational>,
}

impl CorpusEntry {
    pub fn spectrum(&self) -> &Spectrum<GaussianRational> {
        &self.config.spectrum
    }
}

/// Random composition of `n` into `k` positive parts.
fn composition(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut parts = vec![1; k];
    for _ in k..n {
        let i = rng.gen_range(0..k);
        parts[i] += 1;
    }
    parts
}

/// Random partition of `m` into block sizes, largest first.
fn random_blocks(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    let mut left = m;
    let mut out = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left);
        out.push(s);
        left -= s;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Deterministic mixed corpus: dimensions 2 to 5, small integer spectra
/// with random multiplicities, about a third defective, and some conjugate
/// pairs (realized as real or as complex matrices).
pub fn seeded_corpus(seed: u64, count: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dim = rng.gen_range(2..=5usize);
            draw_entry(&mut rng, dim)
        })
        .collect()
}

/// One entry of the kind [`seeded_corpus`] draws, with a fixed dimension.
pub fn corpus_entry(seed: u64, dim: usize) -> Result<CorpusEntry> {
    if dim == 0 {
        return Err(EigenError::InvalidSpectrum("dimension must be positive".into()));
    }
    draw_entry(&mut ChaCha8Rng::seed_from_u64(seed), dim)
}

fn draw_entry(rng: &mut ChaCha8Rng, dim: usize) -> Result<CorpusEntry> {
    let with_pair = dim >= 2 && rng.gen_bool(0.2);
    let rest = if with_pair { dim - 2 } else { dim };
    let mut pairs: Vec<(GaussianRational, usize)> = Vec::new();
    let mut real_form = false;
    if with_pair {
        let re = rng.gen_range(-2..=2i64);
        let im = rng.gen_range(1..=2i64);
        pairs.push((GaussianRational::from_ints(re, im), 1));
        pairs.push((GaussianRational::from_ints(re, -im), 1));
        real_form = rng.gen_bool(0.5);
    }
    if rest > 0 {
        let k = rng.gen_range(1..=rest.min(4));
        let mut values: Vec<i64> = Vec::new();
        while values.len() < k {
            let v = rng.gen_range(-4..=4i64);
            if !values.contains(&v) {
                values.push(v);
            }
        }
        for (v, m) in values.into_iter().zip(composition(rng, rest, k)) {
            pairs.push((GaussianRational::from_int(v), m));
        }
    }
    let spectrum = Spectrum::new(pairs)?;
    let defective = rng.gen_bool(0.35);
    let block_sizes = if defective {
        spectrum
            .pairs()
            .iter()
            .map(|(v, m)| if v.is_real() { random_blocks(rng, *m) } else { vec![1; *m] })
            .collect()
    } else {
        Vec::new()
    };
    let config = GeneratorConfig {
        dim,
        spectrum,
        seed: rng.gen(),
        entry_bound: rng.gen_range(1..=2),
        block_sizes,
        real_form,
    };
    let (matrix, _) = random_spectral_matrix(&config)?;
    Ok(CorpusEntry { config, matrix })
}
