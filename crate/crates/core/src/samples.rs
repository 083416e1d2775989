//! Small worked matrices with known exact spectra, shared by tests, the
//! benchmark corpus and documentation.

use crate::field::GaussianRational;
use crate::matrix::Matrix;
use crate::spectrum::Spectrum;

type G = GaussianRational;

fn parse_rows<const C: usize>(rows: &[[&str; C]]) -> Matrix<G> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse().expect("valid scalar literal")).collect())
            .collect(),
    )
    .expect("well-formed literal matrix")
}

/// A named matrix with its exact spectrum.
#[derive(Debug, Clone)]
pub struct Sample {
    pub name: &'static str,
    pub matrix: Matrix<G>,
    pub spectrum: Spectrum<G>,
}

/// `[[3,1],[2,4]]`, eigenvalues 2 and 5.
pub fn distinct_2x2() -> Matrix<G> {
    Matrix::from_ints(&[[3, 1], [2, 4]])
}

/// `[[2,1],[1,2]]`, eigenvalues 1 and 3.
pub fn symmetric_2x2() -> Matrix<G> {
    Matrix::from_ints(&[[2, 1], [1, 2]])
}

/// `[[3,-1],[1,1]]`, eigenvalue 2 twice with a single eigenvector.
pub fn defective_2x2() -> Matrix<G> {
    Matrix::from_ints(&[[3, -1], [1, 1]])
}

/// Eigenvalue 1 twice (two eigenvectors) and −1.
pub fn repeated_3x3() -> Matrix<G> {
    Matrix::from_ints(&[[0, -1, 1], [-2, -1, 2], [-1, -1, 2]])
}

/// Half-integer entries; eigenvalue 1 and 2 twice, diagonalizable.
pub fn fractional_3x3() -> Matrix<G> {
    parse_rows(&[
        ["3/2", "-1/2", "1/2"],
        ["-1", "1", "1"],
        ["-1/2", "-1/2", "5/2"],
    ])
}

/// Eigenvalues 1, 2, 3.
pub fn distinct_3x3() -> Matrix<G> {
    Matrix::from_ints(&[[4, 0, -1], [4, 2, -2], [5, -1, 0]])
}

/// Two-point spectrum: 1 three times, 2 once; diagonalizable.
pub fn triple_root_4x4() -> Matrix<G> {
    parse_rows(&[
        ["3/2", "1/2", "1/2", "-1/2"],
        ["1", "2", "1", "-1"],
        ["3/2", "3/2", "5/2", "-3/2"],
        ["2", "2", "2", "-1"],
    ])
}

/// Two-point spectrum: 1 and 2 each twice; diagonalizable.
pub fn paired_4x4() -> Matrix<G> {
    parse_rows(&[
        ["1", "-1/2", "1/2", "-1/2"],
        ["0", "3/2", "-1/2", "1/2"],
        ["-1", "-1", "2", "0"],
        ["-1", "-1/2", "1/2", "3/2"],
    ])
}

/// Eigenvalues 0, 2 and 1 twice; diagonalizable.
pub fn mixed_4x4() -> Matrix<G> {
    Matrix::from_ints(&[[3, 2, 5, -5], [3, 4, 7, -7], [4, 4, 10, -9], [6, 6, 14, -13]])
}

/// Eigenvalue 4 once and 1 twice; diagonalizable.
pub fn shifted_3x3() -> Matrix<G> {
    Matrix::from_ints(&[[-1, 1, 1], [-4, 3, 2], [-6, 3, 4]])
}

/// Eigenvalues 0, 3, −4.
pub fn singular_3x3() -> Matrix<G> {
    Matrix::from_ints(&[[1, 2, 1], [6, -1, 0], [-1, -2, -1]])
}

/// Eigenvalue 1 once and −2 twice with one eigenvector.
pub fn defective_3x3() -> Matrix<G> {
    Matrix::from_ints(&[[2, 4, 3], [-4, -6, -3], [3, 3, 1]])
}

/// Lower triangular; Jordan blocks of size 2 at 1 and 3 at 2.
pub fn lower_triangular_5x5() -> Matrix<G> {
    Matrix::from_ints(&[
        [1, 0, 0, 0, 0],
        [3, 1, 0, 0, 0],
        [6, 3, 2, 0, 0],
        [10, 6, 3, 2, 0],
        [15, 10, 6, 3, 2],
    ])
}

/// Single eigenvalue 2 with Jordan blocks of sizes 3 and 2.
pub fn two_block_5x5() -> Matrix<G> {
    Matrix::from_ints(&[
        [1, 0, -1, 1, 0],
        [-4, 1, -3, 2, 1],
        [-2, -1, 0, 1, 1],
        [-3, -1, -3, 4, 1],
        [-8, -2, -7, 5, 4],
    ])
}

/// Gaussian-rational entries; eigenvalues 0, 1, −1, 2−i, 2+i.
pub fn complex_5x5() -> Matrix<G> {
    parse_rows(&[
        ["1-3/2i", "2-i", "-4-5/2i", "1+3i", "-3"],
        ["-2+i", "-4+i", "3", "1-i", "5-i"],
        ["-1+3/2i", "i", "2+5/2i", "-1-3i", "1"],
        ["-2+i", "-1+i", "-1", "2-i", "1-i"],
        ["-1-1/2i", "-3", "-5/2i", "2+2i", "3-i"],
    ])
}

pub fn complex_5x5_spectrum() -> Spectrum<G> {
    Spectrum::new(vec![
        (G::from_int(0), 1),
        (G::from_int(1), 1),
        (G::from_int(-1), 1),
        (G::from_ints(2, -1), 1),
        (G::from_ints(2, 1), 1),
    ])
    .expect("distinct values")
}

/// Every sample above with its spectrum.
pub fn all() -> Vec<Sample> {
    let s = Spectrum::from_ints;
    vec![
        Sample { name: "distinct_2x2", matrix: distinct_2x2(), spectrum: s(&[(2, 1), (5, 1)]) },
        Sample { name: "symmetric_2x2", matrix: symmetric_2x2(), spectrum: s(&[(1, 1), (3, 1)]) },
        Sample { name: "defective_2x2", matrix: defective_2x2(), spectrum: s(&[(2, 2)]) },
        Sample { name: "repeated_3x3", matrix: repeated_3x3(), spectrum: s(&[(-1, 1), (1, 2)]) },
        Sample { name: "fractional_3x3", matrix: fractional_3x3(), spectrum: s(&[(1, 1), (2, 2)]) },
        Sample { name: "distinct_3x3", matrix: distinct_3x3(), spectrum: s(&[(1, 1), (2, 1), (3, 1)]) },
        Sample { name: "triple_root_4x4", matrix: triple_root_4x4(), spectrum: s(&[(1, 3), (2, 1)]) },
        Sample { name: "paired_4x4", matrix: paired_4x4(), spectrum: s(&[(1, 2), (2, 2)]) },
        Sample { name: "mixed_4x4", matrix: mixed_4x4(), spectrum: s(&[(0, 1), (1, 2), (2, 1)]) },
        Sample { name: "shifted_3x3", matrix: shifted_3x3(), spectrum: s(&[(1, 2), (4, 1)]) },
        Sample { name: "singular_3x3", matrix: singular_3x3(), spectrum: s(&[(-4, 1), (0, 1), (3, 1)]) },
        Sample { name: "defective_3x3", matrix: defective_3x3(), spectrum: s(&[(-2, 2), (1, 1)]) },
        Sample { name: "lower_triangular_5x5", matrix: lower_triangular_5x5(), spectrum: s(&[(1, 2), (2, 3)]) },
        Sample { name: "two_block_5x5", matrix: two_block_5x5(), spectrum: s(&[(2, 5)]) },
        Sample { name: "complex_5x5", matrix: complex_5x5(), spectrum: complex_5x5_spectrum() },
    ]
}
