use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar, Vector};

/// `x ↦ matrix · x + translation`, from `Q^n` to `Q^m` (`matrix` is `m × n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Matrix,
    translation: Vector,
    source_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: Matrix, translation: Vector) -> Result<Self> {
        let source_dim = matrix.first().map_or(0, Vec::len);
        Self::with_source_dim(matrix, translation, source_dim)
    }

    /// Like [`AffineMap::new`], but also covers maps with an empty matrix
    /// (to or from `Q^0`), where the row length cannot carry the source dimension.
    pub fn with_source_dim(matrix: Matrix, translation: Vector, source_dim: usize) -> Result<Self> {
        if matrix.len() != translation.len() {
            return Err(Error::AmbientMismatch {
                expected: matrix.len(),
                found: translation.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source_dim) {
            return Err(Error::AmbientMismatch {
                expected: source_dim,
                found: row.len(),
            });
        }
        Ok(AffineMap {
            matrix,
            translation,
            source_dim,
        })
    }

    pub fn linear(matrix: Matrix) -> Result<Self> {
        let m = matrix.len();
        Self::new(matrix, scalar::zeros(m))
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            matrix: linalg::identity(n),
            translation: scalar::zeros(n),
            source_dim: n,
        }
    }

    pub fn translation(t: Vector) -> Self {
        let n = t.len();
        AffineMap {
            matrix: linalg::identity(n),
            translation: t,
            source_dim: n,
        }
    }

    /// Coordinate projection `Q^n → Q^k` keeping `coords` in order.
    pub fn projection(n: usize, coords: &[usize]) -> Result<Self> {
        if let Some(&c) = coords.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidInput(alloc::format!("coordinate {c} out of range for Q^{n}")));
        }
        let matrix = coords.iter().map(|&c| scalar::unit(n, c)).collect();
        Self::with_source_dim(matrix, scalar::zeros(coords.len()), n)
    }

    /// The constant map `Q^n → Q^0`.
    pub fn to_point(n: usize) -> Self {
        AffineMap {
            matrix: Vec::new(),
            translation: Vec::new(),
            source_dim: n,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn translation_vector(&self) -> &Vector {
        &self.translation
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        scalar::add(&linalg::mat_vec(&self.matrix, x), &self.translation)
    }

    pub fn apply_linear(&self, x: &[Scalar]) -> Vector {
        linalg::mat_vec(&self.matrix, x)
    }

    /// `matrixᵀ · c`: the covector `c ∘ matrix` on the source.
    pub fn pull_covector(&self, c: &[Scalar]) -> Vector {
        let mut out = scalar::zeros(self.source_dim);
        for (row, ci) in self.matrix.iter().zip(c) {
            out = scalar::axpy(&out, ci, row);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.target_dim() != self.source_dim {
            return Err(Error::AmbientMismatch {
                expected: self.source_dim,
                found: inner.target_dim(),
            });
        }
        let matrix: Matrix = self
            .matrix
            .iter()
            .map(|row| inner.pull_covector(row))
            .collect();
        AffineMap::with_source_dim(matrix, self.apply(&inner.translation), inner.source_dim)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }
}
