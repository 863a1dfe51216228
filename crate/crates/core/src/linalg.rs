//! Exact dense linear algebra over the rationals. Matrices are row-major
//! `Vec<Vector>`; every routine here is small-dimensional and allocation-happy.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar, Vector};

pub type Matrix = Vec<Vector>;

/// Cross product in `Q^3`.
pub fn cross(a: &[Scalar], b: &[Scalar]) -> Vector {
    alloc::vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scalar::scale(&m[r], &inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = -m[i][c].clone();
                m[i] = scalar::axpy(&m[i], &f, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : rows · x = 0}` in `ncols` unknowns.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Matrix {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = scalar::zeros(ncols);
            v[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose(m: &[Vector]) -> Matrix {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vector], v: &[Scalar]) -> Vector {
    m.iter().map(|row| scalar::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Matrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| scalar::dot(row, col)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| scalar::unit(n, i)).collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vector]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(scalar::unit(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves the square system `m x = b`, `None` when singular.
pub fn solve(m: &[Vector], b: &[Scalar]) -> Option<Vector> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

pub fn determinant(m: &[Vector]) -> Scalar {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = -(&a[i][c] / &a[c][c]);
                a[i] = scalar::axpy(&a[i], &f, &a[c]);
            }
        }
    }
    det
}

/// Exact Gram–Schmidt: an orthogonal (not normalized) basis of the span of
/// `rows`, each basis vector paired with the same combination applied to the
/// parallel `tags` (offsets of affine equations, say).
pub fn orthogonal_basis_tagged(rows: &[Vector], tags: &[Scalar]) -> Vec<(Vector, Scalar)> {
    let mut basis: Vec<(Vector, Scalar)> = Vec::new();
    for (row, tag) in rows.iter().zip(tags) {
        let mut v = row.clone();
        let mut t = tag.clone();
        for (q, qt) in &basis {
            let c = scalar::dot(&v, q) / scalar::dot(q, q);
            if !c.is_zero() {
                v = scalar::axpy(&v, &-c.clone(), q);
                t -= c * qt;
            }
        }
        if !scalar::is_zero(&v) {
            basis.push((v, t));
        }
    }
    basis
}

pub fn orthogonal_basis(rows: &[Vector]) -> Matrix {
    let tags: Vec<Scalar> = rows.iter().map(|_| Scalar::zero()).collect();
    orthogonal_basis_tagged(rows, &tags).into_iter().map(|(v, _)| v).collect()
}

/// Component of `v` orthogonal to the span of the orthogonal basis `basis`.
pub fn reject(v: &[Scalar], basis: &[Vector]) -> Vector {
    let mut out = v.to_vec();
    for q in basis {
        let c = scalar::dot(&out, q) / scalar::dot(q, q);
        if !c.is_zero() {
            out = scalar::axpy(&out, &-c, q);
        }
    }
    out
}
