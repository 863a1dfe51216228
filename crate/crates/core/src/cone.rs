//! Polyhedral cones and the double-description method.
//!
//! A cone `{y : a_i · y >= 0}` is converted to generators (a lineality basis
//! plus extreme rays) by processing one inequality at a time. The same routine
//! computes dual cones, since the dual of `cone(g_j)` is `{ξ : ξ · g_j >= 0}`.
//! Arithmetic runs on primitive integer vectors; cones are scale invariant.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg;
use crate::scalar::{self, Scalar, Vector};

/// Generators of a polyhedral cone: `span(lineality) + cone(rays)`.
///
/// `rays` are extreme rays modulo the lineality space, as coprime integer
/// vectors orthogonal to `lineality`, sorted lexicographically. `lineality`
/// is the row-reduced basis, rescaled to coprime integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

impl ConeGenerators {
    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        let mut all = self.lineality.clone();
        all.extend(self.rays.iter().cloned());
        linalg::rank(&all)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Every generator with lineality expanded into `±` pairs.
    pub fn all_generators(&self) -> Vec<Vector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(scalar::neg(l));
        }
        out
    }
}

/// Generators of `{y in Q^dim : row · y >= 0 for every row}`.
pub fn from_inequalities(dim: usize, rows: &[Vector]) -> ConeGenerators {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| scalar::primitive_int(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let (lineality, rays) = double_description(dim, &int_rows);
    canonicalize(
        lineality.iter().map(|v| scalar::from_ints(v)).collect(),
        rays.iter().map(|v| scalar::from_ints(v)).collect(),
    )
}

/// Generators of the dual cone `{ξ : ξ · g >= 0 for every generator g}`.
pub fn dual(dim: usize, generators: &[Vector]) -> ConeGenerators {
    from_inequalities(dim, generators)
}

/// Minimal generators of `cone(generators)`.
pub fn minimize(dim: usize, generators: &[Vector]) -> ConeGenerators {
    let d = dual(dim, generators);
    from_inequalities(dim, &d.all_generators())
}

fn canonicalize(lineality: Vec<Vector>, rays: Vec<Vector>) -> ConeGenerators {
    let (basis, _) = linalg::rref(&lineality);
    let lineality: Vec<Vector> = basis.iter().map(|v| scalar::primitive(v)).collect();
    let ortho = linalg::orthogonal_basis(&lineality);
    let mut rays: Vec<Vector> = rays
        .iter()
        .map(|r| scalar::primitive(&linalg::reject(r, &ortho)))
        .filter(|r| !scalar::is_zero(r))
        .collect();
    scalar::sort_dedup(&mut rays);
    ConeGenerators { lineality, rays }
}

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    /// Bits `0..n` set.
    fn full(n: usize) -> Self {
        let mut b = BitSet(vec![0; n.div_ceil(64)]);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `p * a - q * b`, made primitive.
fn combine(p: &BigInt, a: &[BigInt], q: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    scalar::primitive_of_ints(a.iter().zip(b).map(|(x, y)| p * x - q * y).collect())
}

fn double_description(dim: usize, rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (row_idx, a) in rows.iter().enumerate() {
        if let Some(k) = lineality.iter().position(|l| !idot(a, l).is_zero()) {
            // The constraint cuts the lineality space: one lineality direction
            // turns into a ray, everything else is moved onto the hyperplane.
            let mut l = lineality.swap_remove(k);
            let mut al = idot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for other in lineality.iter_mut() {
                let c = idot(a, other);
                if !c.is_zero() {
                    *other = combine(&al, other, &c, &l);
                }
            }
            for r in rays.iter_mut() {
                let c = idot(a, &r.v);
                if !c.is_zero() {
                    r.v = combine(&al, &r.v, &c, &l);
                }
                r.zeros.insert(row_idx);
            }
            rays.push(Ray {
                v: scalar::primitive_of_ints(l),
                zeros: BitSet::full(row_idx),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(row_idx);
                }
            }
            continue;
        }

        // Adjacent (+, -) pairs share a 2-face; their positive combination on
        // the new hyperplane is a new extreme ray.
        let min_common = dim.saturating_sub(lineality.len() + 2);
        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.len() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &values[n], &rays[p].v);
                let mut zeros = common;
                zeros.insert(row_idx);
                created.push(Ray { v, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(row_idx);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    (lineality, rays.into_iter().map(|r| r.v).collect())
}

/// Sign of `⟨row, v⟩` for each row, as `-1/0/1`.
pub fn sign_vector(rows: &[Vector], v: &[Scalar]) -> Vec<i8> {
    rows.iter().map(|r| scalar::sign(&scalar::dot(r, v))).collect()
}
