//! Brute-force dual transform: the pencil of hyperplanes through `x` is
//! parametrized by `s ↦ Σ s_j b_j` over a basis `b_j` of `x^⊥`, every term of
//! `ψ` becomes a function of the signs of finitely many linear forms in `s`,
//! and the Euler integral over the pencil `RP^{n-1}` is half the
//! `χ_c`-integral over the arrangement those forms cut on the sphere `S^{n-1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::RadonImage;
use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{chi_projective_space, ProjPoint};
use crate::scalar::{self, Scalar};

// Only signs of linear forms matter, so the arrangement works with
// positively rescaled integer vectors throughout.
type IVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[BigInt]) -> IVec {
    a.iter().map(|x| -x).collect()
}

fn cross(a: &[BigInt], b: &[BigInt]) -> IVec {
    alloc::vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn canonical(a: IVec) -> IVec {
    let p = scalar::primitive_of_ints(a);
    if p.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        neg(&p)
    } else {
        p
    }
}

/// Counter-clockwise order on nonzero plane vectors from the positive first axis.
fn angle_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    let half = |v: &[BigInt]| usize::from(!(v[1].is_positive() || (v[1].is_zero() && v[0].is_positive())));
    half(a)
        .cmp(&half(b))
        .then_with(|| BigInt::zero().cmp(&(&a[0] * &b[1] - &a[1] * &b[0])))
}

/// Sum over cyclically consecutive pairs, or `±fallback` when there are only
/// two (antipodal) points.
fn arc_witnesses(sorted: &[IVec], fallback: IVec) -> Vec<IVec> {
    if sorted.len() == 2 {
        return alloc::vec![neg(&fallback), fallback];
    }
    (0..sorted.len())
        .map(|k| add(&sorted[k], &sorted[(k + 1) % sorted.len()]))
        .collect()
}

fn circle_sum(forms: &[IVec], value: &dyn Fn(&[BigInt]) -> Scalar) -> Scalar {
    let mut points: Vec<IVec> = Vec::new();
    for a in forms {
        let d = alloc::vec![-a[1].clone(), a[0].clone()];
        points.push(neg(&d));
        points.push(d);
    }
    points.sort_by(|a, b| angle_cmp(a, b));
    let mut total = Scalar::zero();
    for p in &points {
        total += value(p);
    }
    for w in arc_witnesses(&points, forms[0].clone()) {
        total -= value(&w);
    }
    total
}

fn sphere_sum(forms: &[IVec], value: &dyn Fn(&[BigInt]) -> Scalar) -> Scalar {
    if forms.len() == 1 {
        // two open hemispheres; the great circle has χ_c = 0
        return value(&forms[0]) + value(&neg(&forms[0]));
    }
    let signature = |s: &[BigInt]| -> Vec<i8> { forms.iter().map(|a| sign(&dot(a, s))).collect() };
    let mut vertices: Vec<IVec> = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let c = scalar::primitive_of_ints(cross(&forms[i], &forms[j]));
            vertices.push(neg(&c));
            vertices.push(c);
        }
    }
    vertices.sort();
    vertices.dedup();

    let mut cells: BTreeMap<Vec<i8>, (usize, IVec)> = BTreeMap::new();
    for v in &vertices {
        cells.insert(signature(v), (0, v.clone()));
    }
    for (i, alpha) in forms.iter().enumerate() {
        let on: Vec<&IVec> = vertices.iter().filter(|v| dot(alpha, v).is_zero()).collect();
        let e1 = on[0].clone();
        let e2 = cross(alpha, &e1);
        let mut sorted: Vec<(IVec, IVec)> = on
            .iter()
            .map(|v| (alloc::vec![dot(v, &e1), dot(v, &e2)], (*v).clone()))
            .collect();
        sorted.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        let sorted: Vec<IVec> = sorted.into_iter().map(|(_, v)| v).collect();
        for arc in arc_witnesses(&sorted, e2.clone()) {
            // Push off the circle by δ·α with δ = p/q below every other
            // circle's distance, as the integer vector q·arc ± p·α.
            let mut delta: Option<(BigInt, BigInt)> = None;
            for (j, beta) in forms.iter().enumerate() {
                let ab = dot(beta, alpha);
                if j == i || ab.is_zero() {
                    continue;
                }
                let d = (dot(beta, &arc).abs(), 2 * ab.abs());
                let smaller = delta.as_ref().is_none_or(|(p, q)| &d.0 * q < p * &d.1);
                if smaller {
                    delta = Some(d);
                }
            }
            let (p, q) = delta.unwrap_or_else(|| (BigInt::from(1), BigInt::from(1)));
            let scaled: IVec = arc.iter().map(|x| x * &q).collect();
            let offset: IVec = alpha.iter().map(|x| x * &p).collect();
            for side in [add(&scaled, &offset), add(&scaled, &neg(&offset))] {
                cells.entry(signature(&side)).or_insert((2, side));
            }
            cells.entry(signature(&arc)).or_insert((1, arc));
        }
    }
    cells
        .values()
        .fold(Scalar::zero(), |acc, (dim, w)| acc + value(w) * scalar::parity_sign(*dim))
}

/// `R^tψ(x)` computed by decomposing the pencil through `x`. Supports
/// `n = 2` and `n = 3`.
pub fn dual_radon_oracle(psi: &RadonImage, x: &ProjPoint) -> Result<Scalar> {
    let n = psi.n();
    if !(2..=3).contains(&n) {
        return Err(Error::DimensionUnsupported { dim: n, max: 3 });
    }
    if x.n() != n {
        return Err(Error::AmbientMismatch {
            expected: n,
            found: x.n(),
        });
    }
    let basis = linalg::nullspace(core::slice::from_ref(x.coords()), n + 1);
    // Each term contributes its weight wherever the hyperplane meets K, i.e.
    // unless all pairings with the generators of K are strictly one-signed.
    let terms: Vec<(Scalar, Vec<IVec>)> = psi
        .terms()
        .iter()
        .map(|t| {
            let forms = t
                .body
                .dual_generators()
                .iter()
                .map(|g| {
                    let f: Vec<Scalar> = basis.iter().map(|b| scalar::dot(b, g)).collect();
                    scalar::primitive_int(&f)
                })
                .collect();
            (t.weight.clone(), forms)
        })
        .collect();
    let constant = psi.constant_term().clone();
    let value = |s: &[BigInt]| -> Scalar {
        let mut acc = constant.clone();
        for (weight, forms) in &terms {
            let signs: Vec<i8> = forms.iter().map(|a| sign(&dot(a, s))).collect();
            let misses = signs.iter().all(|&v| v > 0) || signs.iter().all(|&v| v < 0);
            if !misses {
                acc += weight;
            }
        }
        acc
    };

    let mut forms: Vec<IVec> = terms
        .iter()
        .flat_map(|(_, f)| f.iter())
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .map(|a| canonical(a.clone()))
        .collect();
    forms.sort();
    forms.dedup();
    if forms.is_empty() {
        let mut probe = alloc::vec![BigInt::zero(); n];
        probe[0] = BigInt::from(1);
        return Ok(value(&probe) * chi_projective_space(n - 1));
    }
    let on_sphere = if n == 2 {
        circle_sum(&forms, &value)
    } else {
        sphere_sum(&forms, &value)
    };
    Ok(on_sphere / Scalar::from_integer(2.into()))
}
