//! Normal fans and the angles of polyhedral cones.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::cone::{self, ConeGenerators};
use crate::error::{Error, Result};
use crate::polytope::{Face, Polytope};
use crate::scalar::{self, Scalar, Vector};

use super::sqrt_exact;

/// A face of `P` with its (outer) normal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanEntry {
    pub face: Face,
    pub normal_cone: ConeGenerators,
}

impl FanEntry {
    pub fn face_dim(&self) -> usize {
        self.face.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub ambient_dim: usize,
    pub entries: Vec<FanEntry>,
}

pub(crate) fn check_small(p: &Polytope) -> Result<()> {
    if p.ambient_dim() > 3 {
        return Err(Error::DimensionUnsupported {
            dim: p.ambient_dim(),
            max: 3,
        });
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    Ok(())
}

/// One entry per nonempty face; the normal cone of `F` is generated by the
/// outward normals of the facets containing `F` and spans the equations of `P`.
pub fn normal_fan(p: &Polytope) -> Result<NormalFan> {
    check_small(p)?;
    let d = p.ambient_dim();
    let mut entries = Vec::new();
    for face in p.faces() {
        let mut gens: Vec<Vector> = p
            .inequalities()
            .iter()
            .filter(|h| face.vertices.iter().all(|&i| h.slack(&p.vertices()[i]).is_zero()))
            .map(|h| h.normal.clone())
            .collect();
        for e in p.equalities() {
            gens.push(scalar::neg(&e.normal));
            gens.push(e.normal.clone());
        }
        entries.push(FanEntry {
            normal_cone: cone::minimize(d, &gens),
            face,
        });
    }
    Ok(NormalFan { ambient_dim: d, entries })
}

fn norm_f64(v: &[Scalar]) -> f64 {
    sqrt_exact(&scalar::dot(v, v))
}

/// Angle between two nonzero vectors. The float result is a function of the
/// exact `cos²` alone (and the sign of `u · v`), so it is unchanged by
/// rescaling either vector or applying a rational isometry.
fn planar_angle(u: &[Scalar], v: &[Scalar]) -> f64 {
    let uv = scalar::dot(u, v);
    let cos_sq = &uv * &uv / (scalar::dot(u, u) * scalar::dot(v, v));
    let sin_sq = Scalar::from_integer(1.into()) - &cos_sq;
    let c = sqrt_exact(&cos_sq);
    libm::atan2(sqrt_exact(&sin_sq), if uv.is_negative() { -c } else { c })
}

fn unit_f64(v: &[Scalar]) -> [f64; 3] {
    let n = norm_f64(v);
    [scalar::to_f64(&v[0]) / n, scalar::to_f64(&v[1]) / n, scalar::to_f64(&v[2]) / n]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Solid angle of a pointed cone in `R^3` with the given extreme rays: the
/// rays are ordered around their mean direction and the spherical polygon is
/// fanned into triangles measured by the Van Oosterom–Strackee formula.
fn solid_angle(rays: &[Vector]) -> f64 {
    let units: Vec<[f64; 3]> = rays.iter().map(|r| unit_f64(r)).collect();
    let mut axis = [0.0; 3];
    for u in &units {
        for k in 0..3 {
            axis[k] += u[k];
        }
    }
    let helper = if axis[0].abs() < 0.9 * libm::sqrt(dot3(&axis, &axis)) {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = cross3(&axis, &helper);
    let e2 = cross3(&axis, &e1);
    let mut ordered: Vec<(f64, [f64; 3])> = units
        .iter()
        .map(|u| (libm::atan2(dot3(u, &e2), dot3(u, &e1)), *u))
        .collect();
    ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
    let a = ordered[0].1;
    let mut total = 0.0;
    for w in ordered[1..].windows(2) {
        let (b, c) = (w[0].1, w[1].1);
        let det = dot3(&a, &cross3(&b, &c)).abs();
        let denom = 1.0 + dot3(&a, &b) + dot3(&b, &c) + dot3(&c, &a);
        total += 2.0 * libm::atan2(det, denom);
    }
    total
}

/// Fraction of its own linear span occupied by a polyhedral cone: the
/// normalized spherical measure. Lineality contributes a full factor.
pub fn cone_angle(c: &ConeGenerators) -> Result<f64> {
    let pointed_dim = c.dim() - c.lineality.len();
    match pointed_dim {
        0 => Ok(1.0),
        1 => Ok(0.5),
        2 => Ok(planar_angle(&c.rays[0], &c.rays[1]) / (2.0 * PI)),
        3 if c.lineality.is_empty() && c.rays[0].len() == 3 => Ok(solid_angle(&c.rays) / (4.0 * PI)),
        _ => Err(Error::DimensionUnsupported {
            dim: pointed_dim,
            max: 3,
        }),
    }
}

/// The external angle of a face: the normalized measure of its normal cone.
pub fn external_angle(entry: &FanEntry) -> Result<f64> {
    cone_angle(&entry.normal_cone)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; 1 - u keeps the logarithm finite
    let u: f64 = 1.0 - rng.random::<f64>();
    let v: f64 = rng.random::<f64>();
    libm::sqrt(-2.0 * libm::log(u)) * libm::cos(2.0 * PI * v)
}

/// Monte Carlo estimate of [`cone_angle`] with its standard error: Gaussian
/// directions in the span of the pointed part, tested against the dual cone.
pub fn cone_angle_mc(c: &ConeGenerators, samples: u64, seed: u64) -> Result<(f64, f64)> {
    if c.rays.is_empty() {
        return Ok((1.0, 0.0));
    }
    let dim = c.rays[0].len();
    let basis: Vec<Vec<f64>> = {
        let exact = crate::linalg::orthogonal_basis(&c.rays);
        exact
            .iter()
            .map(|b| {
                let n = norm_f64(b);
                b.iter().map(|x| scalar::to_f64(x) / n).collect()
            })
            .collect()
    };
    let dual: Vec<Vec<f64>> = cone::dual(dim, &c.all_generators())
        .rays
        .iter()
        .map(|r| scalar::to_f64_vec(r))
        .collect();
    let hits = super::montecarlo::count_hits(samples, seed, |rng| {
        let mut y = alloc::vec![0.0; dim];
        for b in &basis {
            let z = gaussian(rng);
            for k in 0..dim {
                y[k] += z * b[k];
            }
        }
        dual.iter().all(|xi| xi.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() >= 0.0)
    });
    let p = hits as f64 / samples as f64;
    Ok((p, libm::sqrt(p * (1.0 - p) / samples as f64)))
}
