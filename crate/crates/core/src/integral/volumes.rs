use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{Face, Polytope};
use crate::scalar::{self, Scalar, Vector};

use super::fan::{external_angle, normal_fan};
use super::sqrt_exact;

/// `(V_0, …, V_n)` for a polytope in `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicVolumes {
    pub values: Vec<f64>,
}

impl IntrinsicVolumes {
    /// Steiner polynomial `vol(P_ε) = Σ_i ε^{n-i} κ_{n-i} V_i`.
    pub fn steiner(&self, epsilon: f64) -> f64 {
        let n = self.values.len() - 1;
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| libm::pow(epsilon, (n - i) as f64) * unit_ball_volume(n - i) * v)
            .sum()
    }
}

/// `κ_k`, the volume of the unit ball in `R^k`, for `k <= 3`.
pub fn unit_ball_volume(k: usize) -> f64 {
    use core::f64::consts::PI;
    match k {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => panic!("unit ball volume requested for dimension {k}"),
    }
}

fn pad3(v: &[Scalar]) -> Vector {
    let mut out = v.to_vec();
    out.resize(3, Scalar::zero());
    out
}

fn centroid(points: &[Vector]) -> Vector {
    let sum = points.iter().fold(scalar::zeros(points[0].len()), |acc, p| scalar::add(&acc, p));
    scalar::scale(&sum, &Scalar::from_integer(points.len().into()).recip())
}

/// Vertices of a convex polygon (given in any order, padded to `Q^3`) in
/// cyclic order.
pub(crate) fn order_polygon(points: &[Vector]) -> Vec<Vector> {
    let pts: Vec<Vector> = points.iter().map(|p| pad3(p)).collect();
    let c = centroid(&pts);
    let rel: Vec<Vector> = pts.iter().map(|p| scalar::sub(p, &c)).collect();
    let normal = rel
        .iter()
        .skip(1)
        .map(|r| linalg::cross(&rel[0], r))
        .find(|n| !scalar::is_zero(n))
        .expect("polygon spans a plane");
    let e1 = rel[0].clone();
    let e2 = linalg::cross(&normal, &e1);
    let mut keyed: Vec<(Vector, Vector)> = rel
        .iter()
        .zip(&pts)
        .map(|(r, p)| (alloc::vec![scalar::dot(r, &e1), scalar::dot(r, &e2)], p.clone()))
        .collect();
    keyed.sort_by(|a, b| scalar::angle_cmp(&a.0, &b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}

/// Twice the vector area `Σ p_i × p_{i+1}` of a cyclically ordered polygon in `Q^3`.
fn doubled_vector_area(ordered: &[Vector]) -> Vector {
    let mut a = scalar::zeros(3);
    for k in 0..ordered.len() {
        a = scalar::add(&a, &linalg::cross(&ordered[k], &ordered[(k + 1) % ordered.len()]));
    }
    a
}

fn face_points(p: &Polytope, face: &Face) -> Vec<Vector> {
    face.vertices.iter().map(|&i| p.vertices()[i].clone()).collect()
}

/// Squared `dim`-dimensional content of a bounded face, exactly.
pub fn squared_content(p: &Polytope, face: &Face) -> Result<Scalar> {
    let pts = face_points(p, face);
    match face.dim {
        0 => Ok(Scalar::from_integer(1.into())),
        1 => {
            let d = scalar::sub(&pts[1], &pts[0]);
            Ok(scalar::dot(&d, &d))
        }
        2 => {
            let a = doubled_vector_area(&order_polygon(&pts));
            Ok(scalar::dot(&a, &a) / Scalar::from_integer(4.into()))
        }
        3 => {
            let v = solid_volume(p, face)?;
            Ok(&v * &v)
        }
        k => Err(Error::DimensionUnsupported { dim: k, max: 3 }),
    }
}

/// Volume of a 3-dimensional face by coning its boundary polygons over the centroid.
fn solid_volume(p: &Polytope, face: &Face) -> Result<Scalar> {
    if p.ambient_dim() != 3 {
        return Err(Error::DimensionUnsupported {
            dim: p.ambient_dim(),
            max: 3,
        });
    }
    let c = centroid(&face_points(p, face));
    let mut total = Scalar::zero();
    for facet in p.faces().iter().filter(|f| f.dim == 2) {
        if !facet.vertices.iter().all(|v| face.vertices.contains(v)) {
            continue;
        }
        let poly = order_polygon(&face_points(p, facet));
        for k in 1..poly.len() - 1 {
            let rows = alloc::vec![
                scalar::sub(&poly[0], &c),
                scalar::sub(&poly[k], &c),
                scalar::sub(&poly[k + 1], &c),
            ];
            total += linalg::determinant(&rows).abs();
        }
    }
    Ok(total / Scalar::from_integer(6.into()))
}

/// Exact volume of a full-dimensional bounded polytope in `R^n`, `n <= 3`.
pub fn volume(p: &Polytope) -> Result<Scalar> {
    super::fan::check_small(p)?;
    let Some(d) = p.dim() else {
        return Ok(Scalar::zero());
    };
    if d < p.ambient_dim() {
        return Ok(Scalar::zero());
    }
    let whole = p.faces().into_iter().find(|f| f.dim == d).expect("top face");
    let pts = face_points(p, &whole);
    match d {
        0 => Ok(Scalar::from_integer(1.into())),
        1 => {
            let xs = pts.iter().map(|v| v[0].clone());
            Ok(xs.clone().max().unwrap() - xs.min().unwrap())
        }
        2 => Ok(doubled_vector_area(&order_polygon(&pts))[2].abs() / Scalar::from_integer(2.into())),
        _ => solid_volume(p, &whole),
    }
}

/// `V_j(P) = Σ_{j-faces F} vol_j(F) · γ(F, P)` with `γ` the external angle.
pub fn intrinsic_volumes(p: &Polytope) -> Result<IntrinsicVolumes> {
    let fan = normal_fan(p)?;
    let mut parts: Vec<Vec<f64>> = alloc::vec![Vec::new(); p.ambient_dim() + 1];
    for entry in &fan.entries {
        let content = sqrt_exact(&squared_content(p, &entry.face)?);
        parts[entry.face_dim()].push(content * external_angle(entry)?);
    }
    // summing in sorted order makes the result independent of face order
    let values = parts
        .into_iter()
        .map(|mut xs| {
            xs.sort_by(f64::total_cmp);
            xs.into_iter().fold(0.0, |a, b| a + b)
        })
        .collect();
    Ok(IntrinsicVolumes { values })
}
