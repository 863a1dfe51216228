//! Monte Carlo checks of the Steiner, Cauchy–Crofton and planar kinematic
//! formulas.
//!
//! Samples are drawn in fixed-size chunks; chunk `i` uses a ChaCha8 stream
//! `i` keyed by the seed, so results depend only on `(seed, samples)` and not
//! on how chunks are scheduled across threads.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar;

use super::sqrt_exact;
use super::volumes::{intrinsic_volumes, order_polygon};

const CHUNK: u64 = 1 << 14;

/// Number of samples for which `hit` returns true.
pub fn count_hits<F>(samples: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let run = |i: u64| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let n = CHUNK.min(samples - i * CHUNK);
        (0..n).filter(|_| hit(&mut rng)).count() as u64
    };
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run).sum()
    }
    #[cfg(not(feature = "std"))]
    {
        (0..chunks).map(run).sum()
    }
}

/// Outcome of a hit-or-miss estimate against a reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    pub estimate: f64,
    pub stderr: f64,
    pub reference: f64,
    pub pass: bool,
    pub samples: u64,
    pub seed: u64,
}

impl McReport {
    /// `measure · hits / samples` with a binomial standard error; passes when
    /// within four standard errors.
    fn from_hits(hits: u64, samples: u64, seed: u64, measure: f64, reference: f64) -> Self {
        let p = if samples == 0 { 0.0 } else { hits as f64 / samples as f64 };
        let estimate = measure * p;
        let stderr = if samples == 0 {
            0.0
        } else {
            measure * libm::sqrt(p * (1.0 - p) / samples as f64)
        };
        let slack = 1e-12 * reference.abs().max(1.0);
        McReport {
            estimate,
            stderr,
            reference,
            pass: (estimate - reference).abs() <= 4.0 * stderr + slack,
            samples,
            seed,
        }
    }

    pub fn relative_error(&self) -> f64 {
        if self.reference == 0.0 {
            self.estimate.abs()
        } else {
            (self.estimate - self.reference).abs() / self.reference.abs()
        }
    }
}

/// Affine pieces of the boundary structure used for distance queries.
struct FaceFrame {
    base: Vec<f64>,
    /// orthonormal directions spanning the face
    dirs: Vec<Vec<f64>>,
}

struct DistanceOracle {
    frames: Vec<FaceFrame>,
    halfspaces: Vec<(Vec<f64>, f64)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl DistanceOracle {
    fn new(p: &Polytope) -> Self {
        let verts: Vec<Vec<f64>> = p.vertices().iter().map(|v| scalar::to_f64_vec(v)).collect();
        let frames = p
            .faces()
            .iter()
            .map(|f| {
                let base = verts[f.vertices[0]].clone();
                let exact_dirs: Vec<_> = f.vertices[1..]
                    .iter()
                    .map(|&i| scalar::sub(&p.vertices()[i], &p.vertices()[f.vertices[0]]))
                    .collect();
                let dirs = crate::linalg::orthogonal_basis(&exact_dirs)
                    .iter()
                    .map(|d| {
                        let n = sqrt_exact(&scalar::dot(d, d));
                        d.iter().map(|x| scalar::to_f64(x) / n).collect()
                    })
                    .collect();
                FaceFrame { base, dirs }
            })
            .collect();
        let halfspaces = p
            .halfspaces()
            .iter()
            .map(|h| (scalar::to_f64_vec(&h.normal), scalar::to_f64(&h.offset)))
            .collect();
        DistanceOracle { frames, halfspaces }
    }

    /// Distance from `x` to the polytope: the nearest point lies in the
    /// relative interior of some face and is the projection onto its hull.
    fn distance(&self, x: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for f in &self.frames {
            let rel: Vec<f64> = x.iter().zip(&f.base).map(|(a, b)| a - b).collect();
            let mut proj = f.base.clone();
            for d in &f.dirs {
                let c = dot(&rel, d);
                for (p, dk) in proj.iter_mut().zip(d) {
                    *p += c * dk;
                }
            }
            let inside = self
                .halfspaces
                .iter()
                .all(|(n, b)| dot(n, &proj) <= b + 1e-12 * (1.0 + b.abs()));
            if inside {
                let dist = x.iter().zip(&proj).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
                best = best.min(libm::sqrt(dist));
            }
        }
        best
    }
}

fn bounding_box(p: &Polytope) -> (Vec<f64>, Vec<f64>) {
    let d = p.ambient_dim();
    let mut lo = alloc::vec![f64::INFINITY; d];
    let mut hi = alloc::vec![f64::NEG_INFINITY; d];
    for v in p.vertices() {
        for k in 0..d {
            let x = scalar::to_f64(&v[k]);
            lo[k] = lo[k].min(x);
            hi[k] = hi[k].max(x);
        }
    }
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteinerEntry {
    pub epsilon: f64,
    pub report: McReport,
}

/// Compares `vol(P_ε)`, estimated by uniform sampling in the bounding box
/// grown by `ε`, with the Steiner polynomial of the intrinsic volumes.
pub fn steiner_check(p: &Polytope, epsilons: &[f64], samples: u64, seed: u64) -> Result<Vec<SteinerEntry>> {
    if p.is_empty() {
        return Err(Error::InvalidInput("Steiner check needs a nonempty polytope".into()));
    }
    let volumes = intrinsic_volumes(p)?;
    let oracle = DistanceOracle::new(p);
    let (lo, hi) = bounding_box(p);
    let d = p.ambient_dim();
    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidInput(alloc::format!("epsilon must be nonnegative, got {eps}")));
        }
        let blo: Vec<f64> = lo.iter().map(|x| x - eps).collect();
        let side: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| b - a + 2.0 * eps).collect();
        let measure: f64 = side.iter().product();
        let hits = count_hits(samples, seed, |rng| {
            let x: Vec<f64> = (0..d).map(|k| blo[k] + side[k] * rng.random::<f64>()).collect();
            oracle.distance(&x) <= eps
        });
        out.push(SteinerEntry {
            epsilon: eps,
            report: McReport::from_hits(hits, samples, seed, measure, volumes.steiner(eps)),
        });
    }
    Ok(out)
}

fn check_planar(p: &Polytope) -> Result<()> {
    if p.ambient_dim() != 2 {
        return Err(Error::AmbientMismatch {
            expected: 2,
            found: p.ambient_dim(),
        });
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if p.is_empty() {
        return Err(Error::InvalidInput("empty polygon".into()));
    }
    Ok(())
}

/// A planar convex body as floats: cyclically ordered vertices, centre of
/// its bounding box and the largest vertex distance from that centre.
#[derive(Clone, Debug)]
struct PlanarBody {
    vertices: Vec<[f64; 2]>,
    center: [f64; 2],
    radius: f64,
    area: f64,
    /// boundary length; twice the length for a segment
    perimeter: f64,
}

impl PlanarBody {
    fn new(p: &Polytope) -> Result<Self> {
        check_planar(p)?;
        let ordered = match p.dim() {
            Some(2) => order_polygon(p.vertices()),
            _ => p.vertices().to_vec(),
        };
        let vertices: Vec<[f64; 2]> = ordered
            .iter()
            .map(|v| [scalar::to_f64(&v[0]), scalar::to_f64(&v[1])])
            .collect();
        let (lo, hi) = bounding_box(p);
        let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let radius = vertices
            .iter()
            .map(|v| libm::hypot(v[0] - center[0], v[1] - center[1]))
            .fold(0.0, f64::max);
        let m = ordered.len();
        let perimeter = if m < 2 {
            0.0
        } else {
            let edges = if m == 2 { 1 } else { m };
            let sum: f64 = (0..edges)
                .map(|k| {
                    let d = scalar::sub(&ordered[(k + 1) % m][..2], &ordered[k][..2]);
                    sqrt_exact(&scalar::dot(&d, &d))
                })
                .sum();
            if m == 2 {
                2.0 * sum
            } else {
                sum
            }
        };
        let area = scalar::to_f64(&super::volumes::volume(p)?);
        Ok(PlanarBody {
            vertices,
            center,
            radius,
            area,
            perimeter,
        })
    }

    /// Separating axis candidates: edge normals and edge directions.
    fn axes(&self) -> Vec<[f64; 2]> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        if m < 2 {
            return out;
        }
        let edges = if m == 2 { 1 } else { m };
        for k in 0..edges {
            let a = self.vertices[k];
            let b = self.vertices[(k + 1) % m];
            let d = [b[0] - a[0], b[1] - a[1]];
            out.push(d);
            out.push([-d[1], d[0]]);
        }
        out
    }
}

fn project(points: &[[f64; 2]], axis: &[f64; 2]) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let t = p[0] * axis[0] + p[1] * axis[1];
        (lo.min(t), hi.max(t))
    })
}

/// Whether two convex point sets (polygons, segments or points) intersect.
fn convex_overlap(a: &[[f64; 2]], a_axes: &[[f64; 2]], b: &[[f64; 2]], b_axes: &[[f64; 2]]) -> bool {
    let base = [[1.0, 0.0], [0.0, 1.0]];
    a_axes.iter().chain(b_axes).chain(base.iter()).all(|axis| {
        let (alo, ahi) = project(a, axis);
        let (blo, bhi) = project(b, axis);
        alo <= bhi && blo <= ahi
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CroftonReport {
    pub report: McReport,
    /// lines are `u(θ)·(x - center) = p` with `θ ∈ [0, π)`, `|p| <= radius`
    pub center: [f64; 2],
    pub radius: f64,
}

/// Measure of the lines meeting `K`, `∫ χ(K ∩ ℓ) dp dθ`, against the
/// perimeter of `K` (twice the length for a segment).
pub fn cauchy_crofton_check(k: &Polytope, samples: u64, seed: u64) -> Result<CroftonReport> {
    let body = PlanarBody::new(k)?;
    if k.dim() == Some(0) {
        return Err(Error::NotFullDim);
    }
    let radius = body.radius;
    let hits = count_hits(samples, seed, |rng| {
        let theta = PI * rng.random::<f64>();
        let p = radius * (2.0 * rng.random::<f64>() - 1.0);
        let (c, s) = (libm::cos(theta), libm::sin(theta));
        let (lo, hi) = body.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let t = c * (v[0] - body.center[0]) + s * (v[1] - body.center[1]);
            (lo.min(t), hi.max(t))
        });
        lo <= p && p <= hi
    });
    Ok(CroftonReport {
        report: McReport::from_hits(hits, samples, seed, PI * 2.0 * radius, body.perimeter),
        center: body.center,
        radius,
    })
}

/// The disk/disk case of the kinematic formula, computed two ways: the motions
/// bringing a disk of radius `s` to meet one of radius `r` are a full turn of
/// rotations times a disk of radius `r + s` of translations.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskOracle {
    pub r: f64,
    pub s: f64,
    /// `2π · π(r + s)²`
    pub direct: f64,
    /// `2π(πr² + πs²) + (2πr)(2πs)`
    pub closed_form: f64,
    pub agrees: bool,
}

pub fn disk_oracle(r: f64, s: f64) -> DiskOracle {
    let direct = 2.0 * PI * PI * (r + s) * (r + s);
    let closed_form = 2.0 * PI * (PI * r * r + PI * s * s) + (2.0 * PI * r) * (2.0 * PI * s);
    DiskOracle {
        r,
        s,
        direct,
        closed_form,
        agrees: (direct - closed_form).abs() <= 1e-12 * direct.max(1.0),
    }
}

/// Square window of translations, by centre and half side length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MotionWindow {
    pub center: [f64; 2],
    pub half_side: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KinematicReport {
    pub report: McReport,
    pub window: MotionWindow,
    pub disk_oracle: DiskOracle,
}

/// `∫ χ(K ∩ gL) dg` over rigid motions `g` (rotation angle times translation
/// area), against `2π(A_K + A_L) + P_K · P_L`. The window covers every
/// position of `L`'s centre at which the bodies can meet.
pub fn kinematic_check_r2(k: &Polytope, l: &Polytope, samples: u64, seed: u64) -> Result<KinematicReport> {
    let kb = PlanarBody::new(k)?;
    let lb = PlanarBody::new(l)?;
    let window = MotionWindow {
        center: kb.center,
        half_side: kb.radius + lb.radius,
    };
    kinematic_check_r2_in(k, l, window, samples, seed)
}

/// Like [`kinematic_check_r2`] over a caller-chosen translation window. The
/// estimate only matches the reference when the window covers all
/// incidences.
pub fn kinematic_check_r2_in(
    k: &Polytope,
    l: &Polytope,
    window: MotionWindow,
    samples: u64,
    seed: u64,
) -> Result<KinematicReport> {
    let kb = PlanarBody::new(k)?;
    let lb = PlanarBody::new(l)?;
    let oracle = disk_oracle(1.0, 0.5);
    let k_axes = kb.axes();
    let h = window.half_side;
    let hits = count_hits(samples, seed, |rng| {
        let theta = 2.0 * PI * rng.random::<f64>();
        let tx = window.center[0] + h * (2.0 * rng.random::<f64>() - 1.0);
        let ty = window.center[1] + h * (2.0 * rng.random::<f64>() - 1.0);
        let (c, s) = (libm::cos(theta), libm::sin(theta));
        let moved: Vec<[f64; 2]> = lb
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = (v[0] - lb.center[0], v[1] - lb.center[1]);
                [c * x - s * y + tx, s * x + c * y + ty]
            })
            .collect();
        let moved_body = PlanarBody {
            vertices: moved,
            ..lb.clone()
        };
        convex_overlap(&kb.vertices, &k_axes, &moved_body.vertices, &moved_body.axes())
    });
    let measure = 2.0 * PI * (2.0 * h) * (2.0 * h);
    let reference = 2.0 * PI * (kb.area + lb.area) + kb.perimeter * lb.perimeter;
    let mut report = McReport::from_hits(hits, samples, seed, measure, reference);
    report.pass &= oracle.agrees;
    Ok(KinematicReport {
        report,
        window,
        disk_oracle: oracle,
    })
}
