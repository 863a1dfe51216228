#![allow(dead_code)]

use num_traits::Zero;
use polychi_core::linalg::{self, Matrix};
use polychi_core::scalar::{self, int, Scalar, Vector};
use polychi_core::{ConstructibleFn, Polytope, ProjBody, ProjConstructibleFn, ProjPoint, ProjTerm, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vector {
    (0..len).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    let d = rng.random_range(1..=4);
    Scalar::new(rng.random_range(-bound * d..=bound * d).into(), d.into())
}

pub fn random_rational_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vector {
    (0..len).map(|_| random_rational(rng, bound)).collect()
}

/// Hull of `count` random rational points; may be lower-dimensional.
pub fn random_polytope<R: Rng>(rng: &mut R, dim: usize, count: usize, bound: i64) -> Polytope {
    let pts = (0..count).map(|_| random_rational_vector(rng, dim, bound)).collect();
    Polytope::from_vertices(dim, pts).unwrap()
}

pub fn random_full_polytope<R: Rng>(rng: &mut R, dim: usize, count: usize, bound: i64) -> Polytope {
    loop {
        let p = random_polytope(rng, dim, count, bound);
        if p.is_full_dimensional() {
            return p;
        }
    }
}

pub fn random_weight<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let w = Scalar::new(rng.random_range(-6..=6).into(), rng.random_range(1..=3).into());
        if !w.is_zero() {
            return w;
        }
    }
}

/// Random combination of `1..=max_terms` polytope indicators in `R^dim`.
pub fn random_constructible<R: Rng>(rng: &mut R, dim: usize, max_terms: usize, bound: i64) -> ConstructibleFn {
    let k = rng.random_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| {
            let count = rng.random_range(1..=dim + 2);
            Term::new(random_weight(rng), random_polytope(rng, dim, count, bound))
        })
        .collect();
    ConstructibleFn::from_terms(dim, terms).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, m: usize, bound: i64) -> Matrix {
    loop {
        let g: Matrix = (0..m).map(|_| random_int_vector(rng, m, bound)).collect();
        if !linalg::determinant(&g).is_zero() {
            return g;
        }
    }
}

/// A salient cone in `Q^{n+1}` through a random projective frame; full
/// dimensional unless `degenerate`.
pub fn random_body<R: Rng>(rng: &mut R, n: usize, degenerate: bool) -> ProjBody {
    let m = n + 1;
    loop {
        let count = if degenerate { rng.random_range(1..=n) } else { rng.random_range(m..=m + 2) };
        let gens: Vec<Vector> = (0..count)
            .map(|_| {
                let mut g = random_int_vector(rng, m, 4);
                g[0] = int(rng.random_range(1..=4));
                g
            })
            .collect();
        let Ok(body) = ProjBody::new(n, gens, scalar::unit(m, 0)) else {
            continue;
        };
        if body.is_full_dimensional() == degenerate {
            continue;
        }
        let g = random_invertible(rng, m, 2);
        return body.transform(&g).unwrap();
    }
}

pub fn random_proj_fn<R: Rng>(rng: &mut R, n: usize, max_terms: usize, with_constant: bool) -> ProjConstructibleFn {
    let k = rng.random_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| ProjTerm::new(random_weight(rng), random_body(rng, n, false)))
        .collect();
    let constant = if with_constant { int(rng.random_range(-2..=2)) } else { Scalar::zero() };
    ProjConstructibleFn::from_terms(n, constant, terms).unwrap()
}

/// Random points together with generators and sums of generator pairs of
/// the bodies of `phi`, which land on boundaries.
pub fn sample_points<R: Rng>(rng: &mut R, phi: &ProjConstructibleFn, random: usize) -> Vec<ProjPoint> {
    let n = phi.n();
    let mut pts: Vec<ProjPoint> = (0..random).map(|_| ProjPoint::random(n, 6, rng)).collect();
    for t in phi.terms() {
        let g = t.body.generators();
        pts.push(ProjPoint::new(g[0].clone()).unwrap());
        if g.len() > 1 {
            pts.push(ProjPoint::new(scalar::add(&g[0], &g[1])).unwrap());
        }
    }
    pts
}

pub fn pt(c: &[i64]) -> ProjPoint {
    ProjPoint::from_ints(c).unwrap()
}
