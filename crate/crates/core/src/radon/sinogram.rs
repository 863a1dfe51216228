//! Line transforms of planar constructible functions in the affine chart:
//! the Euler-kernel transform and the classical (length-kernel) sinogram.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineMap;
use crate::constructible::{ConstructibleFn, Term};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar, Vector};

fn check_plane(phi: &ConstructibleFn) -> Result<()> {
    if phi.ambient_dim() != 2 {
        return Err(Error::AmbientMismatch {
            expected: 2,
            found: phi.ambient_dim(),
        });
    }
    Ok(())
}

/// A point on `{x : normal · x = offset}` and a direction along it.
fn line_frame(normal: &[Scalar], offset: &Scalar) -> Result<(Vector, Vector)> {
    let nn = scalar::dot(normal, normal);
    if nn.is_zero() {
        return Err(Error::InvalidInput("line normal must be nonzero".into()));
    }
    let base = scalar::scale(normal, &(offset / nn));
    let dir = alloc::vec![-normal[1].clone(), normal[0].clone()];
    Ok((base, dir))
}

/// `∫_ℓ φ dχ` for the line `ℓ = {x : normal · x = offset}`.
pub fn radon_affine_line(phi: &ConstructibleFn, normal: &[Scalar], offset: &Scalar) -> Result<Scalar> {
    check_plane(phi)?;
    if normal.len() != 2 {
        return Err(Error::AmbientMismatch {
            expected: 2,
            found: normal.len(),
        });
    }
    if !phi.is_compactly_supported()? {
        return Err(Error::NotCompactlySupported);
    }
    let (base, dir) = line_frame(normal, offset)?;
    let line = AffineMap::new(alloc::vec![alloc::vec![dir[0].clone()], alloc::vec![dir[1].clone()]], base)?;
    phi.pullback(&line)?.euler_integral()
}

/// A term's support as integer constraints `a·x <= b`, equalities split in two.
struct IntTerm {
    weight: f64,
    rows: Vec<[BigInt; 3]>,
}

impl IntTerm {
    fn new(t: &Term) -> Self {
        let mut rows = Vec::new();
        let mut push = |n: &[Scalar], b: &Scalar| {
            let v = scalar::primitive_int(&[n[0].clone(), n[1].clone(), b.clone()]);
            let [a0, a1, c] = <[BigInt; 3]>::try_from(v).expect("three entries");
            rows.push([a0, a1, c]);
        };
        for h in t.support.inequalities() {
            push(&h.normal, &h.offset);
        }
        for e in t.support.equalities() {
            push(&e.normal, &e.offset);
            push(&scalar::neg(&e.normal), &-&e.offset);
        }
        IntTerm {
            weight: scalar::to_f64(&t.weight),
            rows,
        }
    }

    /// Chord length of the support on `{x : u·x = L·p}` with `u = (c, s)`
    /// integral, `D = |u|²` and `p = pn/pd`, `pd > 0`. Points of the line are
    /// `(L·p/D)·u + t·(-s, c)`; each row bounds `t` by a fraction with positive
    /// denominator, compared by cross-multiplication.
    fn chord(&self, u: &[BigInt; 2], l: &BigInt, d: &BigInt, pn: &BigInt, pd: &BigInt) -> f64 {
        let mut lo: Option<(BigInt, BigInt)> = None;
        let mut hi: Option<(BigInt, BigInt)> = None;
        for [a0, a1, b] in &self.rows {
            let along = a1 * &u[0] - a0 * &u[1];
            let rhs = b * d * pd - pn * l * (a0 * &u[0] + a1 * &u[1]);
            if along.is_zero() {
                if rhs.is_negative() {
                    return 0.0;
                }
                continue;
            }
            let coeff = along * d * pd;
            if coeff.is_positive() {
                if hi.as_ref().is_none_or(|(n, q)| &rhs * q < n * &coeff) {
                    hi = Some((rhs, coeff));
                }
            } else if lo.as_ref().is_none_or(|(n, q)| -&rhs * q > n * -&coeff) {
                lo = Some((-rhs, -coeff));
            }
        }
        let (Some((ln, lq)), Some((hn, hq))) = (lo, hi) else {
            return 0.0;
        };
        let span = &hn * &lq - &ln * &hq;
        if !span.is_positive() {
            return 0.0;
        }
        let q = &hq * &lq;
        libm::sqrt(scalar::to_f64(&Scalar::new(&span * &span * d, &q * &q)))
    }
}

/// Classical sinogram: entry `[i][j]` is `Σ a_k · length(K_k ∩ ℓ)` for the line
/// `ℓ = {x : cos θ_i · x_1 + sin θ_i · x_2 = p_j}`. Clipping is exact on the
/// rational values of the floats; each chord costs one square root.
pub fn classical_sinogram(phi: &ConstructibleFn, angles: &[f64], offsets: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_plane(phi)?;
    let terms: Vec<_> = phi
        .terms()
        .iter()
        .filter(|t| !t.weight.is_zero() && !t.support.is_empty())
        .collect();
    if terms.iter().any(|t| !t.support.is_bounded()) {
        return Err(Error::NotCompactlySupported);
    }
    let terms: Vec<IntTerm> = terms.into_iter().map(IntTerm::new).collect();
    let exact = |x: f64| scalar::from_f64(x).ok_or_else(|| Error::InvalidInput(alloc::format!("non-finite value {x}")));
    let ps = offsets.iter().map(|&p| exact(p)).collect::<Result<Vec<_>>>()?;
    let row = |theta: f64| -> Result<Vec<f64>> {
        let (c, s) = (exact(libm::cos(theta))?, exact(libm::sin(theta))?);
        let l = c.denom().lcm(s.denom());
        let u = [c.numer() * (&l / c.denom()), s.numer() * (&l / s.denom())];
        let d = &u[0] * &u[0] + &u[1] * &u[1];
        Ok(ps
            .iter()
            .map(|p| {
                terms
                    .iter()
                    .map(|t| t.weight * t.chord(&u, &l, &d, p.numer(), p.denom()))
                    .fold(0.0, |a, b| a + b)
            })
            .collect())
    };
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        angles.par_iter().map(|&theta| row(theta)).collect()
    }
    #[cfg(not(feature = "std"))]
    {
        angles.iter().map(|&theta| row(theta)).collect()
    }
}

/// Shear `(x, y) ↦ (x + k y, y)`, area preserving.
pub fn shear(k: &Scalar) -> AffineMap {
    AffineMap::linear(alloc::vec![
        alloc::vec![Scalar::one(), k.clone()],
        alloc::vec![Scalar::zero(), Scalar::one()],
    ])
    .expect("2x2 matrix")
}
