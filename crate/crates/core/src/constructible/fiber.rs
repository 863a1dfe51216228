use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::ConstructibleFn;
use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::{self, Scalar, Vector};

/// The closed interval `{t : p + t·u ∈ K}` as optional endpoints, or `None`
/// when empty.
pub(crate) type Interval = (Option<Scalar>, Option<Scalar>);

pub(crate) fn restrict_to_line(k: &Polytope, p: &[Scalar], u: &[Scalar]) -> Option<Interval> {
    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    let mut constraints: Vec<(Scalar, Scalar)> = Vec::new();
    for h in k.inequalities() {
        constraints.push((scalar::dot(&h.normal, u), &h.offset - scalar::dot(&h.normal, p)));
    }
    for e in k.equalities() {
        let a = scalar::dot(&e.normal, u);
        let b = &e.offset - scalar::dot(&e.normal, p);
        constraints.push((-a.clone(), -b.clone()));
        constraints.push((a, b));
    }
    for (a, b) in constraints {
        if a.is_zero() {
            if b.is_negative() {
                return None;
            }
        } else if a.is_positive() {
            let t = b / a;
            hi = Some(hi.map_or(t.clone(), |h| h.min(t)));
        } else {
            let t = b / a;
            lo = Some(lo.map_or(t.clone(), |l| l.max(t)));
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

fn within(iv: &Interval, t: &Scalar) -> bool {
    iv.0.as_ref().is_none_or(|l| l <= t) && iv.1.as_ref().is_none_or(|h| t <= h)
}

/// `χ_c`-integral of `Σ a_i 1_{I_i}` over the line, by its 1-D cell structure.
fn line_integral(terms: &[(Scalar, Interval)]) -> Result<Scalar> {
    let mut cuts: Vec<Scalar> = Vec::new();
    for (_, iv) in terms {
        cuts.extend(iv.0.iter().cloned());
        cuts.extend(iv.1.iter().cloned());
    }
    cuts.sort();
    cuts.dedup();
    let value = |t: &Scalar| {
        terms
            .iter()
            .filter(|(_, iv)| within(iv, t))
            .fold(Scalar::zero(), |acc, (a, _)| acc + a)
    };
    let two = Scalar::from_integer(2.into());
    let mut total = Scalar::zero();
    for c in &cuts {
        total += value(c);
    }
    for w in cuts.windows(2) {
        total -= value(&((&w[0] + &w[1]) / &two));
    }
    let unbounded_probe = match (cuts.first(), cuts.last()) {
        (Some(first), Some(last)) => [first - Scalar::one(), last + Scalar::one()],
        _ => [Scalar::zero(), Scalar::zero()],
    };
    if unbounded_probe.iter().any(|t| !value(t).is_zero()) {
        return Err(Error::NotCompactlySupported);
    }
    Ok(total)
}

/// Fiberwise reference for `f_*φ` with `φ` on the plane and `f : Q^2 → Q`
/// nonconstant. Every term is restricted to the fiber line `f^{-1}(y)` and
/// integrated there, at each projected vertex and between consecutive ones;
/// the resulting step function is returned as point and interval terms.
pub fn pushforward_fiber_oracle(phi: &ConstructibleFn, f: &AffineMap) -> Result<ConstructibleFn> {
    if phi.ambient_dim() != 2 || f.source_dim() != 2 || f.target_dim() != 1 {
        return Err(Error::InvalidInput("fiber oracle needs a map from the plane to the line".into()));
    }
    let a = &f.matrix()[0];
    let c = &f.translation_vector()[0];
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return Err(Error::InvalidInput("fiber oracle needs a nonconstant map".into()));
    };
    let u: Vector = alloc::vec![-a[1].clone(), a[0].clone()];
    let fiber_integral = |y: &Scalar| -> Result<Scalar> {
        let mut p = scalar::zeros(2);
        p[k] = (y - c) / &a[k];
        let restricted: Vec<(Scalar, Interval)> = phi
            .terms()
            .iter()
            .filter_map(|t| restrict_to_line(&t.support, &p, &u).map(|iv| (t.weight.clone(), iv)))
            .collect();
        line_integral(&restricted)
    };

    let mut ys: Vec<Scalar> = Vec::new();
    for t in phi.terms() {
        ys.extend(t.support.vertices().iter().map(|v| f.apply(v)[0].clone()));
    }
    ys.sort();
    ys.dedup();
    let mut out = ConstructibleFn::zero(1);
    let (Some(first), Some(last)) = (ys.first(), ys.last()) else {
        return Ok(out);
    };
    for beyond in [first - Scalar::one(), last + Scalar::one()] {
        if !fiber_integral(&beyond)?.is_zero() {
            return Err(Error::NotCompactlySupported);
        }
    }
    let point = |y: &Scalar| Polytope::point(alloc::vec![y.clone()]);
    for y in &ys {
        out.push(fiber_integral(y)?, point(y)?)?;
    }
    let two = Scalar::from_integer(2.into());
    for w in ys.windows(2) {
        let v = fiber_integral(&((&w[0] + &w[1]) / &two))?;
        if v.is_zero() {
            continue;
        }
        let closed = Polytope::cuboid(&w[..1], &w[1..])?;
        out.push(v.clone(), closed)?;
        out.push(-v.clone(), point(&w[0])?)?;
        out.push(-v, point(&w[1])?)?;
    }
    Ok(out.simplify())
}
