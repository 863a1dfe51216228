//! The Euler-kernel Radon transform on `RP^n` and its dual.
//!
//! For a body `K`, `R(1_K)(H) = χ(K ∩ H)` is 1 exactly when `H` meets `K`,
//! so `R(1_K) = 1` off `int K^∨`. Images are kept in that symbolic form: a
//! list of dual bodies plus a constant. The dual transform integrates over the
//! pencil of hyperplanes through a point, a copy of `RP^{n-1}`; for a single
//! body the pencil either avoids `int K^∨` (when `x ∈ K`) or crosses it in an
//! open `(n-1)`-ball, which removes `(-1)^{n-1}` from `χ(RP^{n-1})`.

mod oracle;
mod sinogram;

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

pub use oracle::dual_radon_oracle;
pub use sinogram::{classical_sinogram, radon_affine_line, shear};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polytope::Location;
use crate::projective::{chi_projective_space, ProjBody, ProjHyperplane, ProjPoint};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTerm {
    pub weight: Scalar,
    pub body: ProjBody,
}

impl ProjTerm {
    pub fn new(weight: Scalar, body: ProjBody) -> Self {
        ProjTerm { weight, body }
    }
}

/// `constant + Σ a_i · 1_{K_i}` on `RP^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjConstructibleFn {
    n: usize,
    constant: Scalar,
    terms: Vec<ProjTerm>,
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::AmbientMismatch { expected, found });
    }
    Ok(())
}

impl ProjConstructibleFn {
    pub fn zero(n: usize) -> Self {
        ProjConstructibleFn {
            n,
            constant: Scalar::zero(),
            terms: Vec::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        ProjConstructibleFn {
            n,
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn indicator(body: ProjBody) -> Self {
        ProjConstructibleFn {
            n: body.n(),
            constant: Scalar::zero(),
            terms: alloc::vec![ProjTerm::new(Scalar::one(), body)],
        }
    }

    pub fn from_terms(n: usize, constant: Scalar, terms: Vec<ProjTerm>) -> Result<Self> {
        for t in &terms {
            check_n(n, t.body.n())?;
        }
        Ok(ProjConstructibleFn { n, constant, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn terms(&self) -> &[ProjTerm] {
        &self.terms
    }

    pub fn push(&mut self, weight: Scalar, body: ProjBody) -> Result<()> {
        check_n(self.n, body.n())?;
        self.terms.push(ProjTerm::new(weight, body));
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ProjConstructibleFn {
            n: self.n,
            constant: &self.constant + &other.constant,
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ProjConstructibleFn {
            n: self.n,
            constant: &self.constant * c,
            terms: self
                .terms
                .iter()
                .map(|t| ProjTerm::new(&t.weight * c, t.body.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &ProjPoint) -> Result<Scalar> {
        check_n(self.n, x.n())?;
        Ok(self
            .terms
            .iter()
            .filter(|t| t.body.contains(x))
            .fold(self.constant.clone(), |acc, t| acc + &t.weight))
    }

    /// `∫ φ dχ = constant · χ(RP^n) + Σ a_i`.
    pub fn euler_integral(&self) -> Scalar {
        self.terms.iter().fold(
            &self.constant * chi_projective_space(self.n),
            |acc, t| acc + &t.weight,
        )
    }

    /// Push forward along the linear automorphism `g` of `Q^{n+1}`.
    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(ProjTerm::new(t.weight.clone(), t.body.transform(g)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjConstructibleFn {
            n: self.n,
            constant: self.constant.clone(),
            terms,
        })
    }
}

/// `constant + Σ a_i · 1_{RP^{n∨} ∖ int D_i}` on the dual space, with `D_i`
/// the dual bodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonImage {
    n: usize,
    constant: Scalar,
    terms: Vec<ProjTerm>,
}

impl RadonImage {
    pub fn from_terms(n: usize, constant: Scalar, terms: Vec<ProjTerm>) -> Result<Self> {
        for t in &terms {
            check_n(n, t.body.n())?;
            if !t.body.is_full_dimensional() {
                return Err(Error::LowerDimensionalBody);
            }
        }
        Ok(RadonImage { n, constant, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    /// Terms with their dual bodies `D_i = K_i^∨`.
    pub fn terms(&self) -> &[ProjTerm] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(RadonImage {
            n: self.n,
            constant: &self.constant + &other.constant,
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RadonImage {
            n: self.n,
            constant: &self.constant * c,
            terms: self
                .terms
                .iter()
                .map(|t| ProjTerm::new(&t.weight * c, t.body.clone()))
                .collect(),
        }
    }
}

/// `Rφ(H) = ∫_H φ dχ`, term-wise `1_K ↦ 1_{complement of int K^∨}`; a constant
/// `c` maps to `c · χ(RP^{n-1})`.
pub fn radon(phi: &ProjConstructibleFn) -> Result<RadonImage> {
    let terms = phi
        .terms
        .iter()
        .map(|t| Ok(ProjTerm::new(t.weight.clone(), t.body.dual_body()?)))
        .collect::<Result<Vec<_>>>()?;
    let chi_h = if phi.n == 0 {
        Scalar::zero()
    } else {
        chi_projective_space(phi.n - 1)
    };
    Ok(RadonImage {
        n: phi.n,
        constant: &phi.constant * chi_h,
        terms,
    })
}

/// `ψ(H)`.
pub fn eval_radon(psi: &RadonImage, h: &ProjHyperplane) -> Result<Scalar> {
    check_n(psi.n, h.n())?;
    Ok(psi
        .terms
        .iter()
        .filter(|t| t.body.classify_point(h) != Location::Interior)
        .fold(psi.constant.clone(), |acc, t| acc + &t.weight))
}

/// Whether `x ∈ K` for the body `K = D^∨`: every generator of `D`, read as a
/// hyperplane, weakly on one side of `x`.
fn in_predual(d: &ProjBody, x: &ProjPoint) -> bool {
    let signs: Vec<i8> = d
        .generators()
        .iter()
        .map(|g| scalar::sign(&scalar::dot(g, x.coords())))
        .collect();
    signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
}

/// `R^tψ(x)`, the Euler integral of `ψ` over the pencil of hyperplanes
/// through `x`.
pub fn dual_radon_eval(psi: &RadonImage, x: &ProjPoint) -> Result<Scalar> {
    check_n(psi.n, x.n())?;
    if psi.n == 0 {
        return Err(Error::DimensionUnsupported { dim: 0, max: 0 });
    }
    let chi_pencil = chi_projective_space(psi.n - 1);
    let outside = &chi_pencil - scalar::parity_sign(psi.n - 1);
    Ok(psi.terms.iter().fold(&psi.constant * &chi_pencil, |acc, t| {
        let c = if in_predual(&t.body, x) { &chi_pencil } else { &outside };
        acc + &t.weight * c
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionEntry {
    pub point: ProjPoint,
    /// `(-1)^{n-1} · R^tRφ(x)`
    pub lhs: Scalar,
    /// `φ(x) + ½((-1)^{n-1} - 1) ∫φ dχ`
    pub rhs: Scalar,
    pub residual: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub n: usize,
    pub euler_integral: Scalar,
    pub entries: Vec<InversionEntry>,
}

impl InversionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_zero())
    }
}

/// Checks `(-1)^{n-1}(R^t ∘ R)φ = φ + ½((-1)^{n-1} - 1)(∫φ)` at every sample.
pub fn verify_inversion(phi: &ProjConstructibleFn, samples: &[ProjPoint]) -> Result<InversionReport> {
    let n = phi.n;
    if n == 0 {
        return Err(Error::DimensionUnsupported { dim: 0, max: 0 });
    }
    let image = radon(phi)?;
    let integral = phi.euler_integral();
    let sign = scalar::parity_sign(n - 1);
    let correction = (&sign - Scalar::one()) / Scalar::from_integer(2.into()) * &integral;
    let entries = samples
        .iter()
        .map(|x| {
            let lhs = &sign * dual_radon_eval(&image, x)?;
            let rhs = phi.evaluate(x)? + &correction;
            Ok(InversionEntry {
                point: x.clone(),
                residual: &lhs - &rhs,
                lhs,
                rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InversionReport {
        n,
        euler_integral: integral,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelProbeReport {
    pub n: usize,
    /// `χ(RP^{n-1})`, the value `R(1)` must take everywhere.
    pub expected: Scalar,
    pub values: Vec<(ProjHyperplane, Scalar)>,
}

impl KernelProbeReport {
    pub fn passed(&self) -> bool {
        self.values.iter().all(|(_, v)| *v == self.expected)
    }

    /// Whether the constant function lies in the kernel of `R`.
    pub fn constant_in_kernel(&self) -> bool {
        self.passed() && self.expected.is_zero()
    }
}

/// Evaluates `R(1)` on `RP^n` at `count` random hyperplanes.
pub fn kernel_probe<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Result<KernelProbeReport> {
    if !(1..=crate::projective::MAX_PROJECTIVE_DIM).contains(&n) {
        return Err(Error::DimensionUnsupported {
            dim: n,
            max: crate::projective::MAX_PROJECTIVE_DIM,
        });
    }
    let image = radon(&ProjConstructibleFn::constant(n, Scalar::one()))?;
    let values = (0..count)
        .map(|_| {
            let h = ProjPoint::random(n, 9, rng);
            let v = eval_radon(&image, &h)?;
            Ok((h, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelProbeReport {
        n,
        expected: chi_projective_space(n - 1),
        values,
    })
}
