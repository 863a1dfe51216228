//! Constructible functions: finite rational combinations `Σ a_i · 1_{K_i}` of
//! indicator functions of closed convex polyhedra.
//!
//! Pointwise operations act term-wise on supports (`1_K · 1_L = 1_{K∩L}`,
//! `f^* 1_K = 1_{f^{-1}K}`). Integration is against the Euler characteristic:
//! a nonempty compact convex set has `χ = 1`. Functions with unbounded terms
//! are integrated through a [`CellDecomposition`] using the compactly supported
//! characteristic `χ_c(open k-cell) = (-1)^k`, which agrees with `χ` whenever
//! the function itself has compact support.

mod cells;
mod fiber;

use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use cells::{Cell, CellDecomposition, NormalizeOptions};
pub use fiber::pushforward_fiber_oracle;
#[cfg(test)]
pub(crate) use fiber::restrict_to_line;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Scalar,
    pub support: Polytope,
}

impl Term {
    pub fn new(weight: Scalar, support: Polytope) -> Self {
        Term { weight, support }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFn {
    ambient_dim: usize,
    terms: Vec<Term>,
}

fn mismatch(expected: usize, found: usize) -> Error {
    Error::AmbientMismatch { expected, found }
}

impl ConstructibleFn {
    pub fn zero(ambient_dim: usize) -> Self {
        ConstructibleFn {
            ambient_dim,
            terms: Vec::new(),
        }
    }

    pub fn indicator(support: Polytope) -> Self {
        ConstructibleFn {
            ambient_dim: support.ambient_dim(),
            terms: alloc::vec![Term::new(Scalar::one(), support)],
        }
    }

    /// The constant function `c` on the whole space.
    pub fn constant(ambient_dim: usize, c: Scalar) -> Result<Self> {
        Ok(Self::indicator(Polytope::whole_space(ambient_dim)?).scale(&c))
    }

    pub fn from_terms(ambient_dim: usize, terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.support.ambient_dim() != ambient_dim) {
            return Err(mismatch(ambient_dim, t.support.ambient_dim()));
        }
        Ok(ConstructibleFn { ambient_dim, terms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn push(&mut self, weight: Scalar, support: Polytope) -> Result<()> {
        if support.ambient_dim() != self.ambient_dim {
            return Err(mismatch(self.ambient_dim, support.ambient_dim()));
        }
        self.terms.push(Term::new(weight, support));
        Ok(())
    }

    fn check_same(&self, other: &ConstructibleFn) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(mismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ConstructibleFn {
            ambient_dim: self.ambient_dim,
            terms,
        }
        .simplify())
    }

    pub fn sub(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ConstructibleFn {
        ConstructibleFn {
            ambient_dim: self.ambient_dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.weight * c, t.support.clone()))
                .collect(),
        }
    }

    /// Drops zero weights and empty supports and merges equal supports.
    pub fn simplify(&self) -> ConstructibleFn {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.terms {
            if t.weight.is_zero() || t.support.is_empty() {
                continue;
            }
            match out.iter_mut().find(|o| o.support == t.support) {
                Some(o) => o.weight += &t.weight,
                None => out.push(t.clone()),
            }
        }
        out.retain(|t| !t.weight.is_zero());
        ConstructibleFn {
            ambient_dim: self.ambient_dim,
            terms: out,
        }
    }

    /// `Σ_{i : x ∈ K_i} a_i`.
    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.ambient_dim {
            return Err(mismatch(self.ambient_dim, x.len()));
        }
        let mut acc = Scalar::zero();
        for t in &self.terms {
            if t.support.contains(x)? {
                acc += &t.weight;
            }
        }
        Ok(acc)
    }

    /// Pointwise product; `1_K · 1_L = 1_{K∩L}` term by term.
    pub fn multiply(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        self.check_same(other)?;
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let support = a.support.intersect(&b.support)?;
                if !support.is_empty() {
                    terms.push(Term::new(&a.weight * &b.weight, support));
                }
            }
        }
        Ok(ConstructibleFn {
            ambient_dim: self.ambient_dim,
            terms,
        }
        .simplify())
    }

    /// `(φ ⊠ ψ)(x, y) = φ(x) · ψ(y)` on the product space.
    pub fn exterior_product(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        let ambient_dim = self.ambient_dim + other.ambient_dim;
        if ambient_dim > crate::polytope::MAX_AMBIENT_DIM {
            return Err(Error::DimensionUnsupported {
                dim: ambient_dim,
                max: crate::polytope::MAX_AMBIENT_DIM,
            });
        }
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let support = a.support.product(&b.support)?;
                terms.push(Term::new(&a.weight * &b.weight, support));
            }
        }
        Ok(ConstructibleFn { ambient_dim, terms }.simplify())
    }

    /// `f^*φ = φ ∘ f`, term-wise preimages. `f` maps into this function's space.
    pub fn pullback(&self, f: &AffineMap) -> Result<ConstructibleFn> {
        if f.target_dim() != self.ambient_dim {
            return Err(mismatch(self.ambient_dim, f.target_dim()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term::new(t.weight.clone(), t.support.preimage(f)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstructibleFn {
            ambient_dim: f.source_dim(),
            terms,
        }
        .simplify())
    }

    /// `f_*φ (y) = ∫_{f^{-1}(y)} φ dχ`. For bounded convex `K` every fiber
    /// `K ∩ f^{-1}(y)` is compact convex, so `f_* 1_K = 1_{f(K)}`; unbounded
    /// terms are rejected.
    pub fn pushforward(&self, f: &AffineMap) -> Result<ConstructibleFn> {
        if f.source_dim() != self.ambient_dim {
            return Err(mismatch(f.source_dim(), self.ambient_dim));
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.weight.is_zero() || t.support.is_empty() {
                continue;
            }
            if !t.support.is_bounded() {
                return Err(Error::UnboundedTerm);
            }
            terms.push(Term::new(t.weight.clone(), t.support.affine_image(f)?));
        }
        Ok(ConstructibleFn {
            ambient_dim: f.target_dim(),
            terms,
        }
        .simplify())
    }

    /// `∫ φ dχ`. Bounded terms contribute their weight (`χ = 1` for a
    /// nonempty compact convex set); otherwise the cell decomposition decides.
    pub fn euler_integral(&self) -> Result<Scalar> {
        let live = || {
            self.terms
                .iter()
                .filter(|t| !t.weight.is_zero() && !t.support.is_empty())
        };
        if live().all(|t| t.support.is_bounded()) {
            return Ok(live().fold(Scalar::zero(), |acc, t| acc + &t.weight));
        }
        self.euler_integral_by_cells()
    }

    /// `Σ_cells value · (-1)^dim` over the cell decomposition.
    pub fn euler_integral_by_cells(&self) -> Result<Scalar> {
        self.normalize()?.euler_characteristic()
    }

    pub fn is_compactly_supported(&self) -> Result<bool> {
        let live = self
            .terms
            .iter()
            .filter(|t| !t.weight.is_zero() && !t.support.is_empty());
        if live.clone().all(|t| t.support.is_bounded()) {
            return Ok(true);
        }
        Ok(self.normalize()?.is_compactly_supported())
    }

    pub fn normalize(&self) -> Result<CellDecomposition> {
        self.normalize_with(&NormalizeOptions::default())
    }

    pub fn normalize_with(&self, options: &NormalizeOptions) -> Result<CellDecomposition> {
        cells::decompose(self, options)
    }

    /// Whether both functions agree at every point, decided on the cells of
    /// the joint arrangement.
    pub fn extensionally_eq(&self, other: &ConstructibleFn) -> Result<bool> {
        let diff = self.sub(other)?;
        if diff.terms.is_empty() {
            return Ok(true);
        }
        Ok(diff.normalize()?.cells.iter().all(|c| c.value.is_zero()))
    }
}
