//! Real projective space `RP^n` (`n <= 3`) in homogeneous rational
//! coordinates, and convex bodies in it.
//!
//! A convex body `K ⊂ RP^n` is the image of a salient closed convex cone
//! `C ⊂ Q^{n+1}` together with a hyperplane missing `K`. Its dual `K^∨`
//! is the image of the dual cone `C^o = {ξ : ⟨ξ, g⟩ >= 0 on C}`, the set of
//! hyperplanes that do not meet the interior of `K`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;
use rand::Rng;

use crate::affine::AffineMap;
use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polytope::{Location, Polytope};
use crate::scalar::{self, Scalar, Vector};

/// Largest supported projective dimension.
pub const MAX_PROJECTIVE_DIM: usize = 3;

/// `χ(RP^d)`: 1 for even `d`, 0 for odd `d`.
pub fn chi_projective_space(d: usize) -> Scalar {
    if d.is_multiple_of(2) {
        Scalar::from_integer(1.into())
    } else {
        Scalar::zero()
    }
}

fn check_projective_dim(n: usize) -> Result<()> {
    if n > MAX_PROJECTIVE_DIM {
        return Err(Error::DimensionUnsupported {
            dim: n,
            max: MAX_PROJECTIVE_DIM,
        });
    }
    Ok(())
}

/// A point of `RP^n`, stored as a coprime integer vector with positive leading
/// entry. Hyperplanes of `RP^n` (points of the dual space) use the same type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vector,
}

pub type ProjHyperplane = ProjPoint;

impl ProjPoint {
    pub fn new(coords: Vector) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("homogeneous coordinates must be nonempty".into()));
        }
        check_projective_dim(coords.len() - 1)?;
        if scalar::is_zero(&coords) {
            return Err(Error::InvalidInput("homogeneous coordinates must not all vanish".into()));
        }
        Ok(ProjPoint {
            coords: scalar::canonical_direction(&coords),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(scalar::vector(coords))
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    /// The `n` of `RP^n`.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// `⟨self, other⟩` between canonical representatives. Only its vanishing
    /// is meaningful.
    pub fn pairing(&self, other: &ProjPoint) -> Scalar {
        scalar::dot(&self.coords, &other.coords)
    }

    pub fn is_incident(&self, other: &ProjPoint) -> bool {
        self.pairing(other).is_zero()
    }

    /// Image under the linear map `g`.
    pub fn transform(&self, g: &Matrix) -> Result<ProjPoint> {
        ProjPoint::new(linalg::mat_vec(g, &self.coords))
    }

    /// A point with integer coordinates drawn uniformly from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> ProjPoint {
        let bound = bound.max(1);
        loop {
            let coords: Vector = (0..=n).map(|_| scalar::int(rng.random_range(-bound..=bound))).collect();
            if !scalar::is_zero(&coords) {
                return ProjPoint {
                    coords: scalar::canonical_direction(&coords),
                };
            }
        }
    }
}

/// A convex compact body in `RP^n`: a salient polyhedral cone with a
/// hyperplane that misses it.
///
/// Generators are extreme rays as coprime integer vectors oriented so that
/// `⟨witness, g⟩ > 0`, sorted. Two bodies are equal when their generator
/// sets agree up to a global sign; the witness is not part of the identity.
#[derive(Clone, Debug)]
pub struct ProjBody {
    n: usize,
    generators: Vec<Vector>,
    witness: Vector,
    dual_rays: Vec<Vector>,
    dual_lineality: Vec<Vector>,
}

impl PartialEq for ProjBody {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.generators.len() != other.generators.len() {
            return false;
        }
        if self.generators == other.generators {
            return true;
        }
        let mut flipped: Vec<Vector> = other.generators.iter().map(|g| scalar::neg(g)).collect();
        scalar::sort_dedup(&mut flipped);
        self.generators == flipped
    }
}

impl Eq for ProjBody {}

fn sign_all(values: impl Iterator<Item = Scalar>) -> Option<Ordering> {
    let mut out: Option<Ordering> = None;
    for v in values {
        let s = v.cmp(&Scalar::zero());
        match out {
            None => out = Some(s),
            Some(prev) if prev != s => return None,
            _ => {}
        }
    }
    out
}

impl ProjBody {
    /// The body `r(cone(generators) ∖ 0)` with `witness` a hyperplane missing
    /// it. Generators may be redundant and of either orientation consistent
    /// with a single sign of `⟨witness, g⟩`.
    pub fn new(n: usize, generators: Vec<Vector>, witness: Vector) -> Result<Self> {
        check_projective_dim(n)?;
        let m = n + 1;
        if witness.len() != m {
            return Err(Error::AmbientMismatch {
                expected: m,
                found: witness.len(),
            });
        }
        if let Some(g) = generators.iter().find(|g| g.len() != m) {
            return Err(Error::AmbientMismatch {
                expected: m,
                found: g.len(),
            });
        }
        let gens: Vec<Vector> = generators.into_iter().filter(|g| !scalar::is_zero(g)).collect();
        if gens.is_empty() {
            return Err(Error::InvalidBody("a body needs at least one nonzero generator".into()));
        }
        let orientation = sign_all(gens.iter().map(|g| scalar::dot(&witness, g)));
        let gens: Vec<Vector> = match orientation {
            Some(Ordering::Greater) => gens,
            Some(Ordering::Less) => gens.iter().map(|g| scalar::neg(g)).collect(),
            _ => {
                return Err(Error::InvalidBody(
                    "witness hyperplane must be strictly one-signed on every generator".into(),
                ))
            }
        };
        Self::from_oriented(n, gens, witness)
    }

    /// Like [`ProjBody::new`] with a witness chosen in the interior of the
    /// dual cone. Generators must already be oriented into one salient cone.
    pub fn from_generators(n: usize, generators: Vec<Vector>) -> Result<Self> {
        check_projective_dim(n)?;
        let m = n + 1;
        if let Some(g) = generators.iter().find(|g| g.len() != m) {
            return Err(Error::AmbientMismatch {
                expected: m,
                found: g.len(),
            });
        }
        let dual = cone::dual(m, &generators);
        if dual.rays.is_empty() {
            return Err(Error::NotSalient);
        }
        let witness = dual.rays.iter().fold(scalar::zeros(m), |acc, r| scalar::add(&acc, r));
        if generators
            .iter()
            .filter(|g| !scalar::is_zero(g))
            .any(|g| scalar::dot(&witness, g).is_zero())
        {
            return Err(Error::NotSalient);
        }
        Self::new(n, generators, witness)
    }

    fn from_oriented(n: usize, gens: Vec<Vector>, witness: Vector) -> Result<Self> {
        let m = n + 1;
        let minimal = cone::minimize(m, &gens);
        if !minimal.is_pointed() {
            return Err(Error::NotSalient);
        }
        let dual = cone::dual(m, &minimal.rays);
        Ok(ProjBody {
            n,
            generators: minimal.rays,
            witness: scalar::primitive(&witness),
            dual_rays: dual.rays,
            dual_lineality: dual.lineality,
        })
    }

    /// Body whose affine chart `{⟨witness, y⟩ = 1}` contains `polytope`
    /// through `chart`, as produced by [`ProjBody::chart_embed`].
    pub fn from_chart(chart: &AffineMap, polytope: &Polytope) -> Result<Self> {
        let n = chart.source_dim();
        if chart.target_dim() != n + 1 || polytope.ambient_dim() != n {
            return Err(Error::AmbientMismatch {
                expected: n + 1,
                found: chart.target_dim(),
            });
        }
        if !polytope.is_bounded() || polytope.is_empty() {
            return Err(Error::InvalidBody("chart polytope must be nonempty and bounded".into()));
        }
        // witness: annihilates the chart directions, equals 1 at the origin
        let columns = linalg::transpose(chart.matrix());
        let normal = linalg::nullspace(&columns, n + 1);
        if normal.len() != 1 {
            return Err(Error::InvalidInput("chart map must be injective".into()));
        }
        let base = chart.translation_vector();
        let pairing = scalar::dot(&normal[0], base);
        if pairing.is_zero() {
            return Err(Error::InvalidInput("chart must avoid the origin".into()));
        }
        let witness = scalar::scale(&normal[0], &pairing.recip());
        let gens = polytope.vertices().iter().map(|v| chart.apply(v)).collect();
        Self::new(n, gens, witness)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn witness(&self) -> &Vector {
        &self.witness
    }

    pub fn witness_hyperplane(&self) -> ProjHyperplane {
        ProjPoint::new(self.witness.clone()).expect("witness is nonzero")
    }

    /// Extreme rays of the dual cone `C^o`.
    pub fn dual_generators(&self) -> &[Vector] {
        &self.dual_rays
    }

    /// Whether `K` has nonempty interior in `RP^n`.
    pub fn is_full_dimensional(&self) -> bool {
        self.dual_lineality.is_empty()
    }

    /// `K^∨`, the body of hyperplanes not meeting `int K`.
    pub fn dual_body(&self) -> Result<ProjBody> {
        if !self.is_full_dimensional() {
            return Err(Error::LowerDimensionalBody);
        }
        let interior = self
            .generators
            .iter()
            .fold(scalar::zeros(self.n + 1), |acc, g| scalar::add(&acc, g));
        Self::new(self.n, self.dual_rays.clone(), interior)
    }

    /// Whether the hyperplane `h` meets `K` (tangency counts).
    pub fn meets(&self, h: &ProjHyperplane) -> bool {
        debug_assert_eq!(h.n(), self.n);
        !matches!(
            sign_all(self.generators.iter().map(|g| scalar::dot(h.coords(), g))),
            Some(Ordering::Greater | Ordering::Less)
        )
    }

    /// Position of `x` relative to `K` in `RP^n`.
    pub fn classify_point(&self, x: &ProjPoint) -> Location {
        debug_assert_eq!(x.n(), self.n);
        let pairing = scalar::dot(&self.witness, x.coords());
        if pairing.is_zero() {
            return Location::Outside;
        }
        let y = if scalar::sign(&pairing) > 0 {
            x.coords().clone()
        } else {
            scalar::neg(x.coords())
        };
        let values: Vec<i8> = self.dual_rays.iter().map(|r| scalar::sign(&scalar::dot(r, &y))).collect();
        if values.iter().any(|&s| s < 0) {
            return Location::Outside;
        }
        if !self.is_full_dimensional() {
            if self.dual_lineality.iter().any(|l| !scalar::dot(l, &y).is_zero()) {
                return Location::Outside;
            }
            return Location::Boundary;
        }
        if values.iter().all(|&s| s > 0) {
            Location::Interior
        } else {
            Location::Boundary
        }
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.classify_point(x) != Location::Outside
    }

    /// Affine chart `z ↦ y(z)` onto the slice `⟨witness, y⟩ = 1`, and the
    /// polytope `K` in chart coordinates.
    pub fn chart_embed(&self) -> (AffineMap, Polytope) {
        let n = self.n;
        let w = &self.witness;
        let k = w.iter().position(|x| !x.is_zero()).expect("witness is nonzero");
        let others: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
        let mut translation = scalar::zeros(n + 1);
        translation[k] = w[k].recip();
        let mut matrix: Matrix = (0..=n).map(|_| scalar::zeros(n)).collect();
        for (j, &c) in others.iter().enumerate() {
            matrix[c][j] = Scalar::from_integer(1.into());
            matrix[k][j] = -(&w[c] / &w[k]);
        }
        let chart = AffineMap::with_source_dim(matrix, translation, n).expect("chart shape");
        let vertices: Vec<Vector> = self
            .generators
            .iter()
            .map(|g| {
                let s = scalar::dot(w, g).recip();
                others.iter().map(|&c| &g[c] * &s).collect()
            })
            .collect();
        let polytope = Polytope::from_vertices(n, vertices).expect("chart vertices");
        (chart, polytope)
    }

    /// `K ∩ L` in `RP^n`; `None` when empty. Fails with `NotConvex` when the
    /// intersection has two components (`C_K ∩ C_L` and `C_K ∩ -C_L`).
    pub fn intersect(&self, other: &ProjBody) -> Result<Option<ProjBody>> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let m = self.n + 1;
        let mine = self.dual_rows();
        let piece = |flip: bool| {
            let mut rows = mine.clone();
            for r in other.dual_rows() {
                rows.push(if flip { scalar::neg(&r) } else { r });
            }
            cone::from_inequalities(m, &rows)
        };
        let same = piece(false);
        let opposite = piece(true);
        match (same.rays.is_empty(), opposite.rays.is_empty()) {
            (true, true) => Ok(None),
            (false, false) => Err(Error::NotConvex),
            (false, true) => Self::new(self.n, same.rays, self.witness.clone()).map(Some),
            (true, false) => Self::new(self.n, opposite.rays, self.witness.clone()).map(Some),
        }
    }

    /// Inequalities `⟨row, y⟩ >= 0` cutting out the cone.
    fn dual_rows(&self) -> Vec<Vector> {
        let mut rows = self.dual_rays.clone();
        for l in &self.dual_lineality {
            rows.push(l.clone());
            rows.push(scalar::neg(l));
        }
        rows
    }

    /// Image under an invertible linear map `g` of `Q^{n+1}`.
    pub fn transform(&self, g: &Matrix) -> Result<ProjBody> {
        let inv = linalg::inverse(g).ok_or_else(|| Error::InvalidInput("transform must be invertible".into()))?;
        let witness = linalg::mat_vec(&linalg::transpose(&inv), &self.witness);
        let gens = self.generators.iter().map(|v| linalg::mat_vec(g, v)).collect();
        Self::new(self.n, gens, witness)
    }
}
