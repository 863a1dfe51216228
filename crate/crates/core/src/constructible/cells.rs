//! Normal form of a constructible function over the arrangement of its
//! supports' facet hyperplanes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::ConstructibleFn;
use crate::error::{Error, Result};
use crate::polytope::{Halfspace, Hyperplane, Polytope};
use crate::scalar::{self, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Refuse arrangements with more distinct hyperplanes than this.
    pub max_hyperplanes: usize,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { max_hyperplanes: 24 }
    }
}

/// A relatively open cell of the arrangement: the points sharing one sign
/// vector with respect to every hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signature: Vec<i8>,
    pub dim: usize,
    pub value: Scalar,
    pub witness: Vector,
    pub bounded: bool,
}

/// Cells on which the function may be nonzero, sorted by signature. Every
/// point of the union of supports lies in exactly one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub cells: Vec<Cell>,
}

impl CellDecomposition {
    pub fn signature_of(&self, x: &[Scalar]) -> Vec<i8> {
        self.hyperplanes.iter().map(|h| scalar::sign(&h.slack(x))).collect()
    }

    /// Value at `x`, read off from the cell containing it.
    pub fn value_at(&self, x: &[Scalar]) -> Scalar {
        let sig = self.signature_of(x);
        self.cells
            .binary_search_by(|c| c.signature.cmp(&sig))
            .map_or_else(|_| Scalar::zero(), |i| self.cells[i].value.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| c.value.is_zero())
    }

    pub fn is_compactly_supported(&self) -> bool {
        self.cells.iter().all(|c| c.bounded || c.value.is_zero())
    }

    /// `Σ value · (-1)^dim`, the integral with respect to `χ_c`.
    pub fn euler_characteristic(&self) -> Result<Scalar> {
        if !self.is_compactly_supported() {
            return Err(Error::NotCompactlySupported);
        }
        Ok(self
            .cells
            .iter()
            .fold(Scalar::zero(), |acc, c| acc + &c.value * scalar::parity_sign(c.dim)))
    }
}

fn arrangement(phi: &ConstructibleFn) -> Vec<Hyperplane> {
    let mut hyps: Vec<Hyperplane> = Vec::new();
    for t in phi.terms() {
        if t.support.is_empty() {
            continue;
        }
        for h in t.support.inequalities() {
            hyps.push(Hyperplane::new(h.normal.clone(), h.offset.clone()).canonical());
        }
        for e in t.support.equalities() {
            hyps.push(e.canonical());
        }
    }
    hyps.retain(|h| !scalar::is_zero(&h.normal));
    hyps.sort();
    hyps.dedup();
    hyps
}

/// Whether `h` has generators of `p` strictly on both sides.
fn splits(p: &Polytope, h: &Hyperplane) -> bool {
    let mut pos = false;
    let mut neg = false;
    for v in p.vertices() {
        match scalar::sign(&h.slack(v)) {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    for r in p.all_rays() {
        match scalar::sign(&scalar::dot(&h.normal, &r)) {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    pos && neg
}

pub(super) fn decompose(phi: &ConstructibleFn, options: &NormalizeOptions) -> Result<CellDecomposition> {
    let d = phi.ambient_dim();
    let hyperplanes = arrangement(phi);
    if hyperplanes.len() > options.max_hyperplanes {
        return Err(Error::ArrangementTooLarge {
            hyperplanes: hyperplanes.len(),
            cap: options.max_hyperplanes,
        });
    }
    let supports: Vec<&Polytope> = phi
        .terms()
        .iter()
        .map(|t| &t.support)
        .filter(|s| !s.is_empty())
        .collect();
    if supports.is_empty() {
        return Ok(CellDecomposition {
            ambient_dim: d,
            hyperplanes,
            cells: Vec::new(),
        });
    }

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    let mut lineality = Vec::new();
    for s in &supports {
        vertices.extend(s.vertices().iter().cloned());
        rays.extend(s.rays().iter().cloned());
        lineality.extend(s.lineality().iter().cloned());
    }
    let hull = Polytope::from_generators_with_lineality(d, vertices, rays, lineality)?;

    let mut regions = alloc::vec![hull];
    for h in &hyperplanes {
        let mut next = Vec::with_capacity(regions.len() * 2);
        for r in regions {
            if splits(&r, h) {
                next.push(r.cut(&Halfspace::new(h.normal.clone(), h.offset.clone()))?);
                next.push(r.cut(&Halfspace::new(scalar::neg(&h.normal), -&h.offset))?);
            } else {
                next.push(r);
            }
        }
        regions = next;
    }

    // A cell of the arrangement inside the hull is the union of relative
    // interiors of region faces with its sign vector; the largest such face
    // carries its dimension and its boundedness.
    let mut by_signature: BTreeMap<Vec<i8>, (usize, Vector, bool)> = BTreeMap::new();
    for r in &regions {
        let linear = !r.lineality().is_empty();
        for face in r.faces() {
            let w = r.face_interior_point(&face);
            let sig: Vec<i8> = hyperplanes.iter().map(|h| scalar::sign(&h.slack(&w))).collect();
            let bounded = face.rays.is_empty() && !linear;
            match by_signature.get(&sig) {
                Some((dim, _, _)) if *dim >= face.dim => {}
                _ => {
                    by_signature.insert(sig, (face.dim, w, bounded));
                }
            }
        }
    }

    let mut cells = Vec::new();
    for (signature, (dim, witness, bounded)) in by_signature {
        let mut inside = false;
        for s in &supports {
            if s.contains(&witness)? {
                inside = true;
                break;
            }
        }
        if !inside {
            continue;
        }
        let value = phi.evaluate(&witness)?;
        cells.push(Cell {
            signature,
            dim,
            value,
            witness,
            bounded,
        });
    }
    Ok(CellDecomposition {
        ambient_dim: d,
        hyperplanes,
        cells,
    })
}
