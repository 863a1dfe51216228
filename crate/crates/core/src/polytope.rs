//! Convex rational polyhedra in ambient dimension at most [`MAX_AMBIENT_DIM`].
//!
//! A [`Polytope`] always carries both descriptions, in canonical form:
//!
//! * V-form: `conv(vertices) + cone(rays) + span(lineality)`. When the
//!   lineality space is nontrivial, vertices and rays are projected onto its
//!   orthogonal complement.
//! * H-form: inequalities `normal · x <= offset` plus affine equations
//!   `normal · x = offset`. Equations are row reduced; inequality normals are
//!   orthogonal to the equation normals and scaled to coprime integers.
//!
//! Both are computed by double description on the homogenized cone
//! `{(t, x) : t >= 0, offset·t - normal·x >= 0}`, so equality of canonical
//! forms is equality of sets and `#[derive(PartialEq)]` is structural equality.
//! The empty polyhedron is an ordinary value.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::affine::AffineMap;
use crate::cone::{self, ConeGenerators};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar, Vector};

/// Largest supported ambient dimension.
pub const MAX_AMBIENT_DIM: usize = 4;

/// `normal · x <= offset`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Scalar) -> Self {
        Halfspace { normal, offset }
    }

    /// `normal · x - offset`; nonpositive inside.
    pub fn slack(&self, x: &[Scalar]) -> Scalar {
        scalar::dot(&self.normal, x) - &self.offset
    }
}

/// `normal · x = offset`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: Scalar) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn slack(&self, x: &[Scalar]) -> Scalar {
        scalar::dot(&self.normal, x) - &self.offset
    }

    /// Representative with a coprime integer normal whose first nonzero entry
    /// is positive. Hyperplanes with a zero normal are returned unchanged.
    pub fn canonical(&self) -> Hyperplane {
        let Some(first) = self.normal.iter().position(|x| !x.is_zero()) else {
            return self.clone();
        };
        let normal = scalar::canonical_direction(&self.normal);
        let factor = &normal[first] / &self.normal[first];
        Hyperplane {
            offset: &self.offset * factor,
            normal,
        }
    }
}

/// Position of a point relative to a polyhedron (topological interior in the
/// ambient space).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// A nonempty face, given by the indices of the vertices and rays it contains.
/// Lineality belongs to every face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    inequalities: Vec<Halfspace>,
    equalities: Vec<Hyperplane>,
}

fn check_ambient(dim: usize) -> Result<()> {
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::DimensionUnsupported {
            dim,
            max: MAX_AMBIENT_DIM,
        });
    }
    Ok(())
}

fn check_len(v: &[Scalar], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::AmbientMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

fn homogenize(t: Scalar, x: &[Scalar]) -> Vector {
    let mut v = Vec::with_capacity(x.len() + 1);
    v.push(t);
    v.extend_from_slice(x);
    v
}

impl Polytope {
    pub fn empty(ambient_dim: usize) -> Self {
        Polytope {
            ambient_dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
            inequalities: vec![Halfspace::new(scalar::zeros(ambient_dim), -Scalar::one())],
            equalities: Vec::new(),
        }
    }

    pub fn whole_space(ambient_dim: usize) -> Result<Self> {
        Self::from_constraints(ambient_dim, &[], &[])
    }

    pub fn point(p: Vector) -> Result<Self> {
        let d = p.len();
        Self::from_vertices(d, vec![p])
    }

    /// Axis-parallel box `[lo, hi]`.
    pub fn cuboid(lo: &[Scalar], hi: &[Scalar]) -> Result<Self> {
        check_len(hi, lo.len())?;
        let d = lo.len();
        let mut hs = Vec::new();
        for i in 0..d {
            hs.push(Halfspace::new(scalar::unit(d, i), hi[i].clone()));
            hs.push(Halfspace::new(scalar::neg(&scalar::unit(d, i)), -lo[i].clone()));
        }
        Self::from_halfspaces(d, &hs)
    }

    /// The unit cube `[0, 1]^d`.
    pub fn cube(d: usize) -> Result<Self> {
        let lo = scalar::zeros(d);
        let hi: Vector = (0..d).map(|_| Scalar::one()).collect();
        Self::cuboid(&lo, &hi)
    }

    /// `conv{0, e_1, ..., e_d}`.
    pub fn simplex(d: usize) -> Result<Self> {
        let mut vs = vec![scalar::zeros(d)];
        vs.extend((0..d).map(|i| scalar::unit(d, i)));
        Self::from_vertices(d, vs)
    }

    pub fn from_vertices(ambient_dim: usize, vertices: Vec<Vector>) -> Result<Self> {
        Self::from_generators(ambient_dim, vertices, Vec::new())
    }

    /// `conv(vertices) + cone(rays)`. The V-to-H conversion.
    pub fn from_generators(ambient_dim: usize, vertices: Vec<Vector>, rays: Vec<Vector>) -> Result<Self> {
        Self::from_generators_with_lineality(ambient_dim, vertices, rays, Vec::new())
    }

    pub fn from_generators_with_lineality(
        ambient_dim: usize,
        vertices: Vec<Vector>,
        rays: Vec<Vector>,
        lineality: Vec<Vector>,
    ) -> Result<Self> {
        check_ambient(ambient_dim)?;
        for v in vertices.iter().chain(&rays).chain(&lineality) {
            check_len(v, ambient_dim)?;
        }
        if vertices.is_empty() {
            return Ok(Self::empty(ambient_dim));
        }
        let mut gens: Vec<Vector> = Vec::new();
        gens.extend(vertices.iter().map(|v| homogenize(Scalar::one(), v)));
        gens.extend(rays.iter().map(|r| homogenize(Scalar::zero(), r)));
        for l in &lineality {
            gens.push(homogenize(Scalar::zero(), l));
            gens.push(homogenize(Scalar::zero(), &scalar::neg(l)));
        }
        let dual = cone::dual(ambient_dim + 1, &gens);
        let (inequalities, equalities) = h_form_from_dual(ambient_dim, &dual);

        // Lineality of the polyhedron: the directions killed by every normal.
        let mut normals: Vec<Vector> = equalities.iter().map(|e| e.normal.clone()).collect();
        normals.extend(inequalities.iter().map(|h| h.normal.clone()));
        let lin_space = linalg::nullspace(&normals, ambient_dim);
        let (lin_basis, _) = linalg::rref(&lin_space);
        let lineality: Vec<Vector> = lin_basis.iter().map(|v| scalar::primitive(v)).collect();
        let lin_ortho = linalg::orthogonal_basis(&lineality);
        let lin_dim = lineality.len();
        let eq_normals: Vec<Vector> = equalities.iter().map(|e| e.normal.clone()).collect();

        // Keep only generators of minimal faces / extreme rays.
        let mut vs: Vec<Vector> = Vec::new();
        for v in &vertices {
            let mut tight = eq_normals.clone();
            tight.extend(
                inequalities
                    .iter()
                    .filter(|h| h.slack(v).is_zero())
                    .map(|h| h.normal.clone()),
            );
            if linalg::rank(&tight) == ambient_dim - lin_dim {
                vs.push(linalg::reject(v, &lin_ortho));
            }
        }
        scalar::sort_dedup(&mut vs);
        let mut rs: Vec<Vector> = Vec::new();
        for r in &rays {
            let r = scalar::primitive(&linalg::reject(r, &lin_ortho));
            if scalar::is_zero(&r) {
                continue;
            }
            let mut tight = eq_normals.clone();
            tight.extend(
                inequalities
                    .iter()
                    .filter(|h| scalar::dot(&h.normal, &r).is_zero())
                    .map(|h| h.normal.clone()),
            );
            if linalg::rank(&tight) + 1 == ambient_dim - lin_dim {
                rs.push(r);
            }
        }
        scalar::sort_dedup(&mut rs);

        Ok(Polytope {
            ambient_dim,
            vertices: vs,
            rays: rs,
            lineality,
            inequalities,
            equalities,
        })
    }

    /// `{x : normal · x <= offset}` for every halfspace. The H-to-V conversion.
    pub fn from_halfspaces(ambient_dim: usize, halfspaces: &[Halfspace]) -> Result<Self> {
        Self::from_constraints(ambient_dim, halfspaces, &[])
    }

    pub fn from_constraints(
        ambient_dim: usize,
        inequalities: &[Halfspace],
        equalities: &[Hyperplane],
    ) -> Result<Self> {
        check_ambient(ambient_dim)?;
        let mut rows: Vec<Vector> = vec![scalar::unit(ambient_dim + 1, 0)];
        for h in inequalities {
            check_len(&h.normal, ambient_dim)?;
            rows.push(homogenize(h.offset.clone(), &scalar::neg(&h.normal)));
        }
        for e in equalities {
            check_len(&e.normal, ambient_dim)?;
            rows.push(homogenize(e.offset.clone(), &scalar::neg(&e.normal)));
            rows.push(homogenize(-e.offset.clone(), &e.normal));
        }
        let g = cone::from_inequalities(ambient_dim + 1, &rows);
        Self::from_homogeneous(ambient_dim, &g)
    }

    fn from_homogeneous(ambient_dim: usize, g: &ConeGenerators) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &g.rays {
            if r[0].is_zero() {
                rays.push(r[1..].to_vec());
            } else {
                let t = r[0].recip();
                vertices.push(scalar::scale(&r[1..], &t));
            }
        }
        let lineality: Vec<Vector> = g.lineality.iter().map(|l| l[1..].to_vec()).collect();
        Self::from_generators_with_lineality(ambient_dim, vertices, rays, lineality)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Extreme rays of the pointed part.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    /// Extreme rays followed by `±` pairs spanning the lineality space.
    pub fn all_rays(&self) -> Vec<Vector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(scalar::neg(l));
        }
        out
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Hyperplane] {
        &self.equalities
    }

    /// Inequalities followed by each equation as an opposing pair.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let mut out = self.inequalities.clone();
        for e in &self.equalities {
            out.push(Halfspace::new(e.normal.clone(), e.offset.clone()));
            out.push(Halfspace::new(scalar::neg(&e.normal), -e.offset.clone()));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Dimension of the affine hull, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.ambient_dim - self.equalities.len())
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient_dim)
    }

    pub fn locate(&self, x: &[Scalar]) -> Result<Location> {
        check_len(x, self.ambient_dim)?;
        if self.is_empty() {
            return Ok(Location::Outside);
        }
        if self.equalities.iter().any(|e| !e.slack(x).is_zero()) {
            return Ok(Location::Outside);
        }
        let mut strict = true;
        for h in &self.inequalities {
            let s = h.slack(x);
            if s.is_positive() {
                return Ok(Location::Outside);
            }
            if s.is_zero() {
                strict = false;
            }
        }
        if strict && self.equalities.is_empty() {
            Ok(Location::Interior)
        } else {
            Ok(Location::Boundary)
        }
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        Ok(self.locate(x)? != Location::Outside)
    }

    /// `self ⊆ other`, decided on generators.
    pub fn is_subset_of(&self, other: &Polytope) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.is_empty() {
            return Ok(true);
        }
        for v in &self.vertices {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        for r in self.all_rays() {
            if other.equalities.iter().any(|e| !scalar::dot(&e.normal, &r).is_zero())
                || other
                    .inequalities
                    .iter()
                    .any(|h| scalar::dot(&h.normal, &r).is_positive())
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient_dim));
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equalities.clone();
        eqs.extend(other.equalities.iter().cloned());
        Self::from_constraints(self.ambient_dim, &ineqs, &eqs)
    }

    /// Intersection with one extra halfspace.
    pub fn cut(&self, h: &Halfspace) -> Result<Polytope> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.push(h.clone());
        Self::from_constraints(self.ambient_dim, &ineqs, &self.equalities)
    }

    /// `f(P)`, computed generator-wise.
    pub fn affine_image(&self, f: &AffineMap) -> Result<Polytope> {
        if f.source_dim() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: f.source_dim(),
                found: self.ambient_dim,
            });
        }
        let target = f.target_dim();
        check_ambient(target)?;
        if self.is_empty() {
            return Ok(Self::empty(target));
        }
        let vertices = self.vertices.iter().map(|v| f.apply(v)).collect();
        let rays = self
            .rays
            .iter()
            .map(|r| f.apply_linear(r))
            .filter(|r| !scalar::is_zero(r))
            .collect();
        let lineality = self
            .lineality
            .iter()
            .map(|l| f.apply_linear(l))
            .filter(|l| !scalar::is_zero(l))
            .collect();
        Self::from_generators_with_lineality(target, vertices, rays, lineality)
    }

    /// `f^{-1}(P)` for `f` landing in the ambient space of `P`.
    pub fn preimage(&self, f: &AffineMap) -> Result<Polytope> {
        if f.target_dim() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: f.target_dim(),
                found: self.ambient_dim,
            });
        }
        let source = f.source_dim();
        check_ambient(source)?;
        if self.is_empty() {
            return Ok(Self::empty(source));
        }
        let ineqs: Vec<Halfspace> = self
            .inequalities
            .iter()
            .map(|h| {
                Halfspace::new(
                    f.pull_covector(&h.normal),
                    &h.offset - scalar::dot(&h.normal, f.translation_vector()),
                )
            })
            .collect();
        let eqs: Vec<Hyperplane> = self
            .equalities
            .iter()
            .map(|e| {
                Hyperplane::new(
                    f.pull_covector(&e.normal),
                    &e.offset - scalar::dot(&e.normal, f.translation_vector()),
                )
            })
            .collect();
        Self::from_constraints(source, &ineqs, &eqs)
    }

    /// Cartesian product `P × Q`.
    pub fn product(&self, other: &Polytope) -> Result<Polytope> {
        let (m, n) = (self.ambient_dim, other.ambient_dim);
        check_ambient(m + n)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(m + n));
        }
        let pad_left = |v: &Vector| {
            let mut out = v.clone();
            out.extend(scalar::zeros(n));
            out
        };
        let pad_right = |v: &Vector| {
            let mut out = scalar::zeros(m);
            out.extend(v.iter().cloned());
            out
        };
        let mut vertices = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                vertices.push(v);
            }
        }
        let mut rays: Vec<Vector> = self.rays.iter().map(pad_left).collect();
        rays.extend(other.rays.iter().map(pad_right));
        let mut lineality: Vec<Vector> = self.lineality.iter().map(pad_left).collect();
        lineality.extend(other.lineality.iter().map(pad_right));
        Self::from_generators_with_lineality(m + n, vertices, rays, lineality)
    }

    /// Indices of vertices and rays on which inequality `i` is tight.
    fn facet_incidence(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let h = &self.inequalities[i];
        let vs = (0..self.vertices.len())
            .filter(|&j| h.slack(&self.vertices[j]).is_zero())
            .collect();
        let rs = (0..self.rays.len())
            .filter(|&j| scalar::dot(&h.normal, &self.rays[j]).is_zero())
            .collect();
        (vs, rs)
    }

    fn face_dim(&self, vertices: &[usize], rays: &[usize]) -> usize {
        let Some(&first) = vertices.first() else {
            return 0;
        };
        let base = &self.vertices[first];
        let mut dirs: Vec<Vector> = vertices[1..]
            .iter()
            .map(|&j| scalar::sub(&self.vertices[j], base))
            .collect();
        dirs.extend(rays.iter().map(|&j| self.rays[j].clone()));
        dirs.extend(self.lineality.iter().cloned());
        linalg::rank(&dirs)
    }

    /// All nonempty faces, including the polyhedron itself, ordered by
    /// dimension and then by vertex indices.
    pub fn faces(&self) -> Vec<Face> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let all = ((0..self.vertices.len()).collect(), (0..self.rays.len()).collect());
        seen.insert(all);
        let facets: Vec<(Vec<usize>, Vec<usize>)> =
            (0..self.inequalities.len()).map(|i| self.facet_incidence(i)).collect();
        for f in &facets {
            if !f.0.is_empty() && seen.insert(f.clone()) {
                frontier.push(f.clone());
            }
        }
        while let Some(face) = frontier.pop() {
            for f in &facets {
                let vs: Vec<usize> = face.0.iter().copied().filter(|j| f.0.contains(j)).collect();
                if vs.is_empty() {
                    continue;
                }
                let rs: Vec<usize> = face.1.iter().copied().filter(|j| f.1.contains(j)).collect();
                let key = (vs, rs);
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    frontier.push(key);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|(vs, rs)| Face {
                dim: self.face_dim(&vs, &rs),
                vertices: vs,
                rays: rs,
            })
            .collect();
        faces.sort();
        faces
    }

    /// A point in the relative interior of `face`.
    pub fn face_interior_point(&self, face: &Face) -> Vector {
        let mut p = scalar::zeros(self.ambient_dim);
        for &j in &face.vertices {
            p = scalar::add(&p, &self.vertices[j]);
        }
        let k = Scalar::from_integer(face.vertices.len().into());
        p = scalar::scale(&p, &k.recip());
        for &j in &face.rays {
            p = scalar::add(&p, &self.rays[j]);
        }
        p
    }

    /// A point in the relative interior, `None` when empty.
    pub fn relative_interior_point(&self) -> Option<Vector> {
        if self.is_empty() {
            return None;
        }
        let face = Face {
            dim: 0,
            vertices: (0..self.vertices.len()).collect(),
            rays: (0..self.rays.len()).collect(),
        };
        Some(self.face_interior_point(&face))
    }

    /// Whether each vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        let Some(d) = self.dim() else {
            return true;
        };
        self.vertices.iter().all(|v| {
            self.inequalities.iter().filter(|h| h.slack(v).is_zero()).count() == d
        })
    }

    /// Corner type of `x`: the number of facets tight at `x`. For a simple
    /// polytope the neighbourhood of `x` is modelled on `R^r_{>=0} × R^{n-r}`.
    pub fn point_type(&self, x: &[Scalar]) -> Result<usize> {
        check_len(x, self.ambient_dim)?;
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDim);
        }
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        if !self.contains(x)? {
            return Err(Error::PointOutside);
        }
        Ok(self.inequalities.iter().filter(|h| h.slack(x).is_zero()).count())
    }

    /// The image under `x ↦ x + t`.
    pub fn translate(&self, t: &[Scalar]) -> Result<Polytope> {
        check_len(t, self.ambient_dim)?;
        self.affine_image(&AffineMap::translation(t.to_vec()))
    }

    /// The image under `x ↦ λx`.
    pub fn dilate(&self, lambda: &Scalar) -> Result<Polytope> {
        let d = self.ambient_dim;
        let m: Vec<Vector> = (0..d).map(|i| scalar::scale(&scalar::unit(d, i), lambda)).collect();
        self.affine_image(&AffineMap::new(m, scalar::zeros(d))?)
    }

    /// Checks the mutual containment of the two descriptions.
    pub fn validate(&self) -> Result<()> {
        for v in &self.vertices {
            if self.locate(v)? == Location::Outside {
                return Err(Error::InvalidInput(format!("vertex {v:?} violates the H-form")));
            }
        }
        Ok(())
    }
}

/// Canonical H-form from the generators of the dual homogenized cone.
fn h_form_from_dual(d: usize, dual: &ConeGenerators) -> (Vec<Halfspace>, Vec<Hyperplane>) {
    // (a_t, a_x) in the dual lineality means a_t + a_x·x = 0 on the polyhedron.
    let eq_rows: Vec<Vector> = dual
        .lineality
        .iter()
        .map(|a| {
            let mut row = a[1..].to_vec();
            row.push(-a[0].clone());
            row
        })
        .collect();
    let (reduced, _) = linalg::rref(&eq_rows);
    let equalities: Vec<Hyperplane> = reduced
        .iter()
        .map(|row| {
            let p = scalar::primitive(row);
            Hyperplane::new(p[..d].to_vec(), p[d].clone())
        })
        .collect();
    let normals: Vec<Vector> = equalities.iter().map(|e| e.normal.clone()).collect();
    let offsets: Vec<Scalar> = equalities.iter().map(|e| e.offset.clone()).collect();
    let ortho = linalg::orthogonal_basis_tagged(&normals, &offsets);

    let mut inequalities: Vec<Halfspace> = Vec::new();
    for a in &dual.rays {
        // a_t + a_x·x >= 0  <=>  -a_x·x <= a_t
        let mut normal = scalar::neg(&a[1..]);
        let mut offset = a[0].clone();
        for (q, qt) in &ortho {
            let c = scalar::dot(&normal, q) / scalar::dot(q, q);
            if !c.is_zero() {
                normal = scalar::axpy(&normal, &-c.clone(), q);
                offset -= c * qt;
            }
        }
        if scalar::is_zero(&normal) {
            continue;
        }
        let ints = scalar::primitive_int(&normal);
        let first = normal.iter().position(|x| !x.is_zero()).unwrap();
        let factor = Scalar::from_integer(ints[first].clone()) / &normal[first];
        inequalities.push(Halfspace::new(scalar::from_ints(&ints), offset * factor));
    }
    inequalities.sort();
    inequalities.dedup();
    (inequalities, equalities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, vector};

    fn hs(normal: &[i64], offset: Scalar) -> Halfspace {
        Halfspace::new(vector(normal), offset)
    }

    #[test]
    fn unit_square_from_vertices() {
        let sq = Polytope::from_vertices(
            2,
            vec![vector(&[0, 0]), vector(&[1, 0]), vector(&[1, 1]), vector(&[0, 1])],
        )
        .unwrap();
        let mut expected = [
            hs(&[1, 0], int(1)),
            hs(&[0, 1], int(1)),
            hs(&[-1, 0], int(0)),
            hs(&[0, -1], int(0)),
        ];
        expected.sort();
        assert_eq!(sq.inequalities(), &expected[..]);
        assert!(sq.equalities().is_empty());
        assert_eq!(sq.dim(), Some(2));
    }

    #[test]
    fn single_point_is_pinned_by_equations() {
        let p = Polytope::point(vector(&[2, 3])).unwrap();
        assert_eq!(p.dim(), Some(0));
        assert_eq!(p.equalities().len(), 2);
        assert!(p.inequalities().is_empty());
        assert_eq!(p.halfspaces().len(), 4);
        assert_eq!(p.vertices(), &[vector(&[2, 3])]);
    }

    #[test]
    fn interval_from_halfspaces() {
        let p = Polytope::from_halfspaces(1, &[hs(&[1], int(1)), hs(&[-1], int(1))]).unwrap();
        assert_eq!(p.vertices(), &[vector(&[-1]), vector(&[1])]);
    }

    #[test]
    fn infeasible_system_is_empty() {
        let p = Polytope::from_halfspaces(
            2,
            &[
                hs(&[-1, 0], int(0)),
                hs(&[0, -1], int(0)),
                hs(&[1, 1], int(1)),
                hs(&[-1, -1], int(-2)),
            ],
        )
        .unwrap();
        assert!(p.is_empty());
        assert!(p.vertices().is_empty());
        assert_eq!(p, Polytope::empty(2));
    }

    #[test]
    fn containment_classification() {
        let sq = Polytope::cube(2).unwrap();
        assert_eq!(sq.locate(&[ratio(1, 2), ratio(1, 2)]).unwrap(), Location::Interior);
        assert_eq!(sq.locate(&[int(1), ratio(1, 2)]).unwrap(), Location::Boundary);
        assert_eq!(sq.locate(&[int(2), int(0)]).unwrap(), Location::Outside);
    }

    #[test]
    fn segment_dimension() {
        let seg = Polytope::from_constraints(
            2,
            &[hs(&[1, 0], int(1)), hs(&[-1, 0], int(0))],
            &[Hyperplane::new(vector(&[1, 1]), int(1))],
        )
        .unwrap();
        assert_eq!(seg.dim(), Some(1));
        assert_eq!(seg.vertices().len(), 2);
    }

    #[test]
    fn point_types_on_square_and_cube() {
        let sq = Polytope::cube(2).unwrap();
        assert_eq!(sq.point_type(&[ratio(1, 2), ratio(1, 2)]).unwrap(), 0);
        assert_eq!(sq.point_type(&[ratio(1, 2), int(0)]).unwrap(), 1);
        let cube = Polytope::cube(3).unwrap();
        assert_eq!(cube.point_type(&vector(&[1, 0, 1])).unwrap(), 3);
        assert_eq!(cube.point_type(&vector(&[2, 0, 1])), Err(Error::PointOutside));
    }

    #[test]
    fn octahedron_apex_is_not_simple() {
        let mut vs = Vec::new();
        for i in 0..3 {
            vs.push(scalar::unit(3, i));
            vs.push(scalar::neg(&scalar::unit(3, i)));
        }
        let oct = Polytope::from_vertices(3, vs).unwrap();
        assert_eq!(oct.inequalities().len(), 8);
        assert_eq!(oct.point_type(&scalar::zeros(3)), Err(Error::NotSimple));
    }

    #[test]
    fn square_overlap_has_quarter_area() {
        let sq = Polytope::cube(2).unwrap();
        let shifted = sq.translate(&[ratio(1, 2), ratio(1, 2)]).unwrap();
        let overlap = sq.intersect(&shifted).unwrap();
        let expected = Polytope::cuboid(&[ratio(1, 2), ratio(1, 2)], &[int(1), int(1)]).unwrap();
        assert_eq!(overlap, expected);
        assert_eq!(sq.intersect(&sq).unwrap(), sq);
    }

    #[test]
    fn strip_has_lineality() {
        let strip = Polytope::from_halfspaces(2, &[hs(&[1, 0], int(1)), hs(&[-1, 0], int(0))]).unwrap();
        assert!(!strip.is_bounded());
        assert_eq!(strip.lineality(), &[vector(&[0, 1])]);
        assert_eq!(strip.vertices(), &[vector(&[0, 0]), vector(&[1, 0])]);
        assert_eq!(strip.all_rays().len(), 2);
    }

    #[test]
    fn too_many_dimensions() {
        assert_eq!(
            Polytope::cube(5),
            Err(Error::DimensionUnsupported { dim: 5, max: MAX_AMBIENT_DIM })
        );
    }

    #[test]
    fn cube_face_counts() {
        let cube = Polytope::cube(3).unwrap();
        let faces = cube.faces();
        let count = |d| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (8, 12, 6, 1));
    }

    #[test]
    fn hyperplane_canonical_form() {
        let h = Hyperplane::new(vec![int(-2), int(4)], int(6)).canonical();
        assert_eq!(h, Hyperplane::new(vector(&[1, -2]), int(-3)));
    }
}
