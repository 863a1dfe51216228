//! JSON file formats. Rationals are strings `"p/q"` (or `"p"`); plain JSON
//! integers are accepted on input as well.

use std::fmt;
use std::str::FromStr;

use polychi_core::constructible::CellDecomposition;
use polychi_core::radon::{InversionReport, KernelProbeReport};
use polychi_core::{
    AffineMap, ConstructibleFn, Halfspace, Polytope, ProjBody, ProjConstructibleFn, ProjPoint, ProjTerm, RadonImage,
    Scalar, Term, Vector,
};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// An exact rational in its textual form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_rational(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }
        }

        d.deserialize_any(RationalVisitor)
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    Scalar::from_str(text.trim())
        .map(Rational)
        .map_err(|e| format!("invalid rational {text:?}: {e}"))
}

pub type RationalVec = Vec<Rational>;

pub fn to_vector(v: &[Rational]) -> Vector {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn from_vector(v: &[Scalar]) -> RationalVec {
    v.iter().cloned().map(Rational).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceJson {
    pub normal: RationalVec,
    pub offset: Rational,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<RationalVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<RationalVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lineality: Option<Vec<RationalVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfspaceJson>>,
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn check_lengths(path: &str, rows: &[RationalVec], len: usize) -> Result<(), CliError> {
    match rows.iter().position(|r| r.len() != len) {
        Some(i) => Err(CliError::validation(
            format!("{path}[{i}]"),
            format!("expected {len} coordinates, found {}", rows[i].len()),
        )),
        None => Ok(()),
    }
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        let rows = |vs: &[Vector]| vs.iter().map(|v| from_vector(v)).collect::<Vec<_>>();
        let nonempty = |vs: &[Vector]| (!vs.is_empty()).then(|| rows(vs));
        PolytopeJson {
            ambient_dim: p.ambient_dim(),
            vertices: Some(rows(p.vertices())),
            rays: nonempty(p.rays()),
            lineality: nonempty(p.lineality()),
            halfspaces: Some(
                p.halfspaces()
                    .iter()
                    .map(|h| HalfspaceJson {
                        normal: from_vector(&h.normal),
                        offset: Rational(h.offset.clone()),
                    })
                    .collect(),
            ),
        }
    }

    /// Builds the polytope from whichever forms are present; when both are,
    /// they must describe the same set.
    pub fn to_polytope(&self, path: &str) -> Result<Polytope, CliError> {
        let d = self.ambient_dim;
        let lib = |e| CliError::library(path, e);
        let generated = match &self.vertices {
            Some(vs) => {
                let rays = self.rays.clone().unwrap_or_default();
                let lin = self.lineality.clone().unwrap_or_default();
                check_lengths(&join(path, "vertices"), vs, d)?;
                check_lengths(&join(path, "rays"), &rays, d)?;
                check_lengths(&join(path, "lineality"), &lin, d)?;
                let conv = |rows: &[RationalVec]| rows.iter().map(|r| to_vector(r)).collect::<Vec<_>>();
                if vs.is_empty() && !(rays.is_empty() && lin.is_empty()) {
                    return Err(CliError::validation(
                        join(path, "vertices"),
                        "a polyhedron with rays needs at least one vertex",
                    ));
                }
                Some(Polytope::from_generators_with_lineality(d, conv(vs), conv(&rays), conv(&lin)).map_err(lib)?)
            }
            None if self.rays.is_some() || self.lineality.is_some() => {
                return Err(CliError::validation(join(path, "vertices"), "rays given without vertices"));
            }
            None => None,
        };
        let constrained = match &self.halfspaces {
            Some(hs) => {
                for (i, h) in hs.iter().enumerate() {
                    if h.normal.len() != d {
                        return Err(CliError::validation(
                            format!("{}[{i}].normal", join(path, "halfspaces")),
                            format!("expected {d} coordinates, found {}", h.normal.len()),
                        ));
                    }
                }
                let hs: Vec<Halfspace> = hs.iter().map(|h| Halfspace::new(to_vector(&h.normal), h.offset.0.clone())).collect();
                Some(Polytope::from_halfspaces(d, &hs).map_err(lib)?)
            }
            None => None,
        };
        match (generated, constrained) {
            (Some(a), Some(b)) if a != b => Err(CliError::validation(
                join(path, "halfspaces"),
                "vertices and halfspaces describe different sets",
            )),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(CliError::validation(path, "either vertices or halfspaces is required")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub weight: Rational,
    pub support: PolytopeJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructibleJson {
    pub ambient_dim: usize,
    pub terms: Vec<TermJson>,
}

impl ConstructibleJson {
    pub fn from_fn(phi: &ConstructibleFn) -> Self {
        ConstructibleJson {
            ambient_dim: phi.ambient_dim(),
            terms: phi
                .terms()
                .iter()
                .map(|t| TermJson {
                    weight: Rational(t.weight.clone()),
                    support: PolytopeJson::from_polytope(&t.support),
                })
                .collect(),
        }
    }

    pub fn to_fn(&self) -> Result<ConstructibleFn, CliError> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let path = format!("terms[{i}].support");
                let support = t.support.to_polytope(&path)?;
                if support.ambient_dim() != self.ambient_dim {
                    return Err(CliError::validation(
                        join(&path, "ambient_dim"),
                        format!("expected {}, found {}", self.ambient_dim, support.ambient_dim()),
                    ));
                }
                Ok(Term::new(t.weight.0.clone(), support))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConstructibleFn::from_terms(self.ambient_dim, terms).map_err(|e| CliError::library("terms", e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyJson {
    pub n: usize,
    pub cone_generators: Vec<RationalVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<RationalVec>,
}

impl BodyJson {
    pub fn from_body(k: &ProjBody) -> Self {
        BodyJson {
            n: k.n(),
            cone_generators: k.generators().iter().map(|g| from_vector(g)).collect(),
            witness: Some(from_vector(k.witness())),
        }
    }

    pub fn to_body(&self, path: &str) -> Result<ProjBody, CliError> {
        check_lengths(&join(path, "cone_generators"), &self.cone_generators, self.n + 1)?;
        let gens: Vec<Vector> = self.cone_generators.iter().map(|g| to_vector(g)).collect();
        let body = match &self.witness {
            Some(w) => ProjBody::new(self.n, gens, to_vector(w)),
            None => ProjBody::from_generators(self.n, gens),
        };
        body.map_err(|e| CliError::library(path, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjTermJson {
    pub weight: Rational,
    pub body: BodyJson,
}

/// Format of both `ProjConstructibleFn` and `RadonImage` (whose bodies live in
/// the dual space).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjFnJson {
    pub n: usize,
    #[serde(default = "zero")]
    pub constant: Rational,
    pub terms: Vec<ProjTermJson>,
}

fn zero() -> Rational {
    Rational(Scalar::from_integer(0.into()))
}

impl ProjFnJson {
    fn parts(&self) -> Result<Vec<ProjTerm>, CliError> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let path = format!("terms[{i}].body");
                let body = t.body.to_body(&path)?;
                if body.n() != self.n {
                    return Err(CliError::validation(
                        join(&path, "n"),
                        format!("expected {}, found {}", self.n, body.n()),
                    ));
                }
                Ok(ProjTerm::new(t.weight.0.clone(), body))
            })
            .collect()
    }

    pub fn to_fn(&self) -> Result<ProjConstructibleFn, CliError> {
        ProjConstructibleFn::from_terms(self.n, self.constant.0.clone(), self.parts()?)
            .map_err(|e| CliError::library("terms", e))
    }

    pub fn to_image(&self) -> Result<RadonImage, CliError> {
        RadonImage::from_terms(self.n, self.constant.0.clone(), self.parts()?).map_err(|e| CliError::library("terms", e))
    }

    fn from_parts(n: usize, constant: &Scalar, terms: &[ProjTerm]) -> Self {
        ProjFnJson {
            n,
            constant: Rational(constant.clone()),
            terms: terms
                .iter()
                .map(|t| ProjTermJson {
                    weight: Rational(t.weight.clone()),
                    body: BodyJson::from_body(&t.body),
                })
                .collect(),
        }
    }

    pub fn from_fn(phi: &ProjConstructibleFn) -> Self {
        Self::from_parts(phi.n(), phi.constant_term(), phi.terms())
    }

    pub fn from_image(psi: &RadonImage) -> Self {
        Self::from_parts(psi.n(), psi.constant_term(), psi.terms())
    }
}

/// Points (or hyperplanes) of `RP^n` as rows of homogeneous coordinates.
pub fn parse_points(rows: &[RationalVec], n: usize) -> Result<Vec<ProjPoint>, CliError> {
    check_lengths("", rows, n + 1)?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| ProjPoint::new(to_vector(r)).map_err(|e| CliError::library(format!("[{i}]"), e)))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineMapJson {
    pub matrix: Vec<RationalVec>,
    pub translation: RationalVec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_dim: Option<usize>,
}

impl AffineMapJson {
    pub fn to_map(&self) -> Result<AffineMap, CliError> {
        let m: Vec<Vector> = self.matrix.iter().map(|r| to_vector(r)).collect();
        let source = self.source_dim.or_else(|| m.first().map(Vec::len)).unwrap_or(0);
        AffineMap::with_source_dim(m, to_vector(&self.translation), source).map_err(|e| CliError::library("matrix", e))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellJson {
    pub signature: Vec<i8>,
    pub dim: usize,
    pub value: Rational,
    pub witness: RationalVec,
    pub bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellDecompositionJson {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<HalfspaceJson>,
    pub cells: Vec<CellJson>,
}

impl CellDecompositionJson {
    pub fn from_cells(c: &CellDecomposition) -> Self {
        CellDecompositionJson {
            ambient_dim: c.ambient_dim,
            hyperplanes: c
                .hyperplanes
                .iter()
                .map(|h| HalfspaceJson {
                    normal: from_vector(&h.normal),
                    offset: Rational(h.offset.clone()),
                })
                .collect(),
            cells: c
                .cells
                .iter()
                .map(|cell| CellJson {
                    signature: cell.signature.clone(),
                    dim: cell.dim,
                    value: Rational(cell.value.clone()),
                    witness: from_vector(&cell.witness),
                    bounded: cell.bounded,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionEntryJson {
    pub point: RationalVec,
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionJson {
    pub n: usize,
    pub euler_integral: Rational,
    pub passed: bool,
    pub entries: Vec<InversionEntryJson>,
}

impl InversionJson {
    pub fn from_report(r: &InversionReport) -> Self {
        InversionJson {
            n: r.n,
            euler_integral: Rational(r.euler_integral.clone()),
            passed: r.passed(),
            entries: r
                .entries
                .iter()
                .map(|e| InversionEntryJson {
                    point: from_vector(e.point.coords()),
                    lhs: Rational(e.lhs.clone()),
                    rhs: Rational(e.rhs.clone()),
                    residual: Rational(e.residual.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelValueJson {
    pub hyperplane: RationalVec,
    pub value: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelProbeJson {
    pub n: usize,
    pub seed: u64,
    pub expected: Rational,
    pub passed: bool,
    pub constant_in_kernel: bool,
    pub values: Vec<KernelValueJson>,
}

impl KernelProbeJson {
    pub fn from_report(r: &KernelProbeReport, seed: u64) -> Self {
        KernelProbeJson {
            n: r.n,
            seed,
            expected: Rational(r.expected.clone()),
            passed: r.passed(),
            constant_in_kernel: r.constant_in_kernel(),
            values: r
                .values
                .iter()
                .map(|(h, v)| KernelValueJson {
                    hyperplane: from_vector(h.coords()),
                    value: Rational(v.clone()),
                })
                .collect(),
        }
    }
}
