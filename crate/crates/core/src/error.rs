use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Ambient (or homogeneous) dimension beyond what the routine supports.
    DimensionUnsupported { dim: usize, max: usize },
    AmbientMismatch { expected: usize, found: usize },
    /// A vertex lies on more facets than the ambient dimension.
    NotSimple,
    PointOutside,
    NotCompactlySupported,
    UnboundedTerm,
    Unbounded,
    ArrangementTooLarge { hyperplanes: usize, cap: usize },
    LowerDimensionalBody,
    NotSalient,
    NotConvex,
    NotFullDim,
    InvalidBody(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionUnsupported { dim, max } => {
                write!(f, "dimension {dim} is not supported (maximum {max})")
            }
            Error::AmbientMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSimple => f.write_str("polytope is not simple"),
            Error::PointOutside => f.write_str("point lies outside the polytope"),
            Error::NotCompactlySupported => f.write_str("function is not compactly supported"),
            Error::UnboundedTerm => f.write_str("term has an unbounded support"),
            Error::Unbounded => f.write_str("polyhedron is unbounded"),
            Error::ArrangementTooLarge { hyperplanes, cap } => {
                write!(f, "arrangement has {hyperplanes} hyperplanes (cap {cap})")
            }
            Error::LowerDimensionalBody => f.write_str("projective body has empty interior"),
            Error::NotSalient => f.write_str("cone contains a line"),
            Error::NotConvex => f.write_str("points are not in convex position"),
            Error::NotFullDim => f.write_str("body is not full-dimensional"),
            Error::InvalidBody(msg) => write!(f, "invalid projective body: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
