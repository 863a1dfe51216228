//! Exact Euler calculus on polytopal constructible functions.
//!
//! The crate works with finite rational combinations of indicator functions of
//! convex polyhedra, integrates them against the Euler characteristic, and
//! implements the Euler-kernel Radon transform on real projective space
//! together with its inversion formula. A float-valued corner of the crate
//! computes intrinsic volumes of polytopes and runs Monte Carlo checks of the
//! Steiner, Cauchy–Crofton and planar kinematic formulas.
//!
//! Everything incidence-related is exact (`BigRational`); floats appear only in
//! solid angles, chord lengths and Monte Carlo estimates.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; `std` only adds parallel Monte Carlo sampling.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod affine;
pub mod cone;
pub mod constructible;
mod error;
pub mod integral;
pub mod linalg;
pub mod polytope;
pub mod projective;
pub mod radon;
pub mod scalar;

pub use affine::AffineMap;
pub use constructible::{Cell, CellDecomposition, ConstructibleFn, NormalizeOptions, Term};
pub use error::{Error, Result};
pub use projective::{chi_projective_space, ProjBody, ProjHyperplane, ProjPoint};
pub use radon::{ProjConstructibleFn, ProjTerm, RadonImage};
pub use polytope::{Face, Halfspace, Hyperplane, Location, Polytope, MAX_AMBIENT_DIM};
pub use scalar::{Scalar, Vector};
