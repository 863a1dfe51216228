//! Integral geometry of convex polytopes: normal fans, external angles,
//! intrinsic volumes, and Monte Carlo checks of the Steiner, Cauchy–Crofton
//! and planar kinematic formulas.
//!
//! Combinatorics and contents are exact; the only floating-point steps are
//! square roots of exact squared contents and the angles of normal cones.

mod fan;
mod montecarlo;
mod volumes;

use num_traits::Signed;

use crate::scalar::{self, Scalar};

pub use fan::{cone_angle, cone_angle_mc, external_angle, normal_fan, FanEntry, NormalFan};
pub use montecarlo::{
    cauchy_crofton_check, count_hits, disk_oracle, kinematic_check_r2, kinematic_check_r2_in, steiner_check,
    CroftonReport, DiskOracle, KinematicReport, McReport, MotionWindow, SteinerEntry,
};
pub use volumes::{intrinsic_volumes, squared_content, unit_ball_volume, volume, IntrinsicVolumes};

/// Square root of a nonnegative rational, exact whenever the root is rational.
pub(crate) fn sqrt_exact(s: &Scalar) -> f64 {
    let s = s.abs();
    let (n, d) = (s.numer(), s.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        scalar::to_f64(&Scalar::new(rn, rd))
    } else {
        libm::sqrt(scalar::to_f64(&s))
    }
}
