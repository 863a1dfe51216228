//! JSON file formats and the `polychi` batch command-line front end.
//!
//! Every command reads its inputs from JSON files, runs one operation of
//! `polychi-core` and writes JSON (or CSV where tabular). Exit codes are 0 on
//! success, 2 for inputs that fail to parse or validate, and 3 when a
//! verification command finds a failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{execute, run, Output};
pub use error::{CliError, ErrorKind};

#[derive(Debug, Parser)]
#[command(name = "polychi", version, about = "Exact Euler calculus and integral geometry of polytopes")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo samples, or number of probes for kernel-probe.
    #[arg(long, global = true)]
    pub samples: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler integral of an affine or projective constructible function.
    EulerIntegral {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
    },
    /// Pointwise product of two constructible functions.
    Multiply {
        #[arg(long = "fn", value_name = "FILE", required = true)]
        functions: Vec<PathBuf>,
    },
    /// Push-forward along an affine map (Euler integration over fibers).
    Pushforward {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Pullback along an affine map.
    Pullback {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Radon transform on projective space, symbolically or at hyperplanes.
    Radon {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "FILE")]
        hyperplanes: Option<PathBuf>,
    },
    /// Dual transform of a Radon image at points.
    DualRadon {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        /// Also evaluate by pencil decomposition and fail on disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Checks the inversion formula at the given points.
    InvertCheck {
        #[arg(long)]
        n: usize,
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
    },
    /// Evaluates the transform of the constant function at random hyperplanes.
    KernelProbe {
        #[arg(long)]
        n: usize,
    },
    /// Classical line sinogram of a planar function.
    Sinogram {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        /// Number of angles, evenly spaced in [0, π).
        #[arg(long)]
        angles: usize,
        /// Number of offsets, evenly spaced in [-max, max]; the CSV header row.
        #[arg(long)]
        offsets: usize,
        /// Defaults to the largest vertex norm of the supports.
        #[arg(long)]
        max_offset: Option<f64>,
    },
    /// Intrinsic volumes V_0, ..., V_n.
    IntrinsicVolumes {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
    },
    /// Monte Carlo check of the Steiner formula.
    SteinerCheck {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2")]
        epsilons: Vec<f64>,
    },
    /// Monte Carlo check of the Cauchy–Crofton formula in the plane.
    CroftonCheck {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
    },
    /// Monte Carlo check of the planar kinematic formula.
    KinematicCheck {
        #[arg(long = "fn", value_name = "FILE", required = true)]
        functions: Vec<PathBuf>,
    },
    /// Cell decomposition of the arrangement of a constructible function.
    Normalize {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long)]
        max_hyperplanes: Option<usize>,
    },
}
