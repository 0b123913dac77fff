use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sawlab::{Point, Walk};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "sawlab",
    version,
    about = "Counters, constructions and samplers for self-avoiding walks on the square lattice",
    after_help = "Exit codes: 0 success, 2 precondition error, 3 resource limit, 64 usage error."
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Wall-clock limit for exponential enumerations, in seconds [default: none]
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    /// Largest length counted by count-* commands; also the enumeration size limit
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Largest box parameter m accepted by polygon enumeration [default: 2]
    #[arg(long, global = true)]
    pub max_m: Option<usize>,
    /// Largest box family accepted by polygon enumeration [default: 3]
    #[arg(long, global = true)]
    pub max_family: Option<usize>,
    /// Worker threads [default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Directory for output files and the run manifest
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot (commands with a natural plot only)
    #[arg(long, global = true)]
    pub plot: bool,
    /// File of `key = value` lines supplying default flag values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Where walks live: a JSON file, a rectangle of sites or a disk.
#[derive(Args, Debug, Clone, Serialize)]
pub struct DomainArgs {
    /// Domain JSON file
    #[arg(long, conflicts_with_all = ["rect", "radius"])]
    pub domain: Option<PathBuf>,
    /// Rectangle of W×H sites, e.g. `4x4` (marks default to opposite corners)
    #[arg(long, conflicts_with = "radius")]
    pub rect: Option<String>,
    /// Disk of this radius (marks default to the west and east ends)
    #[arg(long)]
    pub radius: Option<u32>,
    /// First marked site `x,y`
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Point>,
    /// Second marked site `x,y`
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Point>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ChainArgs {
    /// Sweeps discarded before sampling (a sweep is one attempted move per site)
    #[arg(long, default_value_t = 200)]
    pub burn_in: usize,
    /// Sweeps between samples
    #[arg(long, default_value_t = 1)]
    pub thinning: usize,
    /// Reject moves that would make the walk longer than this
    #[arg(long)]
    pub max_length: Option<usize>,
    /// Consecutive rejections after which the chain counts as frozen
    #[arg(long, default_value_t = 1_000_000)]
    pub frozen_window: usize,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// c_n: self-avoiding walks of length n from the origin (default n ≤ 10)
    CountWalks,
    /// b_n: bridges of length n (default n ≤ 10)
    CountBridges {
        /// Count strict bridges (start strictly lowest) instead
        #[arg(long)]
        strict: bool,
    },
    /// a_{n,k}: squared walks by length and span (default n ≤ 8)
    CountSquared,
    /// Polygons of P_m, or of S_F when --boxes is given, by length
    CountPolygons {
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Box cells `i,j;i,j;...`
        #[arg(long)]
        boxes: Option<String>,
    },
    /// A_n: lattice animals of size n containing the origin (default n ≤ 10)
    CountAnimals,
    /// P_D(A): partitions of A into distinct parts
    Partitions {
        #[arg(long = "A", id = "total")]
        total: usize,
        /// Every value from 0 to A
        #[arg(long)]
        table: bool,
    },
    /// Bracket on the connective constant from exact counts (default n ≤ 12)
    MuBounds,
    /// Z_m(x): partition function of P_m
    Zm {
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Step weight
        #[arg(long)]
        x: f64,
    },
    /// Z_F(x): partition function of S_F for a box family
    Zf {
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Box cells `i,j;i,j;...`
        #[arg(long)]
        boxes: String,
        #[arg(long)]
        x: f64,
    },
    /// Unfold a bridge into a rectangle walk
    Unfold {
        /// Bridge `x,y:DIRS`
        #[arg(long, allow_hyphen_values = true)]
        walk: Walk,
    },
    /// Glue two rectangle walks into a squared walk
    BuildSquare {
        /// Rectangle walk from the origin to (k, l)
        #[arg(long, allow_hyphen_values = true)]
        first: Walk,
        /// Rectangle walk of the same length
        #[arg(long, allow_hyphen_values = true)]
        second: Walk,
    },
    /// Close four squared walks into a polygon of P_m
    BuildPolygon {
        /// Box parameter; the walks must have span m
        #[arg(long)]
        m: usize,
        /// Four squared walks of span m
        #[arg(long, num_args = 4, allow_hyphen_values = true)]
        walks: Vec<Walk>,
    },
    /// Check the merge map S_B × S_{F∖B} → S_F on a family
    Merge {
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Box cells `i,j;i,j;...`
        #[arg(long)]
        boxes: String,
        #[arg(long, default_value_t = 0.6)]
        x: f64,
    },
    /// Splice a walk with a polygon of S_F through a link polygon
    Splice {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Box cells of F
        #[arg(long)]
        boxes: String,
        /// Walk next to F, `x,y:DIRS`
        #[arg(long, allow_hyphen_values = true)]
        walk: Walk,
        /// Index of the polygon of S_F (in enumeration order)
        #[arg(long, default_value_t = 0)]
        polygon: usize,
    },
    /// Exact draws from x^|γ|/Z by enumeration
    SampleExact {
        #[command(flatten)]
        domain: DomainArgs,
        /// Step weight
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Markov-chain draws from x^|γ|/Z
    SampleMcmc {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Mean density |γ|/|Ω| at one or more x
    Theta {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        chain: ChainArgs,
        /// Comma-separated step weights
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Holes left by the ξ-neighbourhood of a walk
    Holes {
        #[command(flatten)]
        domain: DomainArgs,
        /// Walk to analyse; one chain sample at --x when absent
        #[arg(long, allow_hyphen_values = true)]
        walk: Option<Walk>,
        #[arg(long, default_value_t = 2)]
        xi: u32,
        #[arg(long, default_value_t = 0.6)]
        x: f64,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Exact probability of box distance one to a sub-family, against the splice bound
    Avoidance {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Box cells of F
        #[arg(long)]
        boxes: String,
        /// Comma-separated step weights
        #[arg(long, value_delimiter = ',', default_value = "0.6")]
        x: Vec<f64>,
    },
    /// Largest hole and density across disk radii
    Spacefill {
        /// Comma-separated disk radii
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        radii: Vec<u32>,
        #[arg(long, default_value_t = 0.6)]
        x: f64,
        /// Neighbourhood radius [default: 6m]
        #[arg(long)]
        xi: Option<u32>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Independent chains per radius
        #[arg(long, default_value_t = 8)]
        chains: usize,
        #[arg(long, default_value_t = 2000)]
        burn_in: usize,
        #[arg(long, default_value_t = 20)]
        thinning: usize,
    },
    /// Summarise the manifests found in --out into report.md
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CountWalks => "count-walks",
            Command::CountBridges { .. } => "count-bridges",
            Command::CountSquared => "count-squared",
            Command::CountPolygons { .. } => "count-polygons",
            Command::CountAnimals => "count-animals",
            Command::Partitions { .. } => "partitions",
            Command::MuBounds => "mu-bounds",
            Command::Zm { .. } => "zm",
            Command::Zf { .. } => "zf",
            Command::Unfold { .. } => "unfold",
            Command::BuildSquare { .. } => "build-square",
            Command::BuildPolygon { .. } => "build-polygon",
            Command::Merge { .. } => "merge",
            Command::Splice { .. } => "splice",
            Command::SampleExact { .. } => "sample-exact",
            Command::SampleMcmc { .. } => "sample-mcmc",
            Command::Theta { .. } => "theta",
            Command::Holes { .. } => "holes",
            Command::Avoidance { .. } => "avoidance",
            Command::Spacefill { .. } => "spacefill",
            Command::Report => "report",
        }
    }
}

pub const SUBCOMMANDS: [&str; 21] = [
    "count-walks",
    "count-bridges",
    "count-squared",
    "count-polygons",
    "count-animals",
    "partitions",
    "mu-bounds",
    "zm",
    "zf",
    "unfold",
    "build-square",
    "build-polygon",
    "merge",
    "splice",
    "sample-exact",
    "sample-mcmc",
    "theta",
    "holes",
    "avoidance",
    "spacefill",
    "report",
];
