use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankone::actions::Family;
use rankone::geometry::Ambient;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "rankone", version, about = "Covering radii of the 2-transitive rank-one permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Field order (a prime power).
    #[arg(long, global = true)]
    pub q: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Field modulus as comma-separated coefficients c0,c1,..,cf.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Largest group the run may materialize, in elements.
    #[arg(long, global = true)]
    pub max_elements: Option<u64>,
    /// Record wall-clock times (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a group, certify its order and transitivity, dump it.
    Build {
        #[arg(long)]
        materialize: bool,
        /// JSON generator file replacing the built-in generators.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Distance from the field automorphism h to the group.
    Distance {
        #[arg(long, value_enum, default_value_t = Method::Reduced)]
        method: Method,
        #[arg(long)]
        materialize: bool,
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Exact covering radius by a sweep of the full symmetric group.
    CoveringRadius {
        /// Comparison budget for the sweep.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Exhaustive check of a counting lemma.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
    },
    /// Lower bound, cited upper bound and any exact data for one family.
    Theorem {
        #[arg(long)]
        no_brute: bool,
        #[arg(long)]
        no_exact: bool,
    },
    /// Tensor-geometry models.
    Geometry {
        #[command(subcommand)]
        what: GeometryCmd,
    },
    /// Run the acceptance criteria as one aggregated report.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
    },
}

#[derive(Subcommand, Debug)]
pub enum GeometryCmd {
    /// Points, rulings and conic circles of the Minkowski plane.
    Minkowski,
    /// Span and perp of classical ovoids of the Hermitian Segre variety.
    Hermitian {
        /// Random group elements checked besides the identity.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Covering radius as an ovoid intersection statistic.
    Cr {
        #[arg(long, value_enum)]
        ambient: AmbientArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Pgl2,
    Psl2,
    Pgu3,
    Psu3,
    Sz,
    Ree,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Pgl2 => Family::Pgl2,
            FamilyArg::Psl2 => Family::Psl2,
            FamilyArg::Pgu3 => Family::Pgu3,
            FamilyArg::Psu3 => Family::Psu3,
            FamilyArg::Sz => Family::Sz,
            FamilyArg::Ree => Family::Ree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Reduced,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    SystemPsu,
    SystemSz,
    Eq8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientArg {
    Pg3,
    Pg8,
}

impl From<AmbientArg> for Ambient {
    fn from(a: AmbientArg) -> Self {
        match a {
            AmbientArg::Pg3 => Ambient::Pg3,
            AmbientArg::Pg8 => Ambient::Pg8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Smoke,
    Full,
}
