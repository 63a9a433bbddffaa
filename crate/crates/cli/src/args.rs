use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chronon", version, about = "Verification reports and simulations for quantized spacetime, Dirac and chronon models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write data here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Check the Snyder commutation relations by exact symbolic equality
    VerifySnyder(SnyderArgs),
    /// Check the Clifford anticommutators of the matrix coordinates
    VerifyClifford,
    /// Check the algebra of the matrix coordinates themselves
    VerifyCoordinates,
    /// Evaluate the [x, p_x] coefficient exactly
    EvalCompton(ComptonArgs),
    /// Simulate the Zitterbewegung of a free Dirac particle
    SimZitter(ZitterArgs),
    /// Evolve the chronon-discretized two-state system
    SimChronon(ChrononArgs),
    /// Decompose the coordinate-shift generator over the Clifford basis
    ProbeShift(ProbeArgs),
    /// Chirality commutator norms and handedness expectation
    Chirality(ChiralityArgs),
    /// Print a named parameter preset
    Preset {
        #[arg(value_enum)]
        name: PresetName,
    },
}

#[derive(Args, Debug)]
pub struct SnyderArgs {
    /// Fundamental length (rational, e.g. 1/2)
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long, default_value = "1")]
    pub hbar: String,
    #[arg(long, default_value = "1")]
    pub c: String,
    /// Run the full 5x5x5 parameter grid instead of a single tuple
    #[arg(long, conflicts_with_all = ["a", "hbar", "c"])]
    pub grid: bool,
    /// Fault injection: negate T before checking
    #[arg(long)]
    pub corrupt_t: bool,
}

#[derive(Args, Debug)]
pub struct ComptonArgs {
    #[arg(long, requires = "p", conflicts_with_all = ["m", "c"])]
    pub a: Option<String>,
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Mass; with --c evaluates at a = hbar/(mc), p = mc
    #[arg(long, requires = "c")]
    pub m: Option<String>,
    #[arg(long, requires = "m")]
    pub c: Option<String>,
    #[arg(long, default_value = "1")]
    pub hbar: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParticlePreset {
    Electron,
    Neutrino,
}

#[derive(Args, Debug)]
pub struct ZitterArgs {
    #[arg(long, value_enum)]
    pub preset: Option<ParticlePreset>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Momentum as px,py,pz
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Option<Vec<f64>>,
    /// Number of oscillation periods to simulate
    #[arg(long, default_value_t = 8.0)]
    pub periods: f64,
    #[arg(long, default_value_t = 64)]
    pub points_per_period: usize,
    /// Average over a window of this many oscillation periods
    #[arg(long)]
    pub average: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TwoStatePreset {
    Kaon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Euler,
    Exact,
}

#[derive(Args, Debug)]
pub struct ChrononArgs {
    #[arg(long, value_enum)]
    pub preset: Option<TwoStatePreset>,
    /// Off-diagonal energy E
    #[arg(long = "energy")]
    pub energy: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Rescale to unit norm after every step
    #[arg(long)]
    pub renormalize: bool,
    #[arg(long, value_enum, default_value_t = Rule::Euler)]
    pub rule: Rule,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    /// Momentum as px,py,pz
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,0,0")]
    pub p: Vec<f64>,
    /// Rotation axis 1, 2 or 3
    #[arg(long, default_value_t = 3)]
    pub axis: usize,
    #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
    pub epsilon: f64,
}

#[derive(Args, Debug)]
pub struct ChiralityArgs {
    /// Momentum as px,py,pz
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0,1")]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub helicity: i8,
    /// Energy branch, +1 or -1
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub branch: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Electron,
    Kaon,
    Neutrino,
}
