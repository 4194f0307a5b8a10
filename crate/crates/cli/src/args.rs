use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Parser, Debug)]
#[command(name = "framedcb", version, about = "Canonical bases of A1/A2 quantum groups, modules and framed constructions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Built-in Cartan type (A1, A2, An); defaults to the config datum or A1
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub ty: Option<String>,
    /// TOML file with a [datum] matrix and named [weights]
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Directory for persisted Gram tables
    #[arg(long, global = true, env = crate::cache::CACHE_DIR_ENV, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache directory
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Seed for every randomized choice (cache validation entries)
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock time to the report (makes it nondeterministic)
    #[arg(long, global = true)]
    pub timings: bool,
    /// Log cache activity to stderr
    #[arg(long, short = 'v', global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan data and framing
    #[command(subcommand)]
    Datum(DatumCmd),
    /// The algebra f: dimensions, Gram tables, Serre relations
    #[command(subcommand)]
    Falg(FalgCmd),
    /// Canonical basis of f
    #[command(subcommand)]
    Cb(CbCmd),
    /// Highest-weight modules
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Tensor products of two highest-weight modules
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// The framed construction
    #[command(subcommand)]
    Framed(FramedCmd),
    /// Crystal-level checks
    #[command(subcommand)]
    Crystal(CrystalCmd),
}

#[derive(Subcommand, Debug)]
pub enum DatumCmd {
    Show,
    Frame {
        /// How many times to apply the framing
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum FalgCmd {
    /// Dimension of f_ν as the rank of its Gram matrix
    Dim {
        #[arg(long)]
        nu: String,
    },
    Gram {
        #[arg(long)]
        nu: String,
    },
    /// Serre elements pair to zero with everything, after multiplying by probes
    SerreCheck {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CbCmd {
    List {
        #[arg(long)]
        nu: String,
    },
    /// Canonical basis coordinates of a sum of words such as `i(2).j`
    Expand {
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    Weights {
        #[arg(long)]
        lambda: String,
    },
    /// Admissible form on the canonical basis of one weight space
    Form {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        nu: String,
    },
}

/// ξ and λ, either as weights or as the A1 shorthand `--m/--n`.
#[derive(Args, Debug, Clone, Default)]
pub struct PairArgs {
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum TensorCmd {
    /// The canonical basis b₁◊b₂ in pure-tensor coordinates
    Diamond {
        #[command(flatten)]
        weights: PairArgs,
    },
    /// The quasi-R-matrix applied to each pure tensor
    Theta {
        #[command(flatten)]
        weights: PairArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum FramedCmd {
    VerifyCb {
        #[command(flatten)]
        weights: PairArgs,
    },
    VerifyPositivity {
        #[command(flatten)]
        weights: PairArgs,
    },
    VerifyPairings {
        #[command(flatten)]
        weights: PairArgs,
        #[arg(long, default_value_t = 4)]
        max_depth: i64,
    },
    /// φπ of an element of the framed algebra, written in framed node names
    Phi {
        #[command(flatten)]
        weights: PairArgs,
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    EpsPhi,
    ThetaLambda,
    PiPhi,
    Reachability,
    FramedStrings,
    Adjoint,
    All,
}

#[derive(Subcommand, Debug)]
pub enum CrystalCmd {
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        weights: PairArgs,
        /// Height bound for weight-space sweeps
        #[arg(long)]
        max_tr: Option<i64>,
    },
}
