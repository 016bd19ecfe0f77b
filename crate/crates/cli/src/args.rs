use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_MAX_K: usize = 3;
pub const DEFAULT_MAX_N: usize = 6;
pub const DEFAULT_MAX_P: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "magform", version)]
#[command(about = "Exact computations with Lyndon words, Magnus expansions and Magnus formations")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Largest accepted alphabet size
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_K)]
    pub max_k: usize,

    /// Largest accepted degree bound (also bounds word lengths)
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,

    /// Largest accepted prime
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_P)]
    pub max_p: u64,

    /// Run on a single thread
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List Lyndon words in length-alphabetical order
    Lyndon {
        /// Longest word length
        #[arg(long, short = 'l', default_value_t = 3)]
        max_len: usize,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Shuffle product of two words
    Shuffle {
        u: String,
        v: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Infiltration product of two words
    Infiltrate {
        u: String,
        v: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Truncated Magnus expansion of a group word such as "x y x^-1 y^-1"
    Magnus {
        word: String,
        /// Truncation degree
        #[arg(long, short = 'd', default_value_t = 3)]
        max_deg: usize,
        /// Reduce coefficients modulo this integer
        #[arg(long, short = 'm')]
        modulus: Option<u64>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Radford polynomial Q_w
    QPoly {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Fundamental matrix of a formation
    FundamentalMatrix {
        #[command(flatten)]
        formation: FormationArgs,
    },
    /// Run one verification suite
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        formation: FormationArgs,
        #[command(flatten)]
        options: CheckOptions,
    },
    /// Run every suite that applies to a formation
    Report {
        #[command(flatten)]
        formation: FormationArgs,
        #[command(flatten)]
        options: CheckOptions,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct AlphabetArgs {
    /// Comma-separated letters in increasing order
    #[arg(long, value_delimiter = ',')]
    pub alphabet: Option<Vec<String>>,

    /// Alphabet size, for the standard alphabet a, b, c, ...
    #[arg(short = 'k', long = "letters")]
    pub k: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    LowerPCentral,
    Zassenhaus,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FormationArgs {
    /// Formation config in JSON
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Exponent map preset
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,

    /// The prime p
    #[arg(short = 'p', long = "prime")]
    pub p: Option<u64>,

    /// Degree bound n
    #[arg(short = 'n', long = "degree")]
    pub n: Option<usize>,

    /// Zassenhaus parameter t
    #[arg(short = 't', long)]
    pub t: Option<u32>,

    /// Explicit exponents j(1), ..., j(n), comma-separated
    #[arg(short = 'j', long, value_delimiter = ',')]
    pub j: Option<Vec<u32>>,

    /// Explicit word set L, comma-separated (default: all Lyndon words with
    /// lengths in I_e)
    #[arg(long, value_delimiter = ',')]
    pub words: Option<Vec<String>>,

    #[command(flatten)]
    pub alphabet: AlphabetArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CheckOptions {
    /// Number of random samples (group words or conjugators)
    #[arg(long)]
    pub samples: Option<usize>,

    /// Longest word length to sweep
    #[arg(long)]
    pub max_len: Option<usize>,

    /// Largest degree to sweep
    #[arg(long)]
    pub max_deg: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Binomial,
    Cfl,
    Triangularity,
    FundamentalMatrix,
    LcsPower,
    Image,
    ShuffleRelations,
    Radford,
    Indec,
    Isomorphism,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Binomial,
        Suite::Cfl,
        Suite::Triangularity,
        Suite::FundamentalMatrix,
        Suite::LcsPower,
        Suite::Image,
        Suite::ShuffleRelations,
        Suite::Radford,
        Suite::Indec,
        Suite::Isomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Binomial => "binomial",
            Suite::Cfl => "cfl",
            Suite::Triangularity => "triangularity",
            Suite::FundamentalMatrix => "fundamental-matrix",
            Suite::LcsPower => "lcs-power",
            Suite::Image => "image",
            Suite::ShuffleRelations => "shuffle-relations",
            Suite::Radford => "radford",
            Suite::Indec => "indec",
            Suite::Isomorphism => "isomorphism",
        }
    }

    pub fn needs_formation(self) -> bool {
        matches!(
            self,
            Suite::FundamentalMatrix | Suite::Image | Suite::ShuffleRelations | Suite::Isomorphism
        )
    }
}
