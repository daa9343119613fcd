use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "branchquiver",
    version,
    about = "Branching matrices, quivers, K0 data and point modules for sl/sp/so(n^inf)"
)]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, env = "BRANCHQUIVER_FORMAT", value_enum)]
    pub format: Option<Format>,

    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a branching matrix.
    Matrix(MatrixArgs),
    /// Evaluate one coefficient, e.g. `coeff lr "(2,1)" "(1)" "(1,1)"`.
    Coeff {
        /// lr, lr-multi, c-pair, d-pair, cap-c, cap-d, e, f, g, cap-e, cap-f, cap-g
        family: String,
        /// Upper label followed by the lower labels.
        #[arg(required = true, allow_hyphen_values = true)]
        labels: Vec<String>,
    },
    /// Character table of the symmetric group S_d.
    Chartable {
        d: usize,
        /// Largest accepted d.
        #[arg(long, default_value_t = branchquiver::characters::DEFAULT_CHARACTER_BOUND)]
        bound: usize,
    },
    /// Eigenvalues of a branching matrix with exact verification.
    Spectra(MatrixArgs),
    /// The quiver of a branching matrix.
    Quiver {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Emit GraphViz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check a branching matrix against Weyl dimension formulas.
    Dimcheck {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Rank parameter of the small algebra (default: twice the label size).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Unroll the quiver into a stationary Bratteli diagram.
    Bratteli {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        stages: usize,
        /// Initial block sizes, comma separated (default: all ones).
        #[arg(long, value_delimiter = ',')]
        initial: Option<Vec<u64>>,
    },
    /// Decide K0 positivity of a class, or find an order-unit witness.
    K0 {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Class to test, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vector: Vec<i64>,
        /// With a positive class y, print the least N with N*y - vector positive.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        unit: Option<Vec<i64>>,
        /// Maximal number of squared-matrix steps for non-Type-I quivers.
        #[arg(long, default_value_t = branchquiver::ktheory::DEFAULT_STAGE_CAP)]
        cap: usize,
    },
    /// Exit 0 if two point data sequences are equivalent, 1 otherwise.
    PointsEquiv { a: PathBuf, b: PathBuf },
    /// Recompute the appendix tables and compare them entry by entry.
    VerifyAppendix,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// A, B, C, D or E.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Degree for families A and B.
    #[arg(long)]
    pub d: Option<usize>,
    /// First parameter for families C, D and E.
    #[arg(long)]
    pub p: Option<usize>,
    /// Second parameter for family C.
    #[arg(long)]
    pub q: Option<usize>,
}
