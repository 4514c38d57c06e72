use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use turan_core::ForbiddenPattern;

#[derive(Parser, Debug)]
#[command(
    name = "turan-workbench",
    version,
    about = "Constructions, exact searches and structure analysis for multipartite Turán problems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (recorded in the manifest; searches run on one thread).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Node budget for every search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget: u64,
    /// Seed for randomized procedures.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the full JSON result instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the result here, with a manifest next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a lower-bound construction.
    Construct {
        #[arg(value_enum)]
        kind: ConstructionKind,
        #[command(flatten)]
        params: Nrkt,
        /// Class-1 bipartite graph; defaults to the built-in lower-bound construction.
        #[arg(long)]
        class1: Option<PathBuf>,
    },
    /// Look for a forbidden pattern in a graph file.
    CheckFree {
        graph: PathBuf,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Zarankiewicz numbers.
    Zar {
        #[command(subcommand)]
        command: ZarCommand,
    },
    /// Exact extremal numbers of k-partite hosts.
    Ex {
        #[command(subcommand)]
        command: ExCommand,
    },
    /// Structure of a near-extremal graph.
    Analyze {
        #[command(subcommand)]
        command: AnalyzeCommand,
    },
    /// Finite-difference checks on exact Zarankiewicz values.
    Gaps(GapArgs),
    /// Closed-form values.
    Formulas {
        #[command(subcommand)]
        command: FormulaCommand,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ConstructionKind {
    Basic,
    Improved,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Nrkt {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum PatternKind {
    Star,
    Biclique,
    Kqt,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PatternArgs {
    #[arg(long, value_enum)]
    pub pattern: PatternKind,
    #[arg(long)]
    pub t: usize,
    /// First side of a biclique; defaults to `t`.
    #[arg(long)]
    pub s: Option<usize>,
    /// Number of classes of `kqt`.
    #[arg(long, default_value_t = 2)]
    pub q: usize,
}

impl PatternArgs {
    pub fn pattern(&self) -> ForbiddenPattern {
        match self.pattern {
            PatternKind::Star => ForbiddenPattern::Star { t: self.t },
            PatternKind::Biclique => ForbiddenPattern::Biclique {
                s: self.s.unwrap_or(self.t),
                t: self.t,
            },
            PatternKind::Kqt => ForbiddenPattern::CompleteMultipartite { q: self.q, t: self.t },
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ZarCommand {
    /// Exact value by branch and bound.
    Exact {
        /// Part sizes, e.g. `4,5` or `2,2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        t: usize,
    },
    /// Construction-based lower bound for `z_t(n, n)`.
    Lower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    Gaps(GapArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GapArgs {
    #[arg(long)]
    pub t: usize,
    /// Largest side of the bipartite grid.
    #[arg(long)]
    pub max: usize,
    /// Multipartite differences for `2 <= a < max_parts`.
    #[arg(long, default_value_t = 3)]
    pub max_parts: usize,
    #[arg(long, default_value_t = 2)]
    pub max_part_size: usize,
}

#[derive(Subcommand, Debug)]
pub enum ExCommand {
    /// `ex(n_1, ..., n_k; F)`.
    Solve {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Compare `ex_k(n, K_{r+1})` with the Turán count.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Compare the exact value with the constructions and `g(n, r, k, t)`.
    Compare(Nrkt),
}

#[derive(Args, Debug, Clone)]
pub struct Rates {
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value = "1/1024")]
    pub gamma: Ratio<u64>,
    #[arg(long, default_value = "1/8")]
    pub epsilon: Ratio<u64>,
}

#[derive(Subcommand, Debug)]
pub enum AnalyzeCommand {
    ClosestTemplate {
        graph: PathBuf,
        #[command(flatten)]
        rates: Rates,
    },
    /// Degree audit and atypical vertices relative to a template.
    Classify {
        graph: PathBuf,
        #[command(flatten)]
        rates: Rates,
        /// Template as JSON; defaults to the standard template.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Vertices with many neighbours in every class.
    Core {
        graph: PathBuf,
        #[command(flatten)]
        rates: Rates,
        /// JSON array of class labels; defaults to the closest template.
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Class densities and class-wise pattern verdicts outside `Z`.
    Structure {
        graph: PathBuf,
        #[command(flatten)]
        rates: Rates,
        #[arg(long)]
        classes: Option<PathBuf>,
        /// Exceptional vertices.
        #[arg(long, value_delimiter = ',')]
        z: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormulaCommand {
    /// Edges of the Turán graph `T_r(k)`.
    Turan {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// `g(n, r, k, t)`; `z_t(n, n)` is computed unless given.
    G {
        #[command(flatten)]
        params: Nrkt,
        #[arg(long)]
        z: Option<u64>,
    },
}
