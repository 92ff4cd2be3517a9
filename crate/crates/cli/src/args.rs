use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isotropic_core::{EnumerationBudget, Strategy};

use crate::cache::{self, Cache};
use crate::failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "isocount", version, about = "Count and enumerate maximal isotropic subgroups of K(d1,...,dg)")]
pub struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count maximal isotropic subgroups, or curves in a class.
    Count(CountArgs),
    /// Regenerate reference tables side by side with published values.
    Table(TableArgs),
    /// Run the cross-check suites.
    Verify(VerifyArgs),
    /// Write every maximal isotropic subgroup of K(d) to a file.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Closed,
    Enumerate,
}

impl From<MethodArg> for Strategy {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Strategy::Auto,
            MethodArg::Closed => Strategy::Closed,
            MethodArg::Enumerate => Strategy::Enumerate,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Stop after this many enumeration candidates.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub max_candidates: u64,
    /// Stop after this many seconds of enumeration.
    #[arg(long, default_value_t = 600.0)]
    pub max_seconds: f64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Result<EnumerationBudget, Failure> {
        EnumerationBudget::new(self.max_candidates, self.max_seconds)
            .map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CacheArgs {
    /// Read and append ν values in the on-disk cache.
    #[arg(long)]
    pub cache: bool,
    /// Cache directory (implies --cache).
    #[arg(long, env = cache::CACHE_DIR_ENV, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
}

impl CacheArgs {
    pub fn open(&self) -> Result<Option<Cache>, Failure> {
        if !self.cache && self.cache_dir.is_none() {
            return Ok(None);
        }
        let dir = self.cache_dir.clone().unwrap_or_else(cache::default_dir);
        let cache = Cache::open(&dir)?;
        if cache.rejected > 0 {
            eprintln!(
                "warning: ignored {} corrupt cache entr{} in {}; affected values are recomputed",
                cache.rejected,
                if cache.rejected == 1 { "y" } else { "ies" },
                cache.path().display()
            );
        }
        Ok(Some(cache))
    }
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    /// Divisor chain, e.g. 1,2,4.
    #[arg(long = "type", value_name = "D1,D2,...")]
    pub ptype: String,
    /// Count translation classes of curves in the class r * c1(L)^(g-1), with r given as num/den.
    #[arg(long, value_name = "NUM/DEN", conflicts_with_all = ["minimal", "linear_system"])]
    pub r: Option<String>,
    /// Count translation classes of curves in the minimal class.
    #[arg(long, conflicts_with = "linear_system")]
    pub minimal: bool,
    /// Count genus-2 curves in the linear system |L| (g = 2).
    #[arg(long)]
    pub linear_system: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TablePreset {
    /// The 36 published ν(d1,d2) cells.
    #[value(name = "section4")]
    Published,
    /// Per-type counts of K(p^n, p^n): formula against census.
    #[value(name = "prop44")]
    PerType,
    /// ν(1,d), ν(d,d) and ν(d1,d2) for all d1 | d2 <= --max-d.
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub preset: TablePreset,
    #[arg(long, required_if_eq("preset", "prop44"))]
    pub p: Option<u64>,
    #[arg(long, required_if_eq("preset", "prop44"))]
    pub n: Option<u32>,
    #[arg(long, required_if_eq("preset", "custom"))]
    pub max_d: Option<u64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Perturb the type-3 per-type count formula by one.
    Type3Formula,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long = "type", value_name = "D1,D2,...")]
    pub ptype: String,
    #[arg(long, value_enum, default_value_t = Emit::Jsonl)]
    pub emit: Emit,
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}
