mod commands;
mod store;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "ribbonforge", version, about = "Exact Hopf algebra verifier for Radford algebras and their Drinfeld doubles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Radford,
    Taft,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    Generators,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Largest dimension checked exhaustively
    #[arg(long, default_value_t = ribbonforge::hopf::verify::DEFAULT_FULL_BOUND)]
    full_bound: usize,
    /// Directory for JSON reports
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family, its dual and its double, and run every structural check
    Verify {
        #[arg(value_enum)]
        family: FamilyArg,
        /// `m` for radford, `n` for taft
        first: u32,
        /// `n` for radford
        second: Option<u32>,
        #[arg(long, value_enum, default_value = "generators")]
        depth: DepthArg,
        #[command(flatten)]
        common: Common,
    },
    /// Classify the quasi-ribbon and ribbon elements of D(R_mn(q))
    Ribbon {
        m: u32,
        n: u32,
        /// Run the classifier on the Taft algebra of order `n` instead (`m` is ignored)
        #[arg(long)]
        taft: bool,
        /// Skip solving for the integrals of the double
        #[arg(long)]
        skip_double_integrals: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Classify every cell of a parameter grid, persisting one report per cell
    Sweep {
        /// Inclusive range `A..B`
        #[arg(long, value_parser = parse_range)]
        m: (u32, u32),
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        #[arg(long, default_value = "ribbonforge-sweep")]
        out: PathBuf,
        /// Recompute cells that already have a valid report
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = ribbonforge::hopf::verify::DEFAULT_FULL_BOUND)]
        full_bound: usize,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").map_or((s, s), |p| p);
    let a: u32 = a.trim().parse().map_err(|e| format!("bad range start in {s:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("bad range end in {s:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn budget() -> Result<usize, String> {
    match std::env::var("RIBBONFORGE_BUDGET") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(b) if b >= 1 => Ok(b),
            _ => Err(format!("RIBBONFORGE_BUDGET must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(ribbonforge::double::DEFAULT_BUDGET),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget() {
        Ok(b) => b,
        Err(e) => return Outcome::Usage(e).exit(),
    };
    let outcome = match cli.command {
        Command::Verify { family, first, second, depth, common } => {
            let cfg = RunConfig { full_bound: common.full_bound, budget, out: common.out, format: common.format };
            commands::verify(&cfg, family, first, second, depth)
        }
        Command::Ribbon { m, n, taft, skip_double_integrals, common } => {
            let cfg = RunConfig { full_bound: common.full_bound, budget, out: common.out, format: common.format };
            let family = if taft { FamilyArg::Taft } else { FamilyArg::Radford };
            commands::ribbon(&cfg, family, m, n, !skip_double_integrals)
        }
        Command::Sweep { m, n, out, force, full_bound } => {
            let cfg = RunConfig { full_bound, budget, out: Some(out), format: Format::Text };
            commands::sweep(&cfg, m, n, force)
        }
    };
    outcome.exit()
}
