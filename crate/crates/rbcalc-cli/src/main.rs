use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod commands;
mod report;

use report::{Format, RunReport};

/// Exact verification of the Rota-Baxter minimal model, its L∞ deformation
/// complex and the cohomology of finite-dimensional Rota-Baxter algebras.
#[derive(Debug, Parser)]
#[command(name = "rbcalc", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for randomised commands; always echoed in the report.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Add the wall time to the report (which then is no longer reproducible byte for byte).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ∂∂ = 0 on the generators m_n, T_n.
    VerifyD2 {
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
    },
    /// ∂H + H∂ = Id on positive-degree tree monomials, plus the leading-term law.
    VerifyMinimal {
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
    },
    /// Prints ∂ of a generator such as m3 or T2.
    Expand { generator: String },
    /// Betti numbers of the Hochschild, operator and full complexes.
    Cohomology {
        input: PathBuf,
        /// ALG, RBO, RBA or all.
        #[arg(long, default_value = "all")]
        complex: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Overrides the weight in the file.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// The Maurer-Cartan equation for μ + T against the direct check.
    McCheck {
        input: PathBuf,
        #[arg(long)]
        lambda: Option<String>,
        /// Cone degrees for the twisted-differential comparison.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// The homotopy Rota-Baxter identities up to an arity.
    CheckHrb {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Randomised antisymmetry, Jacobi and oracle checks of the L∞ brackets.
    LinftySweep {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
}

fn run(cli: &Cli) -> RunReport {
    let seed = cli.seed;
    match &cli.command {
        Command::VerifyD2 { max_arity } => commands::verify_d2(seed, *max_arity),
        Command::VerifyMinimal { max_arity, max_weight } => commands::verify_minimal(seed, *max_arity, *max_weight),
        Command::Expand { generator } => commands::expand(seed, generator),
        Command::Cohomology { input, complex, max_degree, lambda } => {
            commands::cohomology(seed, input, complex, *max_degree, lambda.as_deref())
        }
        Command::McCheck { input, lambda, max_degree } => commands::mc_check(seed, input, lambda.as_deref(), *max_degree),
        Command::CheckHrb { input, max_arity, lambda } => commands::check_hrb(seed, input, *max_arity, lambda.as_deref()),
        Command::LinftySweep { samples, max_dim, max_arity, lambda } => {
            commands::linfty_sweep(seed, *samples, *max_dim, *max_arity, lambda.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = run(&cli);
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    print!("{}", report.render(cli.format));
    ExitCode::from(report.exit_code() as u8)
}
