use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclocat::commands::{self, Outcome};

/// Exact computations with bigraded Taft-algebra modules and the cyclotomic K0.
///
/// Exit status: 0 if every check passed, 1 if a mathematical check failed,
/// 2 if the input was rejected.
#[derive(Parser)]
#[command(name = "cyclocat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the four-step identification of K0 with Z[q]/(Φ_nm).
    VerifyTheorem {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Inspect a module file.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Write R0(P0 X).
    R0 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that η: X → R0 P0 X is an injective module map.
    Eta {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Factor a morphism f: X → Y with Y in ker P1 through η.
    Factorize {
        /// Morphism file.
        #[arg(long)]
        f: PathBuf,
        /// Where to write g.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the 15-dimensional cyclic module lying in both kernels.
    Counterexample {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random module of the given family.
    RandomModule {
        #[arg(long, default_value = "Z2")]
        scheme: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// any, ker-p0, ker-p1, both or projective.
        #[arg(long, default_value = "any")]
        family: String,
        #[arg(long, default_value_t = 20)]
        max_dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random morphism into a module of ker P1.
    RandomFactorization {
        #[arg(long, default_value = "Z2")]
        scheme: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 15)]
        max_dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ModuleAction {
    /// Parse and validate.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Interval decomposition of d0 and of d1.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// K0 class, its normal form and its cyclotomic image.
    Class {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Membership in ker P0, ker P1 and projectivity.
    Kernels {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::VerifyTheorem { n, m, report } => commands::verify_theorem(n, m, report.as_deref()),
        Command::Module { action } => match action {
            ModuleAction::Check { input } => commands::module_check(&input),
            ModuleAction::Decompose { input } => commands::module_decompose(&input),
            ModuleAction::Class { input } => commands::module_class(&input),
            ModuleAction::Kernels { input } => commands::module_kernels(&input),
        },
        Command::R0 { input, out } => commands::r0_command(&input, &out),
        Command::Eta { input } => commands::eta_command(&input),
        Command::Factorize { f, out } => commands::factorize(&f, out.as_deref()),
        Command::Counterexample { n, m, out } => commands::counterexample(n, m, &out),
        Command::RandomModule { scheme, n, m, family, max_dim, seed, out } => {
            let s = commands::parse_scheme(&scheme, n, m)?;
            commands::random_module(&s, commands::parse_family(&family)?, max_dim, seed, &out)
        }
        Command::RandomFactorization { scheme, n, m, max_dim, seed, out } => {
            let s = commands::parse_scheme(&scheme, n, m)?;
            commands::random_factorization(&s, max_dim, seed, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
