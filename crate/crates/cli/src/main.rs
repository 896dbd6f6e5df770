use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use casimir_friction::config::{Format, RunConfig};
use casimir_friction::report::{compute, render_catalog, render_compute, render_sweep, sweep};
use casimir_friction::verification::{run_suite, OracleReport, Profile, SuiteOptions};
use casimir_friction::{Catalog, CliError, CliResult};
use clap::{Parser, Subcommand};

/// Casimir friction between two parallel half-spaces in slow relative motion.
#[derive(Debug, Parser)]
#[command(name = "casimir-friction", version)]
struct Cli {
    /// Output format (default: table, or json for verify).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Worker threads for sweeps and oracles.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Material catalog (JSON list of {name, omega_p_eV, nu_eV}); defaults to the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one configuration.
    Compute {
        #[arg(long)]
        config: PathBuf,
    },
    /// Evaluate the sweep block of a configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the oracle suite; exits non-zero if any oracle misses its budget.
    Verify {
        #[arg(long, value_enum, default_value_t = Profile::Fast)]
        profile: Profile,
        /// Seed for the Monte-Carlo and random-point oracles.
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
        /// Relative error injected into the half-space reference constant.
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb_halfspace: f64,
    },
    /// Inspect the material catalog.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
}

#[derive(Debug, Subcommand)]
enum MaterialsAction {
    /// List catalog entries.
    List,
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Output(e.to_string()))
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            context: "writing output".into(),
            source,
        })
}

fn verify_output(reports: &[OracleReport], format: Format) -> CliResult<String> {
    match format {
        Format::Json | Format::Csv => {
            let mut s = serde_json::to_string_pretty(reports).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&format!(
                    "{:<4} {:<72} rel_error {:.3e} budget {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.rel_error,
                    r.budget.map_or("none".to_string(), |b| format!("{b:.0e}"))
                ));
            }
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::builtin(),
    };
    match cli.command {
        Command::Compute { config } => {
            let cfg = RunConfig::load(&config)?;
            let format = cli.format.or(cfg.format).unwrap_or(Format::Table);
            emit(&render_compute(&compute(&cfg, &catalog)?, format)?)?;
            Ok(true)
        }
        Command::Sweep { config } => {
            let cfg = RunConfig::load(&config)?;
            let format = cli.format.or(cfg.format).unwrap_or(Format::Table);
            emit(&render_sweep(&sweep(&cfg, &catalog, cli.jobs)?, format)?)?;
            Ok(true)
        }
        Command::Verify {
            profile,
            seed,
            perturb_halfspace,
        } => {
            let opts = SuiteOptions {
                halfspace_reference_scale: 1.0 + perturb_halfspace,
                ..SuiteOptions::new(profile, seed)
            };
            let reports = pool(cli.jobs)?.install(|| run_suite(&opts))?;
            emit(&verify_output(&reports, cli.format.unwrap_or(Format::Json))?)?;
            let failed: Vec<&OracleReport> = reports.iter().filter(|r| !r.passed).collect();
            for r in &failed {
                eprintln!(
                    "FAILED {}: computed {:e}, reference {:e}, rel_error {:e}, budget {:?}; {}",
                    r.name, r.computed_value, r.reference_value, r.rel_error, r.budget, r.detail
                );
            }
            Ok(failed.is_empty())
        }
        Command::Materials {
            action: MaterialsAction::List,
        } => {
            emit(&render_catalog(&catalog, cli.format.unwrap_or(Format::Table))?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
