#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;
mod pathria;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use config::{Format, RunConfig};
use output::{write_report, Provenance};

#[derive(Parser, Debug)]
#[command(name = "bogotherm", version, about = "Heat-kernel, free-gas and Bogoliubov finite-volume checks")]
struct Cli {
    /// TOML configuration file; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit the timestamp so identical configs give byte-identical files.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Worker threads for the sweep and grid evaluations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Suppress the summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Identity residuals, duality, the Dirichlet trace inequality and golden values.
    Verify,
    /// Convergence sweeps on scaled cubes with envelope dominance checks.
    Sweep,
    /// Free-gas condensate decomposition on an (L/λ, density) grid.
    Pathria,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Pathria => "pathria",
        }
    }
}

enum Failure {
    Usage(anyhow::Error),
    Check,
    Runtime(anyhow::Error),
}

fn usage<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn runtime<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Runtime)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = usage(RunConfig::load(cli.config.as_deref()))?;
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Failure::Usage(anyhow::anyhow!("--jobs must be at least 1")));
        }
        usage(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .context("configuring the worker pool"),
        )?;
    }
    let timestamp = (!cli.no_timestamp)
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let prov = Provenance {
        command: cli.command.name(),
        config: &cfg,
        timestamp,
    };
    let say = |msg: String| {
        if !cli.quiet {
            println!("{msg}");
        }
    };

    match cli.command {
        Command::Verify => {
            usage(cfg.verify.validate())?;
            let report = match verify::run(&cfg.verify) {
                Ok(r) => r,
                Err(e) => return Err(Failure::Usage(e)),
            };
            let path = runtime(write_report(&cfg.out, "verify", cfg.format, &prov, &report.table(), &report))?;
            for r in &report.rows {
                say(format!(
                    "{} {}/{}: {:.3e} (tol {:.1e})",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.item,
                    r.value,
                    r.tolerance
                ));
            }
            say(format!("report written to {}", path.display()));
            if !report.passed {
                for r in report.failures() {
                    eprintln!("failed: {}/{}: {:.3e} > {:.1e} {}", r.check, r.item, r.value, r.tolerance, r.detail);
                }
                return Err(Failure::Check);
            }
        }
        Command::Sweep => {
            let etas = usage(cfg.sweep.validate())?;
            let reports = runtime(sweep::run(&cfg.sweep, &etas))?;
            let mut failed = false;
            for r in &reports {
                let path = runtime(write_report(
                    &cfg.out,
                    &sweep::file_stem(r),
                    cfg.format,
                    &prov,
                    &sweep::table(r),
                    r,
                ))?;
                say(format!(
                    "{} {} eta {}: exponent {:.4} (r2 {:.4}), {} violations -> {}",
                    if r.dominance_holds() { "PASS" } else { "FAIL" },
                    r.quantity.name(),
                    r.eta,
                    r.fitted_exponent,
                    r.fit_r2,
                    r.violations.len(),
                    path.display()
                ));
                for line in sweep::violation_lines(r) {
                    eprintln!("violation: {line}");
                    failed = true;
                }
            }
            if failed {
                return Err(Failure::Check);
            }
        }
        Command::Pathria => {
            usage(cfg.pathria.validate())?;
            let report = runtime(pathria::run(&cfg.pathria))?;
            let path = runtime(write_report(&cfg.out, "pathria", cfg.format, &prov, &report.table(), &report))?;
            for r in &report.rows {
                say(format!(
                    "L/lambda {:>6} ratio {:>4}: mu_beta {:.6e} N0/N {:.4} c {:.4}{}",
                    r.l_over_lambda,
                    r.density_ratio,
                    r.mu_beta,
                    r.condensate_fraction,
                    r.c_estimate,
                    if r.condensed { "" } else { "  [not condensed]" }
                ));
            }
            say(format!("max duality {:.2e}; report written to {}", report.max_duality, path.display()));
            if !report.passed() {
                eprintln!(
                    "failed: direct and Poisson particle numbers differ by {:.3e} > {:.1e}",
                    report.max_duality, report.duality_tolerance
                );
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
