use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use succoef::config::read_config_file;
use succoef::{run, Command, Format, RunConfig};

/// Sharp bounds for |a2|-|a1| and |a3|-|a2| on spirallike, gamma-convex and
/// Ozaki-class functions, with numerical verification.
///
/// Exit status: 0 when every check passes, 1 when a verification fails,
/// 2 on a usage or I/O error.
#[derive(Parser)]
#[command(name = "succoef", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the closed-form intervals and their extremal functions.
    Bounds(Common),
    /// Optimize both functionals on a grid and compare with the closed form.
    Verify(Common),
    /// Run `verify` over a lattice of parameters.
    Sweep(Common),
    /// Tabulate the extremal functions' coefficients.
    Extremal(Common),
    /// Check random class members against the bounds.
    Sample(Common),
}

#[derive(Args)]
struct Common {
    /// spirallike, convex or ozaki.
    #[arg(long)]
    family: Option<String>,
    /// Order alpha in [0, 1).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Spiral angle gamma in radians; accepts forms like pi/4 or -pi/3.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Ozaki parameter lambda in (0, 1].
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Sweep values of alpha: a,b,c or start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// Sweep values of gamma.
    #[arg(long, allow_hyphen_values = true)]
    gammas: Option<String>,
    /// Sweep values of lambda.
    #[arg(long, allow_hyphen_values = true)]
    lambdas: Option<String>,
    /// Truncation order of extremal series (at least 4).
    #[arg(long)]
    order: Option<String>,
    /// Optimizer grid as C,R,T.
    #[arg(long)]
    grid: Option<String>,
    /// Residual tolerance.
    #[arg(long)]
    tol: Option<String>,
    /// Seed for `sample`.
    #[arg(long)]
    seed: Option<String>,
    /// Number of random members for `sample`.
    #[arg(long)]
    samples: Option<String>,
    /// Maximum atoms per random member.
    #[arg(long)]
    atoms: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, json or table.
    #[arg(long)]
    format: Option<String>,
    /// Flat key = value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> BTreeMap<String, String> {
        let fields = [
            ("family", &self.family),
            ("alpha", &self.alpha),
            ("gamma", &self.gamma),
            ("lambda", &self.lambda),
            ("alphas", &self.alphas),
            ("gammas", &self.gammas),
            ("lambdas", &self.lambdas),
            ("order", &self.order),
            ("grid", &self.grid),
            ("tol", &self.tol),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("atoms", &self.atoms),
            ("format", &self.format),
        ];
        let mut m: BTreeMap<String, String> =
            fields.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect();
        if let Some(p) = &self.out {
            m.insert("out".to_string(), p.display().to_string());
        }
        m
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Cmd::Bounds(c) => (Command::Bounds, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
        Cmd::Extremal(c) => (Command::Extremal, c),
        Cmd::Sample(c) => (Command::Sample, c),
    };
    let file = match &common.config {
        Some(p) => match read_config_file(p) {
            Ok(m) => m,
            Err(e) => return fail(e),
        },
        None => BTreeMap::new(),
    };
    let cfg = match RunConfig::resolve(command, &file, &common.overrides()) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };

    let t0 = Instant::now();
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let secs = t0.elapsed().as_secs_f64();

    let text = report.render(cfg.format);
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(format!("cannot write report: {e}"));
    }
    if cfg.format == Format::Table || cfg.out.is_some() {
        eprintln!("{}: {} in {secs:.2}s", cfg.command.name(), if report.passed { "passed" } else { "FAILED" });
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
