use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use finsler_core::calculus::Scheme;
use finsler_core::interface::{exit_code, run, Command, Format, Report, RunConfig};
use finsler_core::Result;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Tensors,
    CheckParallel,
    Scan,
    Sphsym,
    ScalarCurvature,
    Invariants,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Tensors => Command::Tensors,
            Cmd::CheckParallel => Command::CheckParallel,
            Cmd::Scan => Command::Scan,
            Cmd::Sphsym => Command::Sphsym,
            Cmd::ScalarCurvature => Command::ScalarCurvature,
            Cmd::Invariants => Command::Invariants,
        }
    }
}

/// Numerical checks on Finsler metrics, sprays and 1-forms.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 configuration or
/// parse error, 3 numeric domain error.
#[derive(Debug, Parser)]
#[command(name = "finsler", version)]
struct Cli {
    command: Cmd,
    /// TOML configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalogue metric: euclidean, klein, example1, berwald_classic, general_berwald.
    #[arg(long)]
    metric: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// Parameter vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    /// Spherically symmetric profile φ(r, s).
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// 1-form coefficients in x1..xn, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    form: Option<Vec<String>>,
    /// Radial factor f(r) of β = f(r)⟨x,y⟩.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// P(r, s) for the parallel-form construction.
    #[arg(long = "P", allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    scheme: Option<String>,
    /// Directory for report.json and sweep.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Format printed on stdout: json or csv.
    #[arg(long)]
    format: Option<String>,
}

impl Cli {
    fn config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::from_path(p)?,
            None => RunConfig::default(),
        };
        if let Some(m) = &self.metric {
            c.metric = Some(m.clone());
            c.phi = None;
        }
        if let Some(p) = &self.phi {
            c.phi = Some(p.clone());
            if self.metric.is_none() {
                c.metric = None;
            }
        }
        if let Some(v) = self.dim {
            c.dim = v;
        }
        if let Some(v) = &self.a {
            c.a = Some(v.clone());
        }
        if let Some(v) = &self.form {
            c.check_parallel.form = Some(v.clone());
        }
        if let Some(v) = &self.f {
            c.sphsym.f = Some(v.clone());
        }
        if let Some(v) = &self.p {
            c.sphsym.p = Some(v.clone());
        }
        if let Some(v) = self.samples {
            c.samples = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.radius {
            c.radius = Some(v);
        }
        if let Some(v) = self.tol {
            c.tol = Some(v);
        }
        if let Some(v) = &self.scheme {
            c.scheme = v.parse::<Scheme>()?;
        }
        if let Some(v) = self.threads {
            c.threads = v;
        }
        if let Some(v) = &self.format {
            c.format = v.parse::<Format>()?;
        }
        Ok(c)
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let cfg = cli.config()?;
    let report = run(cli.command.into(), &cfg)?;
    if let Some(dir) = &cli.out {
        report.write_files(dir)?;
    }
    let text = match cfg.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    print!("{text}");
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) if report.passed() => ExitCode::SUCCESS,
        Ok(report) => {
            for r in report.records.iter().filter(|r| !r.pass) {
                eprintln!("FAIL {}: {:e} > {:e}", r.name, r.max_residual, r.tolerance);
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
