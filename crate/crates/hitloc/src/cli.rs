//! Command-line front end: evaluation, sampling, entropy sweeps, capacity
//! tables, offset curves, and the validation suite, emitting CSV or JSON for
//! plotting.
//!
//! Exit codes: 0 on success, 1 when a validation gate fails, 2 on flag
//! errors (including parameter values outside their domain).

use crate::capacity;
use crate::entropy;
use crate::error::{domain, Result};
use crate::ndfhl::NdfhlParams;
use crate::validation::{self, SuiteConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "hitloc",
    version,
    about = "Boundary-hitting noise: densities, sampling, entropy sweeps, capacity bounds, validation gates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the noise density at a point (u = 0 uses the Cauchy branch)
    Pdf(PdfArgs),
    /// Evaluate the characteristic function
    Cf(CfArgs),
    /// Draw noise samples to CSV with a JSON metadata sidecar
    Sample(SampleArgs),
    /// Differential entropy over a drift grid, with a trailing u = 0 row per dimension
    EntropySweep(EntropySweepArgs),
    /// Capacity bounds over power values
    Capacity(CapacityArgs),
    /// Asymptotic capacity offset over a drift grid, down to the u = 0 endpoint
    OffsetCurve(OffsetCurveArgs),
    /// Run the statistical validation suite; exits nonzero on any failed gate
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PdfArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub u: f64,
    /// Point in R^{d-1}, comma-separated; defaults to the origin
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub u: f64,
    /// Frequency norm |omega|
    #[arg(long, conflicts_with = "omega")]
    pub omega_norm: Option<f64>,
    /// Frequency vector, comma-separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub u: f64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// CSV destination; the metadata sidecar lands next to it as .json
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EntropySweepArgs {
    /// Ambient dimensions, comma-separated
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub d: Vec<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Drift grid: log:lo:hi:n or lin:lo:hi:n
    #[arg(long, value_parser = parse_grid, default_value = "log:1e-3:1e2:25")]
    pub u_grid: Grid,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub u: f64,
    /// Single power point
    #[arg(long, conflicts_with = "power_grid")]
    pub power: Option<f64>,
    /// Power grid: log:lo:hi:n or lin:lo:hi:n
    #[arg(long, value_parser = parse_grid)]
    pub power_grid: Option<Grid>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Monte-Carlo budget for the lower-bound cross-check (0 disables)
    #[arg(long, default_value_t = 0)]
    pub mc_budget: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OffsetCurveArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, value_parser = parse_grid, default_value = "log:1e-3:1e2:25")]
    pub u_grid: Grid,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Draws per Monte-Carlo gate
    #[arg(long, default_value_t = 1_000_000)]
    pub count: usize,
    #[arg(long, default_value_t = 50_000)]
    pub sde_paths: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub sde_dt: f64,
    /// Also run the deliberately mismatched gates, which must fail
    #[arg(long)]
    pub include_negative_controls: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A parsed point grid (wrapped so clap treats it as one argument value).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `log:lo:hi:n` (geometric) or `lin:lo:hi:n` (arithmetic), endpoints
/// included.
pub fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("expected kind:lo:hi:n, got '{s}'"));
    }
    let lo: f64 = parts[1].parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi: f64 = parts[2].parse().map_err(|e| format!("bad hi: {e}"))?;
    let n: usize = parts[3].parse().map_err(|e| format!("bad n: {e}"))?;
    if n == 0 {
        return Err("grid needs at least one point".to_string());
    }
    match parts[0] {
        "log" => {
            if lo <= 0.0 || hi <= 0.0 {
                return Err("log grid endpoints must be positive".to_string());
            }
            if n == 1 {
                return Ok(Grid(vec![lo]));
            }
            let ratio = hi / lo;
            Ok(Grid(
                (0..n)
                    .map(|i| lo * ratio.powf(i as f64 / (n - 1) as f64))
                    .collect(),
            ))
        }
        "lin" => {
            if n == 1 {
                return Ok(Grid(vec![lo]));
            }
            let step = (hi - lo) / (n - 1) as f64;
            Ok(Grid((0..n).map(|i| lo + step * i as f64).collect()))
        }
        kind => Err(format!("unknown grid kind '{kind}' (use log or lin)")),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

/// Executes a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Pdf(args) => {
            let params = NdfhlParams::new(args.d, args.lambda, args.u)?;
            let x = args.x.unwrap_or_else(|| vec![0.0; params.p() as usize]);
            println!("{}", crate::fmt17(params.pdf_dispatch(&x)?));
            Ok(0)
        }
        Command::Cf(args) => {
            let params = NdfhlParams::new(args.d, args.lambda, args.u)?;
            let value = match (args.omega_norm, args.omega) {
                (Some(w), None) => {
                    if !(w.is_finite() && w >= 0.0) {
                        return Err(domain(format!("omega norm must be >= 0, got {w}")));
                    }
                    params.cf_at_radius(w)
                }
                (None, Some(omega)) => params.cf(&omega)?,
                (None, None) => params.cf_at_radius(0.0),
                (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
            };
            println!("{}", crate::fmt17(value));
            Ok(0)
        }
        Command::Sample(args) => {
            let params = NdfhlParams::new(args.d, args.lambda, args.u)?;
            let batch = params.sample(args.count, args.seed)?;
            let mut csv = BufWriter::new(File::create(&args.output)?);
            batch.write_csv(&mut csv)?;
            csv.flush()?;
            let sidecar = args.output.with_extension("json");
            let mut meta = BufWriter::new(File::create(&sidecar)?);
            batch.write_metadata(&mut meta)?;
            meta.flush()?;
            Ok(0)
        }
        Command::EntropySweep(args) => {
            let rows = entropy::entropy_sweep(&args.d, args.lambda, &args.u_grid.0, args.tol)?;
            let mut out = open_output(args.output.as_deref())?;
            match args.format {
                Format::Csv => entropy::write_sweep_csv(&rows, &mut out)?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
            }
            out.flush()?;
            Ok(0)
        }
        Command::Capacity(args) => {
            let params = NdfhlParams::new(args.d, args.lambda, args.u)?;
            let powers = match (args.power, args.power_grid) {
                (Some(p), None) => vec![p],
                (None, Some(grid)) => grid.0,
                (None, None) => return Err(domain("provide --power or --power-grid")),
                (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
            };
            let mut reports = Vec::with_capacity(powers.len());
            for power in powers {
                reports.push(capacity::report(
                    &params,
                    power,
                    args.tol,
                    args.mc_budget,
                    args.seed,
                )?);
            }
            let mut out = open_output(args.output.as_deref())?;
            match args.format {
                Format::Csv => capacity::write_reports_csv(&reports, &mut out)?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&capacity::reports_to_json(&reports))?
                )?,
            }
            out.flush()?;
            Ok(0)
        }
        Command::OffsetCurve(args) => {
            let curve = capacity::offset_curve(args.d, args.lambda, &args.u_grid.0, args.tol)?;
            let mut out = open_output(args.output.as_deref())?;
            match args.format {
                Format::Csv => {
                    writeln!(out, "d,lambda,u,offset")?;
                    for (u, l) in &curve {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            args.d,
                            crate::fmt17(args.lambda),
                            crate::fmt17(*u),
                            crate::fmt17(*l)
                        )?;
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = curve
                        .iter()
                        .map(|(u, l)| {
                            serde_json::json!({"d": args.d, "lambda": args.lambda, "u": u, "offset": l})
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
                }
            }
            out.flush()?;
            Ok(0)
        }
        Command::Validate(args) => {
            let cfg = SuiteConfig {
                seed: args.seed,
                count: args.count,
                sde_paths: args.sde_paths,
                sde_dt: args.sde_dt,
                include_negative_controls: args.include_negative_controls,
            };
            let reports = validation::run_suite(&cfg)?;
            let mut out = open_output(args.output.as_deref())?;
            validation::write_reports_json_lines(&reports, &mut out)?;
            out.flush()?;
            let violations = reports.iter().filter(|r| r.violated()).count();
            if violations > 0 {
                eprintln!("{violations} validation gate(s) violated");
                Ok(1)
            } else {
                Ok(0)
            }
        }
    }
}
