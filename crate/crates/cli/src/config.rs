use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "zeno",
    version,
    about = "Symbols, kernels, spectrum and flows of the truncated momentum operator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid of σ_P, σ_H and their limits, or a section at fixed x.
    Symbol(SymbolArgs),
    /// Bulk and edge kernel-limit errors and the antidiagonal tail.
    KernelLimit(CommonArgs),
    /// Eigenvalues, histogram and semicircle comparison.
    Spectrum(CommonArgs),
    /// Phase portraits of the three flows, transit speeds and reflection errors.
    Dynamics(DynamicsArgs),
    /// Run the acceptance criteria and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Comma-separated list of N.
    #[arg(long = "N-sweep", value_delimiter = ',')]
    pub n_sweep: Option<Vec<usize>>,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Resolution, `M` or `MxK`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Range `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    pub xrange: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub prange: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file. Several CSV tables go to `<stem>_<table>.<ext>` instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SymbolArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Emit the section x = X over the p range instead of the full grid.
    #[arg(long, allow_hyphen_values = true)]
    pub section: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Integration time of the phase-portrait orbits.
    #[arg(long, default_value_t = 8.0)]
    pub time: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Reduced sweeps with N ≤ 128.
    #[arg(long)]
    pub quick: bool,
    /// Run only these criteria (comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Validated parameters shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: &'static str,
    pub ns: Vec<usize>,
    pub mu: f64,
    pub grid: (usize, usize),
    pub xrange: (f64, f64),
    pub prange: (f64, f64),
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub struct Defaults {
    pub ns: &'static [usize],
    pub grid: (usize, usize),
    pub range: (f64, f64),
    pub tol: f64,
}

fn parse_range(s: &str) -> Result<(f64, f64), UsageError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("range `{s}` must be `a:b`")))?;
    let a: f64 = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range start in `{s}`")))?;
    let b: f64 = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range end in `{s}`")))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(usage(format!("range `{s}` must satisfy a < b")));
    }
    Ok((a, b))
}

fn parse_grid(s: &str) -> Result<(usize, usize), UsageError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad grid `{s}`")))
    };
    let (m, k) = match s.split_once(['x', 'X']) {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let m = parse(s)?;
            (m, m)
        }
    };
    if m < 2 || k < 2 {
        return Err(usage("grid resolution must be at least 2 per axis"));
    }
    Ok((m, k))
}

impl ExperimentConfig {
    pub fn from_args(
        command: &'static str,
        a: &CommonArgs,
        d: &Defaults,
    ) -> Result<Self, UsageError> {
        if !(a.mu.is_finite() && a.mu > 0.0) {
            return Err(usage(format!("--mu must be positive, got {}", a.mu)));
        }
        let ns = match (&a.n, &a.n_sweep) {
            (Some(_), Some(_)) => return Err(usage("give either --N or --N-sweep, not both")),
            (Some(n), None) => vec![*n],
            (None, Some(v)) if !v.is_empty() => v.clone(),
            (None, Some(_)) => return Err(usage("--N-sweep is empty")),
            (None, None) => d.ns.to_vec(),
        };
        if ns.contains(&0) {
            return Err(usage("N must be at least 1"));
        }
        let tol = a.tol.unwrap_or(d.tol);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(usage("--tol must be positive"));
        }
        Ok(Self {
            command,
            ns,
            mu: a.mu,
            grid: a
                .grid
                .as_deref()
                .map(parse_grid)
                .transpose()?
                .unwrap_or(d.grid),
            xrange: a
                .xrange
                .as_deref()
                .map(parse_range)
                .transpose()?
                .unwrap_or(d.range),
            prange: a
                .prange
                .as_deref()
                .map(parse_range)
                .transpose()?
                .unwrap_or(d.range),
            tol,
            out: a.out.clone(),
            format: a.format,
        })
    }
}
