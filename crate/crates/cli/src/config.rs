use crate::error::{usage, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;

pub const DEFAULT_T_MAX: f64 = 5000.0;
pub const DEFAULT_X_MAX: u64 = 10_000_000;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser, Debug, Clone)]
#[command(name = "primezero", version, about = "Zeros of zeta, prime gaps and the statistics that connect them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for the randomised probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, env = "PRIMEZERO_CACHE_DIR", default_value = ".primezero-cache")]
    pub cache_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Compute (or extend) the zero cache and list the zeros up to --t-max.
    Zeros(ZerosArgs),
    /// Sieve up to --x-max, refresh the prime cache and list p, gap.
    Primes(PrimesArgs),
    /// Normalised spacings of the cached zeros.
    Spacings(ZerosArgs),
    /// Binned pair correlation of the cached zeros against the GUE kernel.
    Paircorr(PairArgs),
    /// Index-matched prime/zero transfer sweep.
    Duality(DualityArgs),
    /// Primes in a progression, L-function zeros and gap statistics mod q.
    Dirichlet(DirichletArgs),
    /// Prime-gap Poisson law or the Cauchy random walk on the critical line.
    Probe(ProbeArgs),
    /// Consolidated JSON report over both caches.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PrimesArgs {
    #[arg(long, default_value_t = DEFAULT_X_MAX, value_parser = parse_count)]
    pub x_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    /// ln T / 2π for every pair.
    Logt,
    /// Local density at the lower zero.
    Unfolded,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PairArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub zeros: ZerosArgs,
    #[arg(long, default_value_t = 12)]
    pub bins: usize,
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 3.0)]
    pub hi: f64,
    #[arg(long, value_enum, default_value_t = Scaling::Logt)]
    pub scaling: Scaling,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DualityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub zeros: ZerosArgs,
    #[arg(long, default_value_t = DEFAULT_X_MAX, value_parser = parse_count)]
    pub x_max: u64,
    #[arg(long, default_value_t = 100)]
    pub n_lo: u64,
    /// Last index of the sweep; all available when absent.
    #[arg(long)]
    pub n_hi: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub k: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirichletTable {
    /// q,a,n,prime,gap
    Primes,
    /// q,chi_index,n,gamma for every primitive character mod q.
    Zeros,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DirichletArgs {
    #[arg(long, default_value_t = 4)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = parse_count)]
    pub x_max: u64,
    /// Height for the L-function zeros.
    #[arg(long, default_value_t = 100.0)]
    pub l_t_max: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 3)]
    pub v_max: usize,
    #[arg(long, value_enum, default_value_t = DirichletTable::Primes)]
    pub table: DirichletTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeKind {
    /// Empirical CDF of dₙ / ln pₙ against 1 − e^{−t}.
    Poisson,
    /// Partial sums of Re ζ(1/2 + it) at Cauchy-distributed heights.
    Cauchy,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ProbeArgs {
    #[arg(long, value_enum, default_value_t = ProbeKind::Poisson)]
    pub kind: ProbeKind,
    #[arg(long, default_value_t = DEFAULT_X_MAX, value_parser = parse_count)]
    pub x_max: u64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0])]
    pub t_grid: Vec<f64>,
    /// Number of Cauchy samples.
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    /// Cauchy scale.
    #[arg(long, default_value_t = 2.5)]
    pub b: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ReportArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub zeros: ZerosArgs,
    #[arg(long, default_value_t = DEFAULT_X_MAX, value_parser = parse_count)]
    pub x_max: u64,
    #[arg(long, default_value_t = 12)]
    pub bins: usize,
}

/// Accepts plain integers and `1e7`-style values.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64 {
        Ok(f as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

/// Everything that determines the output bytes; worker count, output path
/// and cache location are deliberately absent.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        RunConfig { command: cli.command.clone(), seed: cli.global.seed, format: cli.global.format }
    }

    pub fn name(&self) -> &'static str {
        match self.command {
            Command::Zeros(_) => "zeros",
            Command::Primes(_) => "primes",
            Command::Spacings(_) => "spacings",
            Command::Paircorr(_) => "paircorr",
            Command::Duality(_) => "duality",
            Command::Dirichlet(_) => "dirichlet",
            Command::Probe(_) => "probe",
            Command::Report(_) => "report",
        }
    }

    /// Canonical JSON, keys sorted.
    pub fn canonical(&self) -> String {
        let v = serde_json::to_value(self).expect("config serialises");
        serde_json::to_string(&v).expect("value serialises")
    }

    /// First 16 hex digits of SHA-256 over the canonical JSON.
    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.canonical().as_bytes());
        hex::encode(&d[..8])
    }

    pub fn validate(&self) -> Result<()> {
        match &self.command {
            Command::Zeros(z) | Command::Spacings(z) => check_zeros(z),
            Command::Primes(p) => check_x(p.x_max),
            Command::Paircorr(p) => {
                check_zeros(&p.zeros)?;
                if p.bins == 0 {
                    return Err(usage("--bins", "need at least one bin"));
                }
                if !(p.lo.is_finite() && p.hi.is_finite() && p.lo >= 0.0 && p.lo < p.hi) {
                    return Err(usage("--lo/--hi", format!("need 0 <= lo < hi, got [{}, {}]", p.lo, p.hi)));
                }
                Ok(())
            }
            Command::Duality(d) => {
                check_zeros(&d.zeros)?;
                check_x(d.x_max)?;
                if d.n_lo < 2 {
                    return Err(usage("--n-lo", "need n >= 2"));
                }
                if d.n_hi.is_some_and(|h| h < d.n_lo) {
                    return Err(usage("--n-hi", "must be at least --n-lo"));
                }
                Ok(())
            }
            Command::Dirichlet(d) => {
                check_x(d.x_max)?;
                check_tol(d.tol)?;
                if !(3..=100).contains(&d.q) {
                    return Err(usage("--q", format!("need 3 <= q <= 100, got {}", d.q)));
                }
                if d.table == DirichletTable::Zeros && d.q > 11 {
                    return Err(usage("--q", format!("L-function zeros need q <= 11, got {}", d.q)));
                }
                if !(d.l_t_max > 0.0 && d.l_t_max <= 1000.0) {
                    return Err(usage("--l-t-max", format!("need 0 < height <= 1000, got {}", d.l_t_max)));
                }
                if !(1..=3).contains(&d.v_max) {
                    return Err(usage("--v-max", format!("need 1 <= v <= 3, got {}", d.v_max)));
                }
                Ok(())
            }
            Command::Probe(p) => {
                check_x(p.x_max)?;
                if p.t_grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
                    return Err(usage("--t-grid", "values must be finite and non-negative"));
                }
                if !(p.b.is_finite() && p.b > 0.0) {
                    return Err(usage("--b", "scale must be positive"));
                }
                Ok(())
            }
            Command::Report(r) => {
                check_zeros(&r.zeros)?;
                check_x(r.x_max)?;
                if r.bins == 0 {
                    return Err(usage("--bins", "need at least one bin"));
                }
                Ok(())
            }
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && (1e-13..=1e-3).contains(&tol)) {
        return Err(usage("--tol", format!("need 1e-13 <= tol <= 1e-3, got {tol}")));
    }
    Ok(())
}

fn check_zeros(z: &ZerosArgs) -> Result<()> {
    check_tol(z.tol)?;
    if !(z.t_max.is_finite() && z.t_max > 0.0 && z.t_max <= primezero::zeta::MAX_HEIGHT) {
        return Err(usage("--t-max", format!("need 0 < t <= {:e}, got {}", primezero::zeta::MAX_HEIGHT, z.t_max)));
    }
    Ok(())
}

fn check_x(x: u64) -> Result<()> {
    if !(10..=primezero::primes::SIEVE_CEILING).contains(&x) {
        return Err(usage("--x-max", format!("need 10 <= x <= {}, got {x}", primezero::primes::SIEVE_CEILING)));
    }
    Ok(())
}
