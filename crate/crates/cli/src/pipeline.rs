use crate::config::*;
use crate::error::{CliError, Result};
use crate::output::{json_document, num, Csv, PRIME_CACHE_VERSION};
use primezero::cache::{write_atomic, ZeroCache};
use primezero::dirichlet::{self as dl, DirichletCharacter};
use primezero::duality;
use primezero::primes::{self, PrimeGapRecord};
use primezero::spacing::{self, PairScaling};
use primezero::zeros::{verify_count, ZeroVerification};
use primezero::ZetaZero;
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

pub fn zero_cache_path(dir: &Path) -> PathBuf {
    dir.join("zeros.zc")
}

pub fn prime_cache_path(dir: &Path) -> PathBuf {
    dir.join("primes.pc")
}

fn load_zero_cache(dir: &Path, tol: f64) -> Result<Option<ZeroCache>> {
    let path = zero_cache_path(dir);
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(ZeroCache::load(&path, tol)?))
}

/// Cached zeros up to `t_max`, or `None` when the cache does not reach it.
pub fn cached_zeros(dir: &Path, tol: f64, t_max: f64) -> Result<Option<Vec<ZetaZero>>> {
    Ok(load_zero_cache(dir, tol)?.filter(|c| c.t_max >= t_max).map(|c| c.below(t_max).to_vec()))
}

fn require_zeros(dir: &Path, tol: f64, t_max: f64) -> Result<Vec<ZetaZero>> {
    cached_zeros(dir, tol, t_max)?.ok_or_else(|| CliError::MissingPrerequisite(vec!["zeros".into()]))
}

/// The prime cache records the sieve ceiling and π at that ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCache {
    pub x_max: u64,
    pub pi_x: u64,
}

impl PrimeCache {
    pub fn to_text(&self) -> String {
        format!("{PRIME_CACHE_VERSION} x_max={}\npi_x={}\n", self.x_max, self.pi_x)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().unwrap_or("").trim();
        let bad = |what: &str| CliError::Core(primezero::Error::Cache(format!("prime cache: {what}")));
        let Some(x) = head.strip_prefix(PRIME_CACHE_VERSION).and_then(|r| r.trim().strip_prefix("x_max=")) else {
            return Err(CliError::Core(primezero::Error::CacheVersion {
                found: head.to_string(),
                expected: format!("{PRIME_CACHE_VERSION} x_max=<n>"),
            }));
        };
        let x_max = x.trim().parse().map_err(|_| bad("bad x_max"))?;
        let pi_x = lines
            .next()
            .and_then(|l| l.trim().strip_prefix("pi_x="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing pi_x"))?;
        Ok(PrimeCache { x_max, pi_x })
    }
}

fn load_prime_cache(dir: &Path) -> Result<Option<PrimeCache>> {
    let path = prime_cache_path(dir);
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(PrimeCache::parse(&fs::read_to_string(path)?)?))
}

/// Primes up to `x_max`, provided the prime cache covers it. The sieve is
/// rerun and, at the cached ceiling, checked against the stored count.
pub fn cached_primes(dir: &Path, x_max: u64) -> Result<Option<Vec<u64>>> {
    let Some(c) = load_prime_cache(dir)? else { return Ok(None) };
    if c.x_max < x_max {
        return Ok(None);
    }
    let ps = primes::primes_up_to(x_max)?;
    if x_max == c.x_max && ps.len() as u64 != c.pi_x {
        return Err(CliError::Core(primezero::Error::Cache(format!(
            "prime cache says pi({}) = {}, the sieve finds {}",
            c.x_max,
            c.pi_x,
            ps.len()
        ))));
    }
    Ok(Some(ps))
}

/// Render the command described by `cfg`; caches are read from and written to `dir`.
pub fn execute(cfg: &RunConfig, dir: &Path) -> Result<String> {
    match &cfg.command {
        Command::Zeros(a) => zeros(cfg, a, dir),
        Command::Primes(a) => primes_cmd(cfg, a, dir),
        Command::Spacings(a) => spacings(cfg, a, dir),
        Command::Paircorr(a) => paircorr(cfg, a, dir),
        Command::Duality(a) => duality_cmd(cfg, a, dir),
        Command::Dirichlet(a) => dirichlet(cfg, a),
        Command::Probe(a) => probe(cfg, a),
        Command::Report(a) => crate::report::report(cfg, a, dir),
    }
}

#[derive(Serialize)]
struct ZerosDoc<'a> {
    verification: ZeroVerification,
    zeros: &'a [ZetaZero],
}

fn zeros(cfg: &RunConfig, a: &ZerosArgs, dir: &Path) -> Result<String> {
    let mut cache = load_zero_cache(dir, a.tol)?.unwrap_or_else(|| ZeroCache::new(a.tol));
    if cache.t_max < a.t_max {
        let flagged = cache.extend_to(a.t_max)?;
        if !flagged.is_empty() {
            let where_: Vec<String> = flagged.iter().map(|b| format!("[{}, {}]", b.start, b.end)).collect();
            return Err(CliError::Verification(format!(
                "{} Gram blocks are short of sign changes: {}",
                flagged.len(),
                where_.join(" ")
            )));
        }
        let v = verify_count(cache.below(a.t_max), a.t_max);
        if !v.complete {
            return Err(CliError::Verification(format!(
                "Turing check failed at T = {}: found {}, expected {:.3}, window mean {:.3}",
                a.t_max, v.zeros_found, v.count_expected, v.s_mean
            )));
        }
        // Report what a later run will read back from disk.
        let text = cache.to_text();
        cache = ZeroCache::parse(&text, a.tol)?;
        write_atomic(&zero_cache_path(dir), text.as_bytes())?;
    }
    let list = cache.below(a.t_max);
    let v = verify_count(list, a.t_max);
    if !v.complete {
        return Err(CliError::Verification(format!(
            "Turing check failed at T = {}: found {}, expected {:.3}",
            a.t_max, v.zeros_found, v.count_expected
        )));
    }
    match cfg.format {
        Format::Json => json_document(cfg, &ZerosDoc { verification: v, zeros: list }),
        Format::Csv => {
            let mut csv = Csv::new(cfg, &["n", "gamma", "uncertainty"]);
            for z in list {
                csv.row(&[z.index.to_string(), num(z.gamma), num(z.uncertainty)]);
            }
            Ok(csv.finish())
        }
    }
}

#[derive(Serialize)]
struct PrimesDoc {
    x: u64,
    pi_x: u64,
    avg_gap: f64,
    max_gap_p: u64,
    max_gap: u64,
    cramer_stat: f64,
    cramer_reference: (f64, f64),
    records: Vec<PrimeGapRecord>,
    large_gap_constant: Option<f64>,
}

fn primes_cmd(cfg: &RunConfig, a: &PrimesArgs, dir: &Path) -> Result<String> {
    let ps = primes::primes_up_to(a.x_max)?;
    let keep = load_prime_cache(dir).ok().flatten().filter(|c| c.x_max > a.x_max);
    if keep.is_none() {
        let c = PrimeCache { x_max: a.x_max, pi_x: ps.len() as u64 };
        write_atomic(&prime_cache_path(dir), c.to_text().as_bytes())?;
    }
    match cfg.format {
        Format::Json => {
            let s = primes::gap_summary(a.x_max)?;
            let records = primes::gap_records(a.x_max)?;
            let large_gap_constant = primes::fit_large_gap_constant(&records);
            json_document(
                cfg,
                &PrimesDoc {
                    x: s.x,
                    pi_x: s.pi_x,
                    avg_gap: s.avg_gap,
                    max_gap_p: s.max_record.p,
                    max_gap: s.max_record.gap,
                    cramer_stat: s.cramer_stat,
                    cramer_reference: s.cramer_reference,
                    records,
                    large_gap_constant,
                },
            )
        }
        Format::Csv => {
            let mut csv = Csv::new(cfg, &["p", "gap"]);
            for (i, &p) in ps.iter().enumerate() {
                let gap = ps.get(i + 1).map_or(String::new(), |q| (q - p).to_string());
                csv.row(&[p.to_string(), gap]);
            }
            Ok(csv.finish())
        }
    }
}

#[derive(Serialize)]
struct SpacingsDoc {
    count: usize,
    mean_delta: f64,
    extremes: spacing::ExtremesReport,
    bounds: spacing::SpacingBoundReport,
}

fn spacings(cfg: &RunConfig, a: &ZerosArgs, dir: &Path) -> Result<String> {
    let zs = require_zeros(dir, a.tol, a.t_max)?;
    let samples = spacing::normalize_spacings(&zs)?;
    match cfg.format {
        Format::Json => json_document(
            cfg,
            &SpacingsDoc {
                count: samples.len(),
                mean_delta: spacing::mean_delta(&samples),
                extremes: spacing::extremes_report(&samples)?,
                bounds: spacing::spacing_bound_report(&samples)?,
            },
        ),
        Format::Csv => {
            let mut csv = Csv::new(cfg, &["n", "gamma", "raw", "delta"]);
            for s in &samples {
                csv.row(&[s.n.to_string(), num(s.gamma_n), num(s.raw), num(s.delta)]);
            }
            Ok(csv.finish())
        }
    }
}

pub fn scaling(s: Scaling) -> PairScaling {
    match s {
        Scaling::Logt => PairScaling::LogT,
        Scaling::Unfolded => PairScaling::Unfolded,
    }
}

pub const FORM_FACTOR_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

#[derive(Serialize)]
struct PairDoc {
    estimate: spacing::PairCorrelationEstimate,
    max_deviation: f64,
    bins_within_0_1: usize,
    form_factor: Vec<spacing::FormFactor>,
}

fn paircorr(cfg: &RunConfig, a: &PairArgs, dir: &Path) -> Result<String> {
    let zs = require_zeros(dir, a.zeros.tol, a.zeros.t_max)?;
    let est = spacing::pair_correlation(&zs, a.lo, a.hi, a.zeros.t_max, a.bins, scaling(a.scaling))?;
    match cfg.format {
        Format::Json => {
            let form_factor = FORM_FACTOR_ALPHAS
                .iter()
                .map(|&al| spacing::form_factor(&zs, al, a.zeros.t_max))
                .collect::<primezero::Result<_>>()?;
            json_document(
                cfg,
                &PairDoc {
                    max_deviation: est.max_deviation(),
                    bins_within_0_1: est.bins.iter().filter(|b| (b.density - b.gue).abs() < 0.1).count(),
                    estimate: est,
                    form_factor,
                },
            )
        }
        Format::Csv => {
            let mut csv = Csv::new(cfg, &["a", "b", "count", "density", "gue"]);
            for b in &est.bins {
                csv.row(&[num(b.a), num(b.b), b.count.to_string(), num(b.density), num(b.gue)]);
            }
            Ok(csv.finish())
        }
    }
}

#[derive(Serialize)]
struct DualityDoc {
    n_lo: u64,
    n_hi: u64,
    k: u64,
    ratio_decades: Vec<duality::RatioDecade>,
    violation_decades: Vec<duality::ViolationDecade>,
    log_square_constant: f64,
    log_square_constant_at: u64,
    theorem1: duality::Theorem1Report,
}

fn duality_cmd(cfg: &RunConfig, a: &DualityArgs, dir: &Path) -> Result<String> {
    let zs = cached_zeros(dir, a.zeros.tol, a.zeros.t_max)?;
    let ps = cached_primes(dir, a.x_max)?;
    let (zs, ps) = match (zs, ps) {
        (Some(z), Some(p)) => (z, p),
        (z, p) => {
            let mut need = Vec::new();
            if z.is_none() {
                need.push("zeros".into());
            }
            if p.is_none() {
                need.push("primes".into());
            }
            return Err(CliError::MissingPrerequisite(need));
        }
    };
    let gammas: Vec<f64> = zs.iter().map(|z| z.gamma).collect();
    let have = ps.len().min(gammas.len()) as u64;
    let n_hi = a.n_hi.unwrap_or(have.saturating_sub(a.k));
    let rows = duality::transfer_sweep(&ps, &gammas, a.n_lo, n_hi, a.k)?;
    match cfg.format {
        Format::Json => {
            let samples = spacing::normalize_spacings(&zs)?;
            let gaps: Vec<(u64, u64)> = ps.windows(2).map(|w| (w[0], w[1] - w[0])).collect();
            let (c, at) = duality::prime_gap_log_square_constant(&ps, have.min(ps.len() as u64 - 1))?;
            json_document(
                cfg,
                &DualityDoc {
                    n_lo: a.n_lo,
                    n_hi,
                    k: a.k,
                    ratio_decades: duality::ratio_decades(&ps, &gammas)?,
                    violation_decades: duality::violations_by_decade(&rows),
                    log_square_constant: c,
                    log_square_constant_at: at,
                    theorem1: duality::theorem1_probe(&samples, &gaps),
                },
            )
        }
        Format::Csv => {
            let mut csv =
                Csv::new(cfg, &["n", "k", "p_gap", "z_gap", "bound_pz", "bound_zp", "violation_pz", "violation_zp"]);
            for r in &rows {
                csv.row(&[
                    r.n.to_string(),
                    r.k.to_string(),
                    r.p_gap.to_string(),
                    num(r.z_gap),
                    num(r.bound_pz),
                    num(r.bound_zp),
                    r.violation_pz.to_string(),
                    r.violation_zp.to_string(),
                ]);
            }
            Ok(csv.finish())
        }
    }
}

#[derive(Serialize)]
pub struct CharacterInfo {
    pub index: usize,
    pub parity: dl::Parity,
    pub conductor: u64,
    pub primitive: bool,
    pub real: bool,
    pub order: u32,
}

impl From<&DirichletCharacter> for CharacterInfo {
    fn from(c: &DirichletCharacter) -> Self {
        CharacterInfo {
            index: c.index,
            parity: c.parity,
            conductor: c.conductor,
            primitive: c.primitive,
            real: c.is_real(),
            order: c.order(),
        }
    }
}

#[derive(Serialize)]
struct LZeroSummary {
    chi_index: usize,
    count: dl::LCountCheck,
    first_zero: Option<f64>,
    mean_delta: Option<f64>,
}

#[derive(Serialize)]
struct DirichletDoc {
    q: u64,
    a: u64,
    characters: Vec<CharacterInfo>,
    summary: dl::APGapSummary,
    least_prime_sweep: dl::LeastPrimeSweep,
    l_zeros: Vec<LZeroSummary>,
    duality: Option<dl::APDualityReport>,
}

/// Primitive non-principal characters mod q.
pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(dl::characters(q)?.into_iter().filter(|c| c.primitive && !c.is_principal()).collect())
}

fn dirichlet(cfg: &RunConfig, a: &DirichletArgs) -> Result<String> {
    match (cfg.format, a.table) {
        (Format::Csv, DirichletTable::Primes) => {
            let ps = dl::primes_in_ap(a.x_max, a.a, a.q)?;
            let mut csv = Csv::new(cfg, &["q", "a", "n", "prime", "gap"]);
            for (i, &p) in ps.iter().enumerate() {
                let gap = ps.get(i + 1).map_or(String::new(), |r| (r - p).to_string());
                csv.row(&[a.q.to_string(), (a.a % a.q).to_string(), (i + 1).to_string(), p.to_string(), gap]);
            }
            Ok(csv.finish())
        }
        (Format::Csv, DirichletTable::Zeros) => {
            let mut csv = Csv::new(cfg, &["q", "chi_index", "n", "gamma"]);
            for c in primitive_characters(a.q)? {
                for z in dl::find_l_zeros(&c, 0.0, a.l_t_max, a.tol)?.zeros {
                    csv.row(&[a.q.to_string(), c.index.to_string(), z.index.to_string(), num(z.gamma)]);
                }
            }
            Ok(csv.finish())
        }
        (Format::Json, _) => {
            let chars = dl::characters(a.q)?;
            let mut l_zeros = Vec::new();
            let mut duality = None;
            if a.q <= dl::MAX_L_ZERO_MODULUS {
                let ps = dl::primes_in_ap(a.x_max, a.a, a.q)?;
                for c in primitive_characters(a.q)? {
                    let zs = dl::find_l_zeros(&c, 0.0, a.l_t_max, a.tol)?.zeros;
                    let mean_delta = dl::normalize_l_spacings(&zs, a.q)
                        .ok()
                        .map(|s| s.iter().map(|x| x.delta).sum::<f64>() / s.len() as f64);
                    if duality.is_none() {
                        duality = Some(dl::ap_duality_probe(a.q, a.a, &c, 2, u64::MAX, &ps, &zs)?);
                    }
                    l_zeros.push(LZeroSummary {
                        chi_index: c.index,
                        count: dl::verify_l_count(&zs, a.q, a.l_t_max)?,
                        first_zero: zs.first().map(|z| z.gamma),
                        mean_delta,
                    });
                }
            }
            json_document(
                cfg,
                &DirichletDoc {
                    q: a.q,
                    a: a.a % a.q,
                    characters: chars.iter().map(CharacterInfo::from).collect(),
                    summary: dl::ap_gap_summary(a.x_max, a.a, a.q, a.v_max)?,
                    least_prime_sweep: dl::least_prime_sweep(a.q)?,
                    l_zeros,
                    duality,
                },
            )
        }
    }
}

fn probe(cfg: &RunConfig, a: &ProbeArgs) -> Result<String> {
    match a.kind {
        ProbeKind::Poisson => {
            let mut grid = a.t_grid.clone();
            grid.sort_by(f64::total_cmp);
            let pts = spacing::prime_gap_poisson(primes::gap_stream(a.x_max)?, a.x_max, &grid)?;
            match cfg.format {
                Format::Json => json_document(cfg, &serde_json::json!({ "x": a.x_max, "points": pts })),
                Format::Csv => {
                    let mut csv = Csv::new(cfg, &["t", "empirical", "reference"]);
                    for p in &pts {
                        csv.row(&[num(p.t), num(p.empirical), num(p.reference)]);
                    }
                    Ok(csv.finish())
                }
            }
        }
        ProbeKind::Cauchy => {
            let w = spacing::cauchy_walk_probe(a.n, cfg.seed, a.b, primezero::zeta::MAX_HEIGHT)?;
            match cfg.format {
                Format::Json => json_document(cfg, &serde_json::json!({ "seed": cfg.seed, "b": a.b, "walk": w })),
                Format::Csv => {
                    let mut csv = Csv::new(cfg, &["n", "seed", "b", "sum", "deviation", "rejected"]);
                    csv.row(&[
                        w.n.to_string(),
                        cfg.seed.to_string(),
                        num(a.b),
                        num(w.sum),
                        num(w.deviation),
                        w.rejected.to_string(),
                    ]);
                    Ok(csv.finish())
                }
            }
        }
    }
}
