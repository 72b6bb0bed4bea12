use crate::config::{ReportArgs, RunConfig};
use crate::error::{CliError, Result};
use crate::output::json_document;
use crate::pipeline::{cached_primes, cached_zeros, FORM_FACTOR_ALPHAS};
use primezero::dirichlet as dl;
use primezero::duality;
use primezero::primes;
use primezero::spacing::{self, BoundEvent, PairScaling};
use primezero::special::li;
use primezero::zeros::verify_count;
use serde::Serialize;
use std::path::Path;

pub const REPORT_SCHEMA: &str = "primezero.report/1";

/// Residue classes whose counts are compared with li(x)/φ(q).
const AP_CLASSES: [(u64, u64); 4] = [(3, 1), (3, 2), (4, 1), (4, 3)];
const LEAST_PRIME_MODULI: std::ops::RangeInclusive<u64> = 3..=50;
const L_ZERO_HEIGHT: f64 = 100.0;
const AP_DUALITY_HEIGHT: f64 = 200.0;
const POISSON_GRID: [f64; 3] = [0.5, 1.0, 2.0];
const CAUCHY_SAMPLES: u64 = 1000;
const CAUCHY_B: f64 = 2.5;
const EXCEEDANCES_LISTED: usize = 10;

#[derive(Serialize)]
struct Inputs {
    t_max: f64,
    tol: f64,
    x_max: u64,
    zero_count: usize,
    pi_x: usize,
}

#[derive(Serialize)]
struct PairSection {
    scaling: PairScaling,
    bins: Vec<spacing::PairBin>,
    max_deviation: f64,
    bins_within_0_1: usize,
}

#[derive(Serialize)]
struct CramerSection {
    x: u64,
    max_gap_p: u64,
    max_gap: u64,
    cramer_stat: f64,
    reference: (f64, f64),
}

#[derive(Serialize)]
struct ApCount {
    q: u64,
    a: u64,
    count: usize,
    li_over_phi: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct LCount {
    q: u64,
    chi_index: usize,
    first_zero: Option<f64>,
    check: dl::LCountCheck,
}

#[derive(Serialize)]
struct ApDualitySection {
    q: u64,
    a: u64,
    chi_index: usize,
    pairs: usize,
    mean_delta: f64,
    min_delta: Option<spacing::Extreme>,
    max_delta: Option<spacing::Extreme>,
    separation_violations: usize,
    decades: Vec<dl::APDualityDecade>,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    inputs: Inputs,
    thm14_zero_count: primezero::ZeroVerification,
    eq6_mean_delta: f64,
    thm7_min_delta: spacing::Extreme,
    thm6_max_delta: spacing::Extreme,
    eq23_small_shape_constant: Option<f64>,
    eq24_large_shape_constant: Option<f64>,
    eq9_pair_correlation: PairSection,
    eq10_form_factor: Vec<spacing::FormFactor>,
    thm3_lower_violations: usize,
    thm3_lower_violation_events: Vec<BoundEvent>,
    thm3_upper_exceedances: usize,
    thm3_upper_first_exceedances: Vec<BoundEvent>,
    zero_separation_decades: Vec<spacing::SeparationDecade>,
    eq11_poisson: Vec<spacing::PoissonPoint>,
    cramer_statistic: CramerSection,
    thm9_large_gap_constant: Option<f64>,
    lemma16_ratio_decades: Vec<duality::RatioDecade>,
    lemma16_transfer_decades: Vec<duality::ViolationDecade>,
    cor4_log_square_constant: (f64, u64),
    thm1_probe: duality::Theorem1Report,
    thm18_ap_counts: Vec<ApCount>,
    thm24_ap_gaps: dl::APGapSummary,
    thm22_least_primes: Vec<dl::LeastPrimeSweep>,
    thm20_l_zero_counts: Vec<LCount>,
    lemma25_ap_duality: ApDualitySection,
    cauchy_walk: spacing::CauchyWalk,
}

pub fn report(cfg: &RunConfig, a: &ReportArgs, dir: &Path) -> Result<String> {
    let zs = cached_zeros(dir, a.zeros.tol, a.zeros.t_max)?;
    let ps = cached_primes(dir, a.x_max)?;
    let (zs, ps) = match (zs, ps) {
        (Some(z), Some(p)) => (z, p),
        (z, p) => {
            let mut need = Vec::new();
            if z.is_none() {
                need.push("zeros".to_string());
            }
            if p.is_none() {
                need.push("primes".to_string());
            }
            return Err(CliError::MissingPrerequisite(need));
        }
    };
    let t_max = a.zeros.t_max;
    let gammas: Vec<f64> = zs.iter().map(|z| z.gamma).collect();

    let samples = spacing::normalize_spacings(&zs)?;
    let extremes = spacing::extremes_report(&samples)?;
    let bounds = spacing::spacing_bound_report(&samples)?;
    let pc = spacing::pair_correlation(&zs, 0.0, 3.0, t_max, a.bins, PairScaling::LogT)?;
    let form = FORM_FACTOR_ALPHAS
        .iter()
        .map(|&al| spacing::form_factor(&zs, al, t_max))
        .collect::<primezero::Result<Vec<_>>>()?;

    let gaps: Vec<(u64, u64)> = ps.windows(2).map(|w| (w[0], w[1] - w[0])).collect();
    let poisson = spacing::prime_gap_poisson(gaps.iter().copied(), a.x_max, &POISSON_GRID)?;
    let summary = primes::gap_summary(a.x_max)?;
    let records = primes::gap_records(a.x_max)?;

    let have = ps.len().min(gammas.len()) as u64;
    let sweep = duality::transfer_sweep(&ps, &gammas, 100.min(have), have.saturating_sub(1), 1)?;
    let cor4 = duality::prime_gap_log_square_constant(&ps, have.min(ps.len() as u64 - 1))?;

    let mut ap_counts = Vec::new();
    for (q, r) in AP_CLASSES {
        let count = dl::primes_in_ap(a.x_max, r, q)?.len();
        let reference = li(a.x_max as f64) / dl::euler_phi(q) as f64;
        ap_counts.push(ApCount { q, a: r, count, li_over_phi: reference, ratio: count as f64 / reference });
    }
    let least = LEAST_PRIME_MODULI.map(dl::least_prime_sweep).collect::<primezero::Result<Vec<_>>>()?;

    let mut l_counts = Vec::new();
    for q in [3, 4] {
        for c in crate::pipeline::primitive_characters(q)? {
            let lz = dl::find_l_zeros(&c, 0.0, L_ZERO_HEIGHT, a.zeros.tol)?.zeros;
            l_counts.push(LCount {
                q,
                chi_index: c.index,
                first_zero: lz.first().map(|z| z.gamma),
                check: dl::verify_l_count(&lz, q, L_ZERO_HEIGHT)?,
            });
        }
    }

    let chi4 = dl::character_by_values(4, &[0, 1, 0, -1])?;
    let lz = dl::find_l_zeros(&chi4, 0.0, AP_DUALITY_HEIGHT, a.zeros.tol)?.zeros;
    let ap = dl::primes_in_ap(a.x_max, 1, 4)?;
    let d = dl::ap_duality_probe(4, 1, &chi4, 2, u64::MAX, &ap, &lz)?;

    let doc = Report {
        schema: REPORT_SCHEMA,
        inputs: Inputs { t_max, tol: a.zeros.tol, x_max: a.x_max, zero_count: zs.len(), pi_x: ps.len() },
        thm14_zero_count: verify_count(&zs, t_max),
        eq6_mean_delta: spacing::mean_delta(&samples),
        thm7_min_delta: extremes.min_delta,
        thm6_max_delta: extremes.max_delta,
        eq23_small_shape_constant: extremes.small_shape_constant,
        eq24_large_shape_constant: extremes.large_shape_constant,
        eq9_pair_correlation: PairSection {
            scaling: pc.scaling,
            max_deviation: pc.max_deviation(),
            bins_within_0_1: pc.bins.iter().filter(|b| (b.density - b.gue).abs() < 0.1).count(),
            bins: pc.bins,
        },
        eq10_form_factor: form,
        thm3_lower_violations: bounds.lower_violations.len(),
        thm3_upper_exceedances: bounds.upper_exceedances.len(),
        thm3_upper_first_exceedances: bounds.upper_exceedances.iter().take(EXCEEDANCES_LISTED).copied().collect(),
        thm3_lower_violation_events: bounds.lower_violations,
        zero_separation_decades: bounds.separation,
        eq11_poisson: poisson,
        cramer_statistic: CramerSection {
            x: summary.x,
            max_gap_p: summary.max_record.p,
            max_gap: summary.max_record.gap,
            cramer_stat: summary.cramer_stat,
            reference: summary.cramer_reference,
        },
        thm9_large_gap_constant: primes::fit_large_gap_constant(&records),
        lemma16_ratio_decades: duality::ratio_decades(&ps, &gammas)?,
        lemma16_transfer_decades: duality::violations_by_decade(&sweep),
        cor4_log_square_constant: cor4,
        thm1_probe: duality::theorem1_probe(&samples, &gaps),
        thm18_ap_counts: ap_counts,
        thm24_ap_gaps: dl::ap_gap_summary(a.x_max, 1, 4, 3)?,
        thm22_least_primes: least,
        thm20_l_zero_counts: l_counts,
        lemma25_ap_duality: ApDualitySection {
            q: 4,
            a: 1,
            chi_index: chi4.index,
            pairs: d.rows.len(),
            mean_delta: d.mean_delta,
            min_delta: d.min_delta,
            max_delta: d.max_delta,
            separation_violations: d.separation_violations,
            decades: d.decades,
        },
        cauchy_walk: spacing::cauchy_walk_probe(CAUCHY_SAMPLES, cfg.seed, CAUCHY_B, primezero::zeta::MAX_HEIGHT)?,
    };
    json_document(cfg, &doc)
}
