//! Spacing statistics of zero lists and prime-gap streams.

use crate::error::{invalid, Result};
use crate::special::{integrate, iterated_ln, sinc_pi_squared};
use crate::zeros::ZetaZero;
use crate::zeta::{hardy_z_unchecked, theta_unchecked};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One consecutive-zero spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacingSample {
    pub n: u64,
    pub gamma_n: f64,
    /// γₙ₊₁ − γₙ
    pub raw: f64,
    /// raw · ln(γₙ/2π) / 2π
    pub delta: f64,
}

/// Local mean density of zeros at height γ, per unit length.
pub fn zero_density(gamma: f64) -> f64 {
    (gamma / (2.0 * PI)).ln() / (2.0 * PI)
}

/// Normalised spacings δₙ of an ascending zero list.
pub fn normalize_spacings(zeros: &[ZetaZero]) -> Result<Vec<SpacingSample>> {
    if zeros.len() < 2 {
        return Err(invalid("zeros", "need at least two zeros"));
    }
    zeros
        .windows(2)
        .map(|w| {
            let raw = w[1].gamma - w[0].gamma;
            if !(raw > 0.0) {
                return Err(invalid("zeros", format!("ordinates not strictly ascending at index {}", w[0].index)));
            }
            Ok(SpacingSample { n: w[0].index, gamma_n: w[0].gamma, raw, delta: raw * zero_density(w[0].gamma) })
        })
        .collect()
}

pub fn mean_delta(samples: &[SpacingSample]) -> f64 {
    if samples.is_empty() {
        return f64::NAN;
    }
    samples.iter().map(|s| s.delta).sum::<f64>() / samples.len() as f64
}

/// A spacing singled out by a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extreme {
    pub n: u64,
    pub gamma: f64,
    pub delta: f64,
}

impl From<&SpacingSample> for Extreme {
    fn from(s: &SpacingSample) -> Self {
        Extreme { n: s.n, gamma: s.gamma_n, delta: s.delta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremesReport {
    pub min_delta: Extreme,
    pub max_delta: Extreme,
    /// Fitted c₀ in δ ≈ c₀ (ln ln γ)² / (ln γ)^{3/2}, over running-minimum records.
    pub small_shape_constant: Option<f64>,
    /// Samples below the fitted small-gap envelope.
    pub thresholds_small: usize,
    /// Fitted c₁ in δ ≈ c₁ ln ln γ · ln₄γ, over running-maximum records.
    /// Undefined while ln₄γ ≤ 0, i.e. below γ ≈ 3.8·10⁶.
    pub large_shape_constant: Option<f64>,
    pub thresholds_large: usize,
}

/// (ln ln γ)² / (ln γ)^{3/2}
pub fn small_gap_shape(gamma: f64) -> Option<f64> {
    let l1 = iterated_ln(gamma, 1)?;
    let l2 = iterated_ln(gamma, 2)?;
    (l1 > 0.0).then(|| l2 * l2 / l1.powf(1.5))
}

/// ln ln γ · ln ln ln ln γ, `None` where it is not positive.
pub fn large_gap_shape(gamma: f64) -> Option<f64> {
    let l2 = iterated_ln(gamma, 2)?;
    let l4 = iterated_ln(gamma, 4)?;
    (l2 > 0.0 && l4 > 0.0).then_some(l2 * l4)
}

/// Running minima (`smaller = true`) or maxima of δ, in index order.
pub fn running_records(samples: &[SpacingSample], smaller: bool) -> Vec<Extreme> {
    let mut out: Vec<Extreme> = Vec::new();
    for s in samples {
        let better = match out.last() {
            None => true,
            Some(r) if smaller => s.delta < r.delta,
            Some(r) => s.delta > r.delta,
        };
        if better {
            out.push(s.into());
        }
    }
    out
}

fn fit_through_origin(records: &[Extreme], shape: fn(f64) -> Option<f64>) -> Option<f64> {
    let (mut sy, mut ss) = (0.0, 0.0);
    for r in records {
        if let Some(s) = shape(r.gamma) {
            sy += r.delta * s;
            ss += s * s;
        }
    }
    (ss > 0.0).then(|| sy / ss)
}

pub fn extremes_report(samples: &[SpacingSample]) -> Result<ExtremesReport> {
    if samples.is_empty() {
        return Err(invalid("samples", "need at least one spacing"));
    }
    let mins = running_records(samples, true);
    let maxs = running_records(samples, false);
    let c0 = fit_through_origin(&mins, small_gap_shape);
    let c1 = fit_through_origin(&maxs, large_gap_shape);
    let below = |c: f64| samples.iter().filter(|s| small_gap_shape(s.gamma_n).is_some_and(|v| s.delta < c * v)).count();
    let above = |c: f64| samples.iter().filter(|s| large_gap_shape(s.gamma_n).is_some_and(|v| s.delta > c * v)).count();
    Ok(ExtremesReport {
        min_delta: *mins.last().expect("non-empty"),
        max_delta: *maxs.last().expect("non-empty"),
        small_shape_constant: c0,
        thresholds_small: c0.map_or(0, below),
        large_shape_constant: c1,
        thresholds_large: c1.map_or(0, above),
    })
}

/// ∫ₐᵇ 1 − (sin πx / πx)² dx.
pub fn gue_pair_integral(a: f64, b: f64) -> f64 {
    integrate(|x| 1.0 - sinc_pi_squared(x), a, b, 1e-12)
}

/// How zero differences are put on a unit mean-spacing scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum PairScaling {
    /// (γₙ − γₘ) · ln T / 2π with one global T.
    #[default]
    LogT,
    /// Each difference scaled by the local density at the lower zero.
    Unfolded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairBin {
    pub a: f64,
    pub b: f64,
    pub count: u64,
    /// count / N(T)
    pub density: f64,
    pub gue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelationEstimate {
    pub bins: Vec<PairBin>,
    pub t: f64,
    pub zero_count: usize,
    pub scaling: PairScaling,
}

impl PairCorrelationEstimate {
    pub fn max_deviation(&self) -> f64 {
        self.bins.iter().map(|b| (b.density - b.gue).abs()).fold(0.0, f64::max)
    }
}

/// Binned pair correlation of the zeros with γ ≤ T.
///
/// Each unordered pair is counted once with its positive difference; bins are
/// half-open [aᵢ, bᵢ).
pub fn pair_correlation(
    zeros: &[ZetaZero],
    a: f64,
    b: f64,
    t: f64,
    bins: usize,
    scaling: PairScaling,
) -> Result<PairCorrelationEstimate> {
    if !(a.is_finite() && b.is_finite()) || a < 0.0 || a >= b {
        return Err(invalid("window", format!("need 0 <= a < b, got [{a}, {b}]")));
    }
    if bins == 0 {
        return Err(invalid("bins", "need at least one bin"));
    }
    let g: Vec<f64> = zeros.iter().map(|z| z.gamma).filter(|&x| x <= t).collect();
    if g.is_empty() {
        return Err(invalid("zeros", format!("no zeros at or below T = {t}")));
    }
    let width = (b - a) / bins as f64;
    let global = t.ln() / (2.0 * PI);
    let counts: Vec<u64> = g
        .par_iter()
        .enumerate()
        .map(|(i, &gi)| {
            let scale = match scaling {
                PairScaling::LogT => global,
                PairScaling::Unfolded => zero_density(gi),
            };
            let mut local = vec![0u64; bins];
            for &gj in &g[i + 1..] {
                let x = (gj - gi) * scale;
                if x >= b {
                    break;
                }
                if x >= a {
                    let k = (((x - a) / width) as usize).min(bins - 1);
                    local[k] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; bins],
            |mut acc, v| {
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += y;
                }
                acc
            },
        );
    let n = g.len();
    let out = counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| {
            let lo = a + k as f64 * width;
            let hi = if k + 1 == bins { b } else { a + (k + 1) as f64 * width };
            PairBin { a: lo, b: hi, count, density: count as f64 / n as f64, gue: gue_pair_integral(lo, hi) }
        })
        .collect();
    Ok(PairCorrelationEstimate { bins: out, t, zero_count: n, scaling })
}

/// 4 / (4 + x²)
pub fn form_factor_weight(x: f64) -> f64 {
    4.0 / (4.0 + x * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormFactor {
    pub alpha: f64,
    pub t: f64,
    /// Re of (2π / T ln T) Σ Σ w(γ − γ′) T^{iα(γ − γ′)}.
    pub value: f64,
    /// The imaginary part, zero up to rounding.
    pub imag: f64,
    /// The diagonal contribution (2π / T ln T) · N(T).
    pub diagonal: f64,
    /// The double sum divided by N(T) instead.
    pub count_normalized: f64,
}

impl FormFactor {
    pub fn imag_is_negligible(&self) -> bool {
        self.imag.abs() <= 1e-8 * self.value.abs()
    }
}

/// Montgomery's form factor over the zeros with γ ≤ T.
pub fn form_factor(zeros: &[ZetaZero], alpha: f64, t: f64) -> Result<FormFactor> {
    if !alpha.is_finite() || !t.is_finite() {
        return Err(invalid("alpha", "alpha and T must be finite"));
    }
    let g: Vec<f64> = zeros.iter().map(|z| z.gamma).filter(|&x| x <= t).collect();
    if g.is_empty() {
        return Err(invalid("T", format!("T = {t} is below the first zero")));
    }
    let omega = alpha * t.ln();
    let rows: Vec<(f64, f64)> = g
        .par_iter()
        .map(|&gi| {
            let (mut re, mut im) = (0.0, 0.0);
            for &gj in &g {
                let d = gi - gj;
                let w = form_factor_weight(d);
                let (s, c) = (omega * d).sin_cos();
                re += w * c;
                im += w * s;
            }
            (re, im)
        })
        .collect();
    let (re, im) = rows.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let n = g.len() as f64;
    let norm = 2.0 * PI / (t * t.ln());
    Ok(FormFactor { alpha, t, value: norm * re, imag: norm * im, diagonal: norm * n, count_normalized: re / n })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonPoint {
    pub t: f64,
    pub empirical: f64,
    pub reference: f64,
}

/// Fraction of gaps with dₙ / ln pₙ ≤ t, next to 1 − e^{−t}.
pub fn prime_gap_poisson<I>(gaps: I, x: u64, t_grid: &[f64]) -> Result<Vec<PoissonPoint>>
where
    I: IntoIterator<Item = (u64, u64)>,
{
    if x < 100 {
        return Err(invalid("x", format!("must be at least 100, got {x}")));
    }
    if t_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid("t_grid", "must be ascending and non-negative"));
    }
    let mut hist = vec![0u64; t_grid.len() + 1];
    let mut total = 0u64;
    for (p, d) in gaps {
        if p + d > x {
            break;
        }
        let r = d as f64 / (p as f64).ln();
        // first grid index with t >= r
        let k = t_grid.partition_point(|&t| t < r);
        hist[k] += 1;
        total += 1;
    }
    let mut acc = 0u64;
    Ok(t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            acc += hist[i];
            PoissonPoint {
                t,
                empirical: if total == 0 { 0.0 } else { acc as f64 / total as f64 },
                reference: 1.0 - (-t).exp(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEvent {
    pub n: u64,
    pub gamma: f64,
    pub raw: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationDecade {
    /// Indices n in [n_lo, n_hi).
    pub n_lo: u64,
    pub n_hi: u64,
    /// min of (γₙ₊₁ − γₙ) · γₙ^{1/3} over the decade.
    pub min_scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingBoundReport {
    pub samples: usize,
    /// Spacings below 2π / ln²γₙ.
    pub lower_violations: Vec<BoundEvent>,
    /// Spacings above π / ln ln γₙ; the bound only holds asymptotically.
    pub upper_exceedances: Vec<BoundEvent>,
    pub separation: Vec<SeparationDecade>,
}

pub fn lower_spacing_bound(gamma: f64) -> f64 {
    let l = gamma.ln();
    2.0 * PI / (l * l)
}

pub fn upper_spacing_bound(gamma: f64) -> f64 {
    PI / gamma.ln().ln()
}

pub fn spacing_bound_report(samples: &[SpacingSample]) -> Result<SpacingBoundReport> {
    if samples.is_empty() {
        return Err(invalid("samples", "need at least one spacing"));
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut decades: Vec<SeparationDecade> = Vec::new();
    for s in samples {
        let lb = lower_spacing_bound(s.gamma_n);
        if s.raw < lb {
            lower.push(BoundEvent { n: s.n, gamma: s.gamma_n, raw: s.raw, bound: lb });
        }
        let ub = upper_spacing_bound(s.gamma_n);
        if s.raw > ub {
            upper.push(BoundEvent { n: s.n, gamma: s.gamma_n, raw: s.raw, bound: ub });
        }
        let scaled = s.raw * s.gamma_n.cbrt();
        let n_lo = 10u64.pow((s.n.max(1) as f64).log10().floor() as u32);
        match decades.last_mut() {
            Some(d) if d.n_lo == n_lo => d.min_scaled = d.min_scaled.min(scaled),
            _ => decades.push(SeparationDecade { n_lo, n_hi: n_lo * 10, min_scaled: scaled }),
        }
    }
    Ok(SpacingBoundReport {
        samples: samples.len(),
        lower_violations: lower,
        upper_exceedances: upper,
        separation: decades,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyWalk {
    pub n: u64,
    pub sum: f64,
    pub deviation: f64,
    /// Draws rejected for landing above the height ceiling.
    pub rejected: u64,
}

/// Σₖ Re ζ(1/2 + itₖ) over n standard Cauchy draws tₖ with |tₖ| ≤ `ceiling`.
///
/// The deviation is |sum − n| / (√n · max(ln n, 1)^b).
pub fn cauchy_walk_probe(n: u64, seed: u64, b: f64, ceiling: f64) -> Result<CauchyWalk> {
    if !(ceiling.is_finite() && ceiling > 0.0) || ceiling > crate::zeta::MAX_HEIGHT {
        return Err(invalid("ceiling", format!("must lie in (0, {}], got {ceiling}", crate::zeta::MAX_HEIGHT)));
    }
    if n == 0 {
        return Ok(CauchyWalk { n, sum: 0.0, deviation: 0.0, rejected: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::with_capacity(n as usize);
    let mut rejected = 0;
    while ts.len() < n as usize {
        let u: f64 = rng.gen();
        let t = (PI * (u - 0.5)).tan();
        if t.is_finite() && t.abs() <= ceiling {
            ts.push(t.abs());
        } else {
            rejected += 1;
        }
    }
    let values: Vec<f64> = ts.par_iter().map(|&t| hardy_z_unchecked(t) * theta_unchecked(t).cos()).collect();
    let sum: f64 = values.iter().sum();
    let nf = n as f64;
    let norm = nf.sqrt() * nf.ln().max(1.0).powf(b);
    Ok(CauchyWalk { n, sum, deviation: (sum - nf).abs() / norm, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(index: u64, gamma: f64) -> ZetaZero {
        ZetaZero { index, gamma, uncertainty: 1e-10 }
    }

    #[test]
    fn first_spacing() {
        let s = normalize_spacings(&[z(1, 14.134725), z(2, 21.022040)]).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].delta - 0.8887).abs() < 1e-3);
    }

    #[test]
    fn rejects_non_ascending() {
        assert!(normalize_spacings(&[z(1, 14.0), z(2, 14.0)]).is_err());
        assert!(normalize_spacings(&[z(1, 14.0)]).is_err());
    }

    #[test]
    fn single_sample_extremes() {
        let s = normalize_spacings(&[z(1, 14.134725), z(2, 21.022040)]).unwrap();
        let r = extremes_report(&s).unwrap();
        assert_eq!(r.min_delta, r.max_delta);
    }

    #[test]
    fn gue_on_unit_interval() {
        // 1 − Si(2π)/π
        assert!((gue_pair_integral(0.0, 1.0) - 0.548_588_333_209_859_7).abs() < 1e-9);
    }

    #[test]
    fn pair_correlation_guards() {
        let zs = [z(1, 14.134725), z(2, 21.022040)];
        assert!(pair_correlation(&zs, 1.0, 1.0, 100.0, 4, PairScaling::LogT).is_err());
        assert!(pair_correlation(&[], 0.0, 1.0, 100.0, 4, PairScaling::LogT).is_err());
    }

    #[test]
    fn single_zero_form_factor_is_diagonal() {
        let f = form_factor(&[z(1, 14.134725)], 0.7, 20.0).unwrap();
        let want = 2.0 * PI / (20.0 * 20f64.ln());
        assert!((f.value - want).abs() < 1e-15);
        assert_eq!(f.value, f.diagonal);
        assert!(form_factor(&[z(1, 14.134725)], 0.7, 10.0).is_err());
    }

    #[test]
    fn poisson_endpoints() {
        let gaps = [(101, 2), (103, 4), (107, 2), (109, 4)];
        let p = prime_gap_poisson(gaps, 200, &[0.0, 50.0]).unwrap();
        assert_eq!(p[0].empirical, 0.0);
        assert_eq!(p[1].empirical, 1.0);
        assert!(prime_gap_poisson(gaps, 200, &[1.0, 0.5]).is_err());
        assert!(prime_gap_poisson(gaps, 50, &[1.0]).is_err());
    }

    #[test]
    fn upper_bound_flags_first_spacing() {
        let s = normalize_spacings(&[z(1, 14.134725), z(2, 21.022040)]).unwrap();
        let r = spacing_bound_report(&s).unwrap();
        assert!(r.lower_violations.is_empty());
        assert_eq!(r.upper_exceedances.len(), 1);
        assert!((r.upper_exceedances[0].bound - 3.225).abs() < 1e-3);
    }

    #[test]
    fn cauchy_walk_trivia() {
        let w = cauchy_walk_probe(0, 1, 2.5, 1000.0).unwrap();
        assert_eq!((w.sum, w.deviation), (0.0, 0.0));
        let a = cauchy_walk_probe(200, 7, 2.5, 1000.0).unwrap();
        let b = cauchy_walk_probe(200, 7, 2.5, 1000.0).unwrap();
        assert_eq!(a, b);
    }
}
