//! Index-matched comparison of the n-th prime with the n-th zero.
//!
//! Both sequences are passed as plain slices with `primes[0] = p₁ = 2` and
//! `gammas[0] = γ₁`, so index n lives at position n − 1.

use crate::error::{invalid, Error, Result};
use crate::spacing::{running_records, small_gap_shape, Extreme, SpacingSample};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// 1 / 2π, the limit of pₙ / (γₙ ln²n).
pub const DUALITY_REFERENCE: f64 = 1.0 / (2.0 * PI);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transfer {
    pub bound: f64,
    pub actual: f64,
}

impl Transfer {
    pub fn violated(&self) -> bool {
        self.actual > self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: u64,
    pub p_n: u64,
    pub gamma_n: f64,
    /// pₙ / (γₙ ln²n)
    pub ratio: f64,
    pub reference: f64,
    /// n ln n / pₙ
    pub prime_input: f64,
    /// γₙ ln n / (2πn)
    pub zero_input: f64,
    /// pₙ against γₙ ln²n / 2π.
    pub prime_from_zero: f64,
    /// γₙ against 2π pₙ / ln²n.
    pub zero_from_prime: f64,
    /// One-step transfers at n, when n + 1 is available.
    pub zero_to_prime: Option<Transfer>,
    pub prime_to_zero: Option<Transfer>,
}

fn available(primes: &[u64], gammas: &[f64]) -> usize {
    primes.len().min(gammas.len())
}

fn check_index(n: u64, primes: &[u64], gammas: &[f64]) -> Result<usize> {
    if n < 2 {
        return Err(invalid("n", "need n >= 2 (ln 1 = 0)"));
    }
    let have = available(primes, gammas);
    if n as usize > have {
        return Err(Error::IndexOutOfRange { index: n as usize, available: have });
    }
    Ok(n as usize - 1)
}

pub fn duality_ratio(primes: &[u64], gammas: &[f64], n: u64) -> Result<DualityReport> {
    let i = check_index(n, primes, gammas)?;
    let p = primes[i] as f64;
    let g = gammas[i];
    let nf = n as f64;
    let ln = nf.ln();
    let l2 = ln * ln;
    let next = n < available(primes, gammas) as u64;
    Ok(DualityReport {
        n,
        p_n: primes[i],
        gamma_n: g,
        ratio: p / (g * l2),
        reference: DUALITY_REFERENCE,
        prime_input: nf * ln / p,
        zero_input: g * ln / (2.0 * PI * nf),
        prime_from_zero: p / (g * l2 / (2.0 * PI)),
        zero_from_prime: g / (2.0 * PI * p / l2),
        zero_to_prime: next.then(|| zp(primes, gammas, i, 1)),
        prime_to_zero: next.then(|| pz(primes, gammas, i, 1)),
    })
}

fn check_transfer(n: u64, k: u64, primes: &[u64], gammas: &[f64]) -> Result<usize> {
    let i = check_index(n, primes, gammas)?;
    if k > n / 10 && k > 0 {
        return Err(invalid("k", format!("need k <= n/10 = {}, got {k}", n / 10)));
    }
    let have = available(primes, gammas);
    if (n + k) as usize > have {
        return Err(Error::IndexOutOfRange { index: (n + k) as usize, available: have });
    }
    Ok(i)
}

fn ln2(i: usize) -> f64 {
    let l = ((i + 1) as f64).ln();
    l * l
}

fn pz(primes: &[u64], gammas: &[f64], i: usize, k: usize) -> Transfer {
    let dp = (primes[i + k] - primes[i]) as f64;
    Transfer { bound: 4.0 * PI * dp / ln2(i), actual: gammas[i + k] - gammas[i] }
}

fn zp(primes: &[u64], gammas: &[f64], i: usize, k: usize) -> Transfer {
    let dg = gammas[i + k] - gammas[i];
    Transfer { bound: dg * ln2(i) / PI, actual: (primes[i + k] - primes[i]) as f64 }
}

/// γₙ₊ₖ − γₙ against 4π(pₙ₊ₖ − pₙ) / ln²n.
pub fn gap_transfer_prime_to_zero(primes: &[u64], gammas: &[f64], n: u64, k: u64) -> Result<Transfer> {
    let i = check_transfer(n, k, primes, gammas)?;
    Ok(pz(primes, gammas, i, k as usize))
}

/// pₙ₊ₖ − pₙ against (γₙ₊ₖ − γₙ) ln²n / π.
pub fn gap_transfer_zero_to_prime(primes: &[u64], gammas: &[f64], n: u64, k: u64) -> Result<Transfer> {
    let i = check_transfer(n, k, primes, gammas)?;
    Ok(zp(primes, gammas, i, k as usize))
}

/// The prime-to-zero bound with the prime gap replaced by the zero-to-prime
/// bound. Algebraically four times the zero gap.
pub fn composed_bound(n: u64, zero_gap: f64) -> f64 {
    let l = (n as f64).ln();
    let as_prime_gap = zero_gap * l * l / PI;
    4.0 * PI * as_prime_gap / (l * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u64,
    pub k: u64,
    pub p_gap: u64,
    pub z_gap: f64,
    pub bound_pz: f64,
    pub bound_zp: f64,
    pub violation_pz: bool,
    pub violation_zp: bool,
}

/// Both transfers for every n in `[n_lo, n_hi]` with fixed k.
pub fn transfer_sweep(primes: &[u64], gammas: &[f64], n_lo: u64, n_hi: u64, k: u64) -> Result<Vec<SweepRow>> {
    (n_lo.max(2)..=n_hi)
        .filter(|&n| k <= n / 10 || k == 0)
        .map(|n| {
            let a = gap_transfer_prime_to_zero(primes, gammas, n, k)?;
            let b = gap_transfer_zero_to_prime(primes, gammas, n, k)?;
            Ok(SweepRow {
                n,
                k,
                p_gap: b.actual as u64,
                z_gap: a.actual,
                bound_pz: a.bound,
                bound_zp: b.bound,
                violation_pz: a.violated(),
                violation_zp: b.violated(),
            })
        })
        .collect()
}

/// Decade [n_lo, n_hi) of indices, clipped to the data.
fn decade_of(n: u64) -> u64 {
    10u64.pow((n.max(1) as f64).log10().floor() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationDecade {
    pub n_lo: u64,
    pub n_hi: u64,
    pub count: usize,
    pub pz_fraction: f64,
    pub zp_fraction: f64,
}

pub fn violations_by_decade(rows: &[SweepRow]) -> Vec<ViolationDecade> {
    let mut out: Vec<(u64, usize, usize, usize)> = Vec::new();
    for r in rows {
        let d = decade_of(r.n);
        if out.last().is_none_or(|x| x.0 != d) {
            out.push((d, 0, 0, 0));
        }
        let last = out.last_mut().expect("pushed above");
        last.1 += 1;
        last.2 += r.violation_pz as usize;
        last.3 += r.violation_zp as usize;
    }
    out.into_iter()
        .map(|(d, c, a, b)| ViolationDecade {
            n_lo: d,
            n_hi: d * 10,
            count: c,
            pz_fraction: a as f64 / c as f64,
            zp_fraction: b as f64 / c as f64,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioDecade {
    pub n_lo: u64,
    pub n_hi: u64,
    pub count: usize,
    pub mean_ratio: f64,
    pub mean_prime_input: f64,
    pub mean_zero_input: f64,
    /// Mean of |input − 1|, per input.
    pub prime_distance: f64,
    pub zero_distance: f64,
}

/// Duality ratio and its two inputs averaged over n in [lo, hi].
pub fn ratio_window(primes: &[u64], gammas: &[f64], lo: u64, hi: u64) -> Result<RatioDecade> {
    let lo = lo.max(2);
    if hi < lo {
        return Err(invalid("range", format!("empty index range [{lo}, {hi}]")));
    }
    let mut acc = [0.0; 5];
    for n in lo..=hi {
        let r = duality_ratio(primes, gammas, n)?;
        acc[0] += r.ratio;
        acc[1] += r.prime_input;
        acc[2] += r.zero_input;
        acc[3] += (r.prime_input - 1.0).abs();
        acc[4] += (r.zero_input - 1.0).abs();
    }
    let c = (hi - lo + 1) as f64;
    Ok(RatioDecade {
        n_lo: lo,
        n_hi: hi,
        count: c as usize,
        mean_ratio: acc[0] / c,
        mean_prime_input: acc[1] / c,
        mean_zero_input: acc[2] / c,
        prime_distance: acc[3] / c,
        zero_distance: acc[4] / c,
    })
}

/// Ratio summaries over the decades [10ʲ, 10ʲ⁺¹ − 1] that fit the data.
pub fn ratio_decades(primes: &[u64], gammas: &[f64]) -> Result<Vec<RatioDecade>> {
    let have = available(primes, gammas) as u64;
    let mut out = Vec::new();
    let mut lo = 2;
    while lo <= have {
        let hi = (decade_of(lo) * 10 - 1).min(have);
        out.push(ratio_window(primes, gammas, lo, hi)?);
        lo = hi + 1;
    }
    Ok(out)
}

/// Smallest c with pₙ₊₁ − pₙ ≤ c ln²pₙ for 2 ≤ n ≤ n_max, and where it is attained.
pub fn prime_gap_log_square_constant(primes: &[u64], n_max: u64) -> Result<(f64, u64)> {
    if n_max < 2 || n_max as usize >= primes.len() {
        return Err(Error::IndexOutOfRange { index: n_max as usize + 1, available: primes.len() });
    }
    let mut best = (0.0, 2);
    for i in 1..n_max as usize {
        let l = (primes[i] as f64).ln();
        let c = (primes[i + 1] - primes[i]) as f64 / (l * l);
        if c > best.0 {
            best = (c, i as u64 + 1);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Decade {
    pub n_lo: u64,
    pub n_hi: u64,
    pub running_min: Extreme,
    pub running_max: Extreme,
    /// (ln ln γ)² (ln γ)^{−3/2} at the running minimum.
    pub small_envelope: Option<f64>,
    /// Prime gap and its shapes ln p ln ln p and √(ln p) ln ln p at the index
    /// of the running maximum.
    pub prime_gap_at_max: u64,
    pub large_prime_shape: f64,
    pub typical_prime_shape: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Theorem1Report {
    pub overlap: usize,
    pub decades: Vec<Theorem1Decade>,
    /// Decades whose running minimum is below the previous decade's.
    pub min_deepenings: usize,
    /// Decades whose running maximum is above the previous decade's.
    pub max_raisings: usize,
}

/// Running extreme spacings per decade of n with the envelope shapes evaluated
/// at the indices that realise them.
pub fn theorem1_probe(samples: &[SpacingSample], gaps: &[(u64, u64)]) -> Theorem1Report {
    let overlap = samples.len().min(gaps.len());
    if overlap == 0 {
        return Theorem1Report::default();
    }
    let samples = &samples[..overlap];
    let mut decades = Vec::new();
    let mut start = 0;
    while start < overlap {
        let d = decade_of(samples[start].n);
        let end = samples[start..].iter().position(|s| decade_of(s.n) != d).map_or(overlap, |k| start + k);
        let mins = running_records(&samples[..end], true);
        let maxs = running_records(&samples[..end], false);
        let lo = *mins.last().expect("non-empty");
        let hi = *maxs.last().expect("non-empty");
        let gi = (hi.n as usize).saturating_sub(1).min(gaps.len() - 1);
        let (p, gap) = gaps[gi];
        let lp = (p.max(3) as f64).ln();
        decades.push(Theorem1Decade {
            n_lo: d,
            n_hi: d * 10,
            running_min: lo,
            running_max: hi,
            small_envelope: small_gap_shape(lo.gamma),
            prime_gap_at_max: gap,
            large_prime_shape: lp * lp.ln(),
            typical_prime_shape: lp.sqrt() * lp.ln(),
        });
        start = end;
    }
    let min_deepenings = decades.windows(2).filter(|w| w[1].running_min.delta < w[0].running_min.delta).count();
    let max_raisings = decades.windows(2).filter(|w| w[1].running_max.delta > w[0].running_max.delta).count();
    Theorem1Report { overlap, decades, min_deepenings, max_raisings }
}
