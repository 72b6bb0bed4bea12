use super::characters::{euler_phi, gcd};
use crate::error::{invalid, Error, Result};
use crate::primes::{large_gap_shape, PrimeStream, SIEVE_CEILING};
use crate::special::{li, EULER_GAMMA};
use serde::{Deserialize, Serialize};

fn check_progression(a: u64, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(invalid("q", format!("modulus must be at least 2, got {q}")));
    }
    let g = gcd(a % q, q);
    if g != 1 {
        return Err(Error::NotCoprime { a, q, gcd: g });
    }
    Ok(a % q)
}

/// Primes p ≤ x with p ≡ a (mod q), ascending.
pub fn primes_in_ap(x: u64, a: u64, q: u64) -> Result<Vec<u64>> {
    let r = check_progression(a, q)?;
    Ok(PrimeStream::new(x)?.filter(|p| p % q == r).collect())
}

/// li(x) / φ(q), the expected size of π(x; q, a).
pub fn ap_count_reference(x: u64, q: u64) -> f64 {
    li(x as f64) / euler_phi(q) as f64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The least prime p(a, q) ≡ a (mod q).
pub fn least_prime(a: u64, q: u64) -> Result<u64> {
    let r = check_progression(a, q)?;
    let mut n = if r == 0 { q } else { r };
    while n <= SIEVE_CEILING {
        if is_prime(n) {
            return Ok(n);
        }
        n += q;
    }
    Err(Error::SearchExhausted { a, q, ceiling: SIEVE_CEILING })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeastPrimeSweep {
    pub q: u64,
    /// The residue whose least prime is largest, and that prime.
    pub worst_a: u64,
    pub max_least_prime: u64,
    /// max p(a, q) / (φ(q) ln²q)
    pub conjectural_ratio: f64,
    /// ln max p(a, q) / ln q, the exponent L in p ≤ q^L.
    pub linnik_exponent: f64,
}

pub fn least_prime_sweep(q: u64) -> Result<LeastPrimeSweep> {
    if q < 3 {
        return Err(invalid("q", format!("need q >= 3, got {q}")));
    }
    let mut worst = (0, 0);
    for a in (1..q).filter(|&a| gcd(a, q) == 1) {
        let p = least_prime(a, q)?;
        if p > worst.1 {
            worst = (a, p);
        }
    }
    let lq = (q as f64).ln();
    Ok(LeastPrimeSweep {
        q,
        worst_a: worst.0,
        max_least_prime: worst.1,
        conjectural_ratio: worst.1 as f64 / (euler_phi(q) as f64 * lq * lq),
        linnik_exponent: (worst.1 as f64).ln() / lq,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct APGapSummary {
    pub q: u64,
    pub a: u64,
    pub x: u64,
    pub pi_xaq: u64,
    /// li(x)/φ(q)
    pub count_reference: f64,
    pub avg_gap: f64,
    /// Smallest gap, not counting gaps that start or end at the prime 2.
    pub min_gap: u64,
    /// Gaps involving the prime 2 (only possible for odd q with 2 ≡ a).
    pub exceptional_gaps: Vec<(u64, u64)>,
    /// Every other gap is a multiple of q (even q) or 2q (odd q).
    pub gaps_divisible: bool,
    pub least_prime: u64,
    /// Running minima of (qₙ₊ᵥ − qₙ)/(φ(q) ln qₙ), v = 1, 2, …
    pub delta_v_estimates: Vec<f64>,
    /// e^γ (√v − 1)², the conjectured values of the minima.
    pub delta_v_bounds: Vec<f64>,
    pub max_gap: (u64, u64),
    /// c in max gap ≈ c φ(q) ln x ln₂x ln₄x / (ln₃x)², over the record gaps;
    /// undefined below x ≈ 3.8·10⁶.
    pub large_gap_constant: Option<f64>,
}

pub fn ap_gap_summary(x: u64, a: u64, q: u64, v_max: usize) -> Result<APGapSummary> {
    if !(1..=3).contains(&v_max) {
        return Err(invalid("v_max", format!("need 1 <= v_max <= 3, got {v_max}")));
    }
    let ps = primes_in_ap(x, a, q)?;
    if ps.len() < v_max + 1 {
        return Err(invalid("x", format!("fewer than {} primes ≡ {a} mod {q} up to {x}", v_max + 1)));
    }
    let phi = euler_phi(q) as f64;
    let step = if q.is_multiple_of(2) { q } else { 2 * q };

    let mut min_gap = u64::MAX;
    let mut exceptional = Vec::new();
    let mut divisible = true;
    let mut max_gap = (ps[0], 0);
    let (mut sg, mut ss) = (0.0, 0.0);
    for w in ps.windows(2) {
        let d = w[1] - w[0];
        if w[0] == 2 {
            exceptional.push((w[0], d));
            continue;
        }
        min_gap = min_gap.min(d);
        divisible &= d % step == 0;
        if d > max_gap.1 {
            max_gap = (w[0], d);
            if let Some(s) = large_gap_shape(w[0] as f64) {
                sg += d as f64 * phi * s;
                ss += (phi * s) * (phi * s);
            }
        }
    }

    let deltas = (1..=v_max)
        .map(|v| {
            ps.windows(v + 1).map(|w| (w[v] - w[0]) as f64 / (phi * (w[0] as f64).ln())).fold(f64::INFINITY, f64::min)
        })
        .collect();
    let bounds = (1..=v_max)
        .map(|v| {
            let r = (v as f64).sqrt() - 1.0;
            EULER_GAMMA.exp() * r * r
        })
        .collect();

    Ok(APGapSummary {
        q,
        a,
        x,
        pi_xaq: ps.len() as u64,
        count_reference: ap_count_reference(x, q),
        avg_gap: x as f64 / ps.len() as f64,
        min_gap,
        exceptional_gaps: exceptional,
        gaps_divisible: divisible,
        least_prime: ps[0],
        delta_v_estimates: deltas,
        delta_v_bounds: bounds,
        max_gap,
        large_gap_constant: (ss > 0.0).then(|| sg / ss),
    })
}

/// Consecutive gaps (qₙ, qₙ₊₁ − qₙ) in the progression.
pub fn ap_gaps(x: u64, a: u64, q: u64) -> Result<Vec<(u64, u64)>> {
    let ps = primes_in_ap(x, a, q)?;
    Ok(ps.windows(2).map(|w| (w[0], w[1] - w[0])).collect())
}
