//! Segmented sieve, prime-gap streams and gap statistics.

use crate::error::{invalid, Error, Result};
use crate::special::{iterated_ln, EULER_GAMMA};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest integer the sieve will touch.
pub const SIEVE_CEILING: u64 = 1_000_000_000;

/// Odd numbers per segment.
pub const SEGMENT_ODDS: usize = 1 << 20;

/// Segments sieved in parallel per batch when streaming.
const BATCH: usize = 8;

/// The maximal-gap event (p, gap) observed once x reaches p + gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeGapRecord {
    pub p: u64,
    pub gap: u64,
    pub x_at: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub x: u64,
    pub pi_x: u64,
    pub avg_gap: f64,
    pub max_record: PrimeGapRecord,
    /// gap / ln²p at the maximal gap.
    pub cramer_stat: f64,
    /// The conjectured limsup 1 and the modern expectation 2e^(−γ).
    pub cramer_reference: (f64, f64),
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if hi > SIEVE_CEILING {
        return Err(Error::CeilingExceeded { lo, hi, ceiling: SIEVE_CEILING });
    }
    if lo > hi {
        return Err(invalid("range", format!("lo {lo} > hi {hi}")));
    }
    Ok(())
}

/// Odd primes up to `limit` by a plain sieve.
fn base_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes among the `count` odd numbers start, start + 2, … (start odd, ≥ 3).
fn sieve_odds(start: u64, count: usize, base: &[u64]) -> Vec<u64> {
    let words = count.div_ceil(64);
    let mut bits = vec![0u64; words];
    let end = start + 2 * count as u64;
    for &p in base {
        let pp = p * p;
        if pp >= end {
            break;
        }
        let mut m = if pp >= start { pp } else { start.div_ceil(p) * p };
        if m % 2 == 0 {
            m += p;
        }
        let mut i = ((m - start) / 2) as usize;
        while i < count {
            bits[i >> 6] |= 1 << (i & 63);
            i += p as usize;
        }
    }
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut free = !word;
        while free != 0 {
            let b = free.trailing_zeros() as usize;
            let i = (w << 6) | b;
            if i >= count {
                break;
            }
            out.push(start + 2 * i as u64);
            free &= free - 1;
        }
    }
    out
}

/// Odd-number segments covering [lo, hi]: (first odd, number of odds).
fn odd_segments(lo: u64, hi: u64) -> Vec<(u64, usize)> {
    let mut first = lo.max(3);
    if first.is_multiple_of(2) {
        first += 1;
    }
    let mut segs = Vec::new();
    while first <= hi {
        let remaining = ((hi - first) / 2 + 1) as usize;
        let count = remaining.min(SEGMENT_ODDS);
        segs.push((first, count));
        first += 2 * count as u64;
    }
    segs
}

/// Exactly the primes in `[lo, hi]`, ascending.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<Vec<u64>> {
    check_range(lo, hi)?;
    let base = base_primes(isqrt(hi));
    let mut out = Vec::new();
    if lo <= 2 && hi >= 2 {
        out.push(2);
    }
    let parts: Vec<Vec<u64>> = odd_segments(lo, hi).par_iter().map(|&(s, c)| sieve_odds(s, c, &base)).collect();
    out.extend(parts.into_iter().flatten());
    Ok(out)
}

/// All primes up to `x`.
pub fn primes_up_to(x: u64) -> Result<Vec<u64>> {
    sieve_segment(2, x)
}

/// The primes ≤ x_max in order, sieved a batch of segments at a time.
pub struct PrimeStream {
    x_max: u64,
    base: Vec<u64>,
    next_odd: u64,
    buf: Vec<u64>,
    pos: usize,
    emitted_two: bool,
}

impl PrimeStream {
    pub fn new(x_max: u64) -> Result<Self> {
        check_range(2, x_max.max(2))?;
        Ok(PrimeStream {
            x_max,
            base: base_primes(isqrt(x_max)),
            next_odd: 3,
            buf: Vec::new(),
            pos: 0,
            emitted_two: x_max < 2,
        })
    }

    fn refill(&mut self) -> bool {
        let mut segs = Vec::with_capacity(BATCH);
        let mut first = self.next_odd;
        while segs.len() < BATCH && first <= self.x_max {
            let remaining = ((self.x_max - first) / 2 + 1) as usize;
            let count = remaining.min(SEGMENT_ODDS);
            segs.push((first, count));
            first += 2 * count as u64;
        }
        self.next_odd = first;
        if segs.is_empty() {
            return false;
        }
        let base = &self.base;
        let parts: Vec<Vec<u64>> = segs.par_iter().map(|&(s, c)| sieve_odds(s, c, base)).collect();
        self.buf.clear();
        self.buf.extend(parts.into_iter().flatten());
        self.pos = 0;
        true
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            return Some(2);
        }
        while self.pos >= self.buf.len() {
            if !self.refill() {
                return None;
            }
        }
        let p = self.buf[self.pos];
        self.pos += 1;
        Some(p)
    }
}

/// Consecutive prime gaps (pₙ, pₙ₊₁ − pₙ) with pₙ₊₁ ≤ x_max.
pub fn gap_stream(x_max: u64) -> Result<impl Iterator<Item = (u64, u64)>> {
    let mut primes = PrimeStream::new(x_max)?;
    let mut prev = primes.next();
    Ok(std::iter::from_fn(move || {
        let p = prev?;
        let q = primes.next()?;
        prev = Some(q);
        Some((p, q - p))
    }))
}

/// Running maximal gaps up to x_max.
pub fn gap_records(x_max: u64) -> Result<Vec<PrimeGapRecord>> {
    let mut out: Vec<PrimeGapRecord> = Vec::new();
    for (p, gap) in gap_stream(x_max)? {
        if out.last().is_none_or(|r| gap > r.gap) {
            out.push(PrimeGapRecord { p, gap, x_at: p + gap });
        }
    }
    Ok(out)
}

/// π(x), the average gap x/π(x) and the maximal gap, in one pass.
pub fn gap_summary(x: u64) -> Result<GapSummary> {
    if x < 10 {
        return Err(invalid("x", format!("must be at least 10, got {x}")));
    }
    let mut pi_x = 1;
    let mut best = PrimeGapRecord { p: 2, gap: 1, x_at: 3 };
    for (p, gap) in gap_stream(x)? {
        pi_x += 1;
        if gap > best.gap {
            best = PrimeGapRecord { p, gap, x_at: p + gap };
        }
    }
    let lp = (best.p as f64).ln();
    Ok(GapSummary {
        x,
        pi_x,
        avg_gap: x as f64 / pi_x as f64,
        max_record: best,
        cramer_stat: best.gap as f64 / (lp * lp),
        cramer_reference: (1.0, 2.0 * (-EULER_GAMMA).exp()),
    })
}

/// Records of dₙ / ln pₙ, the merit of a gap.
pub fn merit_records(x_max: u64) -> Result<Vec<(u64, u64, f64)>> {
    let mut out: Vec<(u64, u64, f64)> = Vec::new();
    for (p, gap) in gap_stream(x_max)? {
        if p < 3 {
            continue;
        }
        let merit = gap as f64 / (p as f64).ln();
        if out.last().is_none_or(|r| merit > r.2) {
            out.push((p, gap, merit));
        }
    }
    Ok(out)
}

/// ln x · ln₂x · ln₄x / (ln₃x)², the large-gap shape. `None` where ln₄x ≤ 0.
pub fn large_gap_shape(x: f64) -> Option<f64> {
    let l1 = iterated_ln(x, 1)?;
    let l2 = iterated_ln(x, 2)?;
    let l3 = iterated_ln(x, 3)?;
    let l4 = iterated_ln(x, 4)?;
    (l4 > 0.0 && l3 > 0.0).then(|| l1 * l2 * l4 / (l3 * l3))
}

/// Least-squares constant c in gap ≈ c · shape(p) over records where the
/// shape is defined.
pub fn fit_large_gap_constant(records: &[PrimeGapRecord]) -> Option<f64> {
    let (mut sg, mut ss) = (0.0, 0.0);
    for r in records {
        if let Some(s) = large_gap_shape(r.p as f64) {
            sg += r.gap as f64 * s;
            ss += s * s;
        }
    }
    (ss > 0.0).then(|| sg / ss)
}

/// A run of consecutive composites with a divisor exhibited for each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeRun {
    pub start: u64,
    pub length: u64,
    /// witnesses[i] is a proper divisor of start + i.
    pub witnesses: Vec<u64>,
}

impl CompositeRun {
    fn checked(start: u64, witnesses: Vec<u64>) -> Result<Self> {
        for (i, &w) in witnesses.iter().enumerate() {
            let m = start + i as u64;
            if w < 2 || w >= m || !m.is_multiple_of(w) {
                return Err(Error::Consistency(format!("{w} does not witness {m} composite")));
            }
        }
        Ok(CompositeRun { start, length: witnesses.len() as u64, witnesses })
    }
}

/// n! + 2, …, n! + n: k divides n! + k.
pub fn composite_run_factorial(n: u64) -> Result<CompositeRun> {
    if !(2..=20).contains(&n) {
        return Err(invalid("n", format!("need 2 <= n <= 20 for 64-bit n!, got {n}")));
    }
    let f: u64 = (2..=n).product();
    CompositeRun::checked(f + 2, (2..=n).collect())
}

/// pₙ# + 2, …, pₙ# + pₙ: every k in 2..=pₙ shares a prime factor with pₙ#.
pub fn composite_run_primorial(n: u64) -> Result<CompositeRun> {
    if n == 0 {
        return Err(invalid("n", "primorial index starts at 1"));
    }
    let primes = sieve_segment(2, 100)?;
    if n as usize > primes.len() {
        return Err(Error::Overflow(format!("p_{n}# does not fit in 64 bits")));
    }
    let ps = &primes[..n as usize];
    let mut prim: u64 = 1;
    for &p in ps {
        prim = prim.checked_mul(p).ok_or_else(|| Error::Overflow(format!("p_{n}# does not fit in 64 bits")))?;
    }
    let pn = ps[ps.len() - 1];
    let start =
        prim.checked_add(pn).ok_or_else(|| Error::Overflow(format!("p_{n}# + p_{n} does not fit in 64 bits")))? - pn
            + 2;
    let witnesses = (2..=pn).map(|k| *ps.iter().find(|&&p| k % p == 0).expect("k has a prime factor <= pn")).collect();
    CompositeRun::checked(start, witnesses)
}

/// Run length divided by the size ln x / ln ln x (factorial) or ln x
/// (primorial) with x the run's start.
pub fn composite_run_ratio(run: &CompositeRun, primorial: bool) -> f64 {
    let lx = (run.start as f64).ln();
    let size = if primorial { lx } else { lx / lx.ln() };
    run.length as f64 / size
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert_eq!(sieve_segment(1, 10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_segment(2, 2).unwrap(), vec![2]);
        assert_eq!(sieve_segment(24, 28).unwrap(), Vec::<u64>::new());
        assert_eq!(sieve_segment(89, 97).unwrap(), vec![89, 97]);
        assert_eq!(sieve_segment(1000, 1000 + 20).unwrap(), vec![1009, 1013, 1019]);
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(sieve_segment(2, SIEVE_CEILING + 1), Err(Error::CeilingExceeded { .. })));
        assert!(sieve_segment(10, 5).is_err());
    }

    #[test]
    fn segment_boundaries() {
        // A range spanning several full segments.
        let hi = 3 * 2 * SEGMENT_ODDS as u64 + 12345;
        let all = primes_up_to(hi).unwrap();
        let streamed: Vec<u64> = PrimeStream::new(hi).unwrap().collect();
        assert_eq!(all, streamed);
        let cut = 2 * SEGMENT_ODDS as u64 + 1;
        let mut joined = sieve_segment(2, cut).unwrap();
        joined.extend(sieve_segment(cut + 1, hi).unwrap());
        assert_eq!(joined, all);
    }

    #[test]
    fn first_gaps() {
        let g: Vec<(u64, u64)> = gap_stream(100).unwrap().collect();
        assert_eq!(g[0], (2, 1));
        assert_eq!(g[3], (7, 4));
        assert_eq!(g.iter().max_by_key(|x| x.1).unwrap(), &(89, 8));
    }

    #[test]
    fn summaries() {
        let s = gap_summary(100).unwrap();
        assert_eq!(s.pi_x, 25);
        assert_eq!(s.avg_gap, 4.0);
        assert_eq!((s.max_record.p, s.max_record.gap), (89, 8));
        assert!((s.cramer_stat - 0.397).abs() < 1e-3);
        let s = gap_summary(10).unwrap();
        assert_eq!(s.max_record.gap, 2);
        assert!(gap_summary(9).is_err());
    }

    #[test]
    fn factorial_runs() {
        let r = composite_run_factorial(4).unwrap();
        assert_eq!((r.start, r.length), (26, 3));
        let r = composite_run_factorial(2).unwrap();
        assert_eq!((r.start, r.length), (4, 1));
        let r = composite_run_factorial(10).unwrap();
        assert_eq!((r.start, r.length), (3_628_802, 9));
        assert!(composite_run_factorial(21).is_err());
        assert!(composite_run_factorial(20).is_ok());
    }

    #[test]
    fn primorial_runs() {
        let r = composite_run_primorial(3).unwrap();
        assert_eq!((r.start, r.length), (32, 4));
        let r = composite_run_primorial(1).unwrap();
        assert_eq!((r.start, r.length), (4, 1));
        let r = composite_run_primorial(4).unwrap();
        assert_eq!((r.start, r.length), (212, 6));
        assert!(composite_run_primorial(15).is_ok());
        assert!(matches!(composite_run_primorial(16), Err(Error::Overflow(_))));
    }

    #[test]
    fn shape_needs_four_logs() {
        assert!(large_gap_shape(1e6).is_none());
        assert!(large_gap_shape(1e7).is_some());
    }
}
