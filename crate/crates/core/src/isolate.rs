//! Zero isolation for rotated real-valued functions on the critical line.
//!
//! The search works Gram block by Gram block. A Gram point gₙ solves
//! θ(gₙ) = nπ; it is good when (−1)ⁿ Z(gₙ) > 0. Between consecutive good
//! Gram points gⱼ < gₖ one expects k − j zeros. Blocks whose sign changes fall
//! short are subdivided, and blocks that stay short are flagged.
//!
//! Every sample point depends only on the block it belongs to, so searching
//! two adjacent ranges and concatenating gives exactly the result of one
//! search over their union.

use crate::error::{invalid, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

type BlockOutcome = (Vec<(f64, f64)>, Option<FlaggedBlock>);

/// Real-valued rotation of an L-function on the critical line.
pub(crate) trait Rotated: Sync {
    fn theta(&self, t: f64) -> f64;
    fn z(&self, t: f64) -> f64;
    /// Start of the range on which θ is increasing.
    fn monotone_from(&self) -> f64;
    /// Index of the first zero above the good Gram point gⱼ, when a closed
    /// form is known. Without it, zeros are numbered by counting from 0.
    fn index_after_gram(&self, j: i64) -> Option<i64>;
}

/// A Gram block in which fewer sign changes were found than expected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedBlock {
    pub start: f64,
    pub end: f64,
    pub expected: usize,
    pub found: usize,
}

/// Zeros found in a range, with any blocks that could not be resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSearch<Z> {
    pub zeros: Vec<Z>,
    pub flagged: Vec<FlaggedBlock>,
}

impl<Z> ZeroSearch<Z> {
    pub fn is_clean(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// An isolated zero before it is wrapped into a public type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RawZero {
    pub index: u64,
    pub gamma: f64,
    pub uncertainty: f64,
}

const PRE_GRAM_STEP: f64 = 0.05;
const SUBDIVISION: usize = 8;
const SUBDIVISION_ROUNDS: usize = 3;

/// Solve θ(t) = nπ on the increasing branch by bisection to full precision.
pub(crate) fn gram_point<F: Rotated + ?Sized>(f: &F, n: i64) -> f64 {
    let target = n as f64 * std::f64::consts::PI;
    let mut lo = f.monotone_from();
    let mut hi = lo + 8.0;
    while f.theta(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return hi;
        }
        if f.theta(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Location of the minimum of θ on `[0, upper]` by golden-section search.
pub(crate) fn theta_minimum<F: Fn(f64) -> f64>(theta: F, upper: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, upper);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (theta(c), theta(d));
    while b - a > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = theta(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = theta(d);
        }
    }
    0.5 * (a + b)
}

fn first_gram_index<F: Rotated + ?Sized>(f: &F) -> i64 {
    let m = f.monotone_from();
    (f.theta(m) / std::f64::consts::PI).floor() as i64 + 1
}

fn is_good(n: i64, z: f64) -> bool {
    if n.rem_euclid(2) == 0 {
        z > 0.0
    } else {
        z < 0.0
    }
}

struct GramSample {
    n: i64,
    t: f64,
    z: f64,
}

fn sample_gram<F: Rotated + ?Sized>(f: &F, n: i64) -> GramSample {
    let t = gram_point(f, n);
    GramSample { n, t, z: f.z(t) }
}

/// Find every zero with ordinate in `[lo, hi)`.
pub(crate) fn search<F: Rotated + ?Sized>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<ZeroSearch<RawZero>> {
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
        return Err(invalid("range", format!("need 0 <= t_lo <= t_hi, got [{lo}, {hi}]")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(invalid("tol", format!("must be positive, got {tol}")));
    }
    if tol < 4.0 * f64::EPSILON * hi.max(1.0) {
        return Err(invalid("tol", format!("{tol:e} is below the resolution of f64 at t = {hi}")));
    }
    if lo == hi {
        return Ok(ZeroSearch { zeros: Vec::new(), flagged: Vec::new() });
    }

    let numbered = f.index_after_gram(0).is_some();
    let lo_eff = if numbered { lo } else { 0.0 };

    let j0 = first_good_gram(f, first_gram_index(f));
    let g0 = gram_point(f, j0);
    let mut zeros = Vec::new();
    let mut flagged = Vec::new();

    if lo_eff < g0 {
        let steps = (g0 / PRE_GRAM_STEP).ceil().max(1.0) as usize;
        let h = g0 / steps as f64;
        let pts: Vec<(f64, f64)> = (0..=steps)
            .into_par_iter()
            .map(|i| {
                let t = if i == steps { g0 } else { i as f64 * h };
                (t, f.z(t))
            })
            .collect();
        for (a, b) in sign_changes(&pts) {
            let (gamma, unc) = bisect(f, a, b, tol);
            zeros.push(RawZero { index: zeros.len() as u64 + 1, gamma, uncertainty: unc });
        }
    }

    if hi > g0 {
        let start = if lo_eff <= g0 {
            j0
        } else {
            let guess = ((f.theta(lo_eff) / std::f64::consts::PI).floor() as i64).max(j0);
            last_good_gram_at_or_below(f, guess, j0)
        };
        let guess_end = ((f.theta(hi) / std::f64::consts::PI).ceil() as i64).max(start + 1);
        let end = first_good_gram(f, guess_end);

        let samples: Vec<GramSample> = (start..=end).into_par_iter().map(|n| sample_gram(f, n)).collect();
        let good: Vec<usize> = samples.iter().enumerate().filter(|(_, s)| is_good(s.n, s.z)).map(|(i, _)| i).collect();

        let results: Vec<BlockOutcome> = good
            .par_windows(2)
            .map(|w| {
                let block = &samples[w[0]..=w[1]];
                let pts: Vec<(f64, f64)> = block.iter().map(|s| (s.t, s.z)).collect();
                resolve_block(f, pts, w[1] - w[0], tol)
            })
            .collect();

        let mut next_seq = zeros.len() as i64 + 1;
        for (w, (found, flag)) in good.windows(2).zip(results) {
            let j = samples[w[0]].n;
            let mut index = f.index_after_gram(j).unwrap_or(next_seq);
            for (gamma, unc) in found {
                zeros.push(RawZero { index: index as u64, gamma, uncertainty: unc });
                index += 1;
            }
            next_seq = index;
            if let Some(b) = flag {
                flagged.push(b);
            }
        }
    }

    zeros.retain(|z| z.gamma >= lo && z.gamma < hi);
    flagged.retain(|b| b.end > lo && b.start < hi);
    Ok(ZeroSearch { zeros, flagged })
}

fn first_good_gram<F: Rotated + ?Sized>(f: &F, from: i64) -> i64 {
    let mut n = from;
    loop {
        let s = sample_gram(f, n);
        if is_good(n, s.z) {
            return n;
        }
        n += 1;
    }
}

fn last_good_gram_at_or_below<F: Rotated + ?Sized>(f: &F, from: i64, floor: i64) -> i64 {
    let mut n = from;
    while n > floor {
        let s = sample_gram(f, n);
        if is_good(n, s.z) {
            return n;
        }
        n -= 1;
    }
    floor
}

fn sign_changes(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    pts.windows(2).filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0)).map(|w| (w[0].0, w[1].0)).collect()
}

fn resolve_block<F: Rotated + ?Sized>(
    f: &F,
    mut pts: Vec<(f64, f64)>,
    expected: usize,
    tol: f64,
) -> (Vec<(f64, f64)>, Option<FlaggedBlock>) {
    let mut brackets = sign_changes(&pts);
    let mut round = 0;
    while brackets.len() < expected && round < SUBDIVISION_ROUNDS {
        let mut finer = Vec::with_capacity(pts.len() * SUBDIVISION);
        for w in pts.windows(2) {
            let (a, za) = w[0];
            let b = w[1].0;
            finer.push((a, za));
            for i in 1..SUBDIVISION {
                let t = a + (b - a) * i as f64 / SUBDIVISION as f64;
                finer.push((t, f.z(t)));
            }
        }
        finer.push(*pts.last().expect("block has two endpoints"));
        pts = finer;
        brackets = sign_changes(&pts);
        round += 1;
    }
    let flag = (brackets.len() < expected).then(|| FlaggedBlock {
        start: pts[0].0,
        end: pts[pts.len() - 1].0,
        expected,
        found: brackets.len(),
    });
    let zeros = brackets.into_iter().map(|(a, b)| bisect(f, a, b, tol)).collect();
    (zeros, flag)
}

/// Shrink a sign-change bracket to half-width at most `tol`.
fn bisect<F: Rotated + ?Sized>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let positive_at_a = f.z(a) > 0.0;
    while 0.5 * (b - a) > tol {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        if (f.z(m) > 0.0) == positive_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    (a + 0.5 * (b - a), 0.5 * (b - a))
}
