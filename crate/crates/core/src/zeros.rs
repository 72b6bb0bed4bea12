//! Zeros of ζ on the critical line and their completeness check.

use crate::error::{invalid, Error, Result};
use crate::isolate::{self, RawZero, Rotated, ZeroSearch};
use crate::zeta::{hardy_z_unchecked, theta_unchecked, MAX_HEIGHT};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One nontrivial zero 1/2 + iγ of ζ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    /// 1-based position in the ordered list of zeros.
    pub index: u64,
    pub gamma: f64,
    /// Half-width of the final bracketing interval.
    pub uncertainty: f64,
}

impl From<RawZero> for ZetaZero {
    fn from(r: RawZero) -> Self {
        ZetaZero { index: r.index, gamma: r.gamma, uncertainty: r.uncertainty }
    }
}

/// Outcome of checking a zero list against the Riemann–von Mangoldt count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroVerification {
    pub t_max: f64,
    pub zeros_found: usize,
    pub count_expected: f64,
    /// zeros_found − count_expected, a proxy for S(T).
    pub s_residual: f64,
    /// The largest (in absolute value) mean of N_list(t) − main(t) over the
    /// averaging windows ending at T.
    pub s_mean: f64,
    pub complete: bool,
}

/// θ attains its minimum here; Gram points live to the right of it.
pub(crate) const THETA_MINIMUM: f64 = 6.289_835_988_836_903;

pub(crate) struct HardyZ;

impl Rotated for HardyZ {
    fn theta(&self, t: f64) -> f64 {
        theta_unchecked(t)
    }
    fn z(&self, t: f64) -> f64 {
        hardy_z_unchecked(t)
    }
    fn monotone_from(&self) -> f64 {
        THETA_MINIMUM
    }
    fn index_after_gram(&self, j: i64) -> Option<i64> {
        Some(j + 2)
    }
}

/// The Gram point gₙ, the solution of θ(t) = nπ with t past the minimum of θ.
pub fn gram_point(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(invalid("n", "Gram points are indexed from -1"));
    }
    Ok(isolate::gram_point(&HardyZ, n))
}

/// Every zero with ordinate in `[t_lo, t_hi)`, refined to half-width `tol`.
///
/// Indices are global: the first zero above the good Gram point gⱼ is number
/// j + 2, so a search that starts high up still numbers from γ₁.
pub fn find_zeros(t_lo: f64, t_hi: f64, tol: f64) -> Result<ZeroSearch<ZetaZero>> {
    if t_hi > MAX_HEIGHT {
        return Err(Error::HeightExceeded(t_hi));
    }
    let s = isolate::search(&HardyZ, t_lo, t_hi, tol)?;
    Ok(ZeroSearch { zeros: s.zeros.into_iter().map(ZetaZero::from).collect(), flagged: s.flagged })
}

/// (T/2π) log(T/2π) − T/2π + 7/8.
pub fn count_zeros_main_term(t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 2.0 * PI {
        return Err(invalid("T", format!("main term needs T > 2π, got {t}")));
    }
    Ok(main_term(t))
}

fn main_term(t: f64) -> f64 {
    let u = t / (2.0 * PI);
    u * u.ln() - u + 0.875
}

/// Antiderivative of the main term.
fn main_term_integral(t: f64) -> f64 {
    let u = t / (2.0 * PI);
    2.0 * PI * (0.5 * u * u * u.ln() - 0.75 * u * u + 0.875 * u)
}

/// Shortest averaging window used by the completeness check.
const MIN_WINDOW: f64 = 16.0;

/// Compare a zero list against the smooth count at height `t_max`.
///
/// The list is complete when its indices run 1, 2, … without gaps, the
/// residual at `t_max` is below 2 in absolute value, and the average of
/// N_list(t) − main(t) over each window [T − L, T] (L = (T − 2π)/2ʲ, L ≥ 16)
/// stays below 1/2. A missing zero shifts every window average by up to one.
pub fn verify_count(zeros: &[ZetaZero], t_max: f64) -> ZeroVerification {
    let below: Vec<&ZetaZero> = zeros.iter().filter(|z| z.gamma <= t_max).collect();
    let found = below.len();
    if t_max <= 2.0 * PI {
        return ZeroVerification {
            t_max,
            zeros_found: found,
            count_expected: 0.0,
            s_residual: found as f64,
            s_mean: 0.0,
            complete: found == 0,
        };
    }
    let expected = main_term(t_max);
    let s_residual = found as f64 - expected;

    let indices_ok = below.iter().enumerate().all(|(i, z)| z.index == i as u64 + 1)
        && below.windows(2).all(|w| w[0].gamma < w[1].gamma);

    let s_mean = worst_window(&below, t_max, t_max - 2.0 * PI);
    let windows_ok = s_mean.abs() < 0.5;

    ZeroVerification {
        t_max,
        zeros_found: found,
        count_expected: expected,
        s_residual,
        s_mean,
        complete: indices_ok && s_residual.abs() < 2.0 && windows_ok,
    }
}

fn window_mean(zeros: &[&ZetaZero], a: f64, b: f64) -> f64 {
    let counted: f64 = zeros.iter().filter(|z| z.gamma < b).map(|z| b - z.gamma.max(a)).sum();
    let smooth = main_term_integral(b) - main_term_integral(a);
    (counted - smooth) / (b - a)
}

fn worst_window(zeros: &[&ZetaZero], t_max: f64, span: f64) -> f64 {
    let mut worst: f64 = 0.0;
    let mut len = span;
    loop {
        let m = window_mean(zeros, t_max - len, t_max);
        if m.abs() > worst.abs() {
            worst = m;
        }
        len *= 0.5;
        if len < MIN_WINDOW {
            return worst;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_term_at_100() {
        let m = count_zeros_main_term(100.0).unwrap();
        assert!((m - 29.0).abs() < 0.05, "{m}");
    }

    #[test]
    fn main_term_rejects_small_heights() {
        assert!(count_zeros_main_term(2.0 * PI).is_err());
        assert!(count_zeros_main_term(1.0).is_err());
        assert!(count_zeros_main_term(f64::NAN).is_err());
    }

    #[test]
    fn main_term_integral_differentiates_back() {
        for &t in &[10.0, 100.0, 3000.0] {
            let h = 1e-3;
            let d = (main_term_integral(t + h) - main_term_integral(t - h)) / (2.0 * h);
            assert!((d - main_term(t)).abs() < 1e-5);
        }
    }

    #[test]
    fn empty_list_below_first_zero_is_complete() {
        let v = verify_count(&[], 10.0);
        assert!(v.complete);
        assert_eq!(v.zeros_found, 0);
    }

    #[test]
    fn theta_minimum_matches_golden_section() {
        let m = isolate::theta_minimum(theta_unchecked, 20.0);
        assert!((m - THETA_MINIMUM).abs() < 1e-6, "{m}");
    }

    #[test]
    fn gram_points_are_increasing_and_solve_theta() {
        let g: Vec<f64> = (-1..20).map(|n| gram_point(n).unwrap()).collect();
        for (i, w) in g.windows(2).enumerate() {
            assert!(w[0] < w[1]);
            let n = i as f64 - 1.0;
            assert!((theta_unchecked(w[0]) - n * PI).abs() < 1e-12);
        }
        assert!(gram_point(-2).is_err());
    }
}
