use super::characters::{euler_phi, DirichletCharacter, Parity};
use crate::error::{invalid, Error, Result};
use crate::isolate::{self, Rotated, ZeroSearch};
use crate::spacing::running_records;
use crate::spacing::{Extreme, SpacingSample};
use crate::special::{bernoulli_over_factorial, ln_gamma};
use crate::zeros::ZetaZero;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest |Im s| accepted by [`l_eval`].
pub const MAX_L_HEIGHT: f64 = 1.0e3;

/// Largest modulus for which zeros are computed.
pub const MAX_L_ZERO_MODULUS: u64 = 11;

const BERNOULLI_TERMS: usize = 12;

/// L(s, χ) for a non-principal χ, 0 < Re s ≤ 1.5, |Im s| ≤ 10³.
pub fn l_eval(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter(chi.q));
    }
    if !(s.re.is_finite() && s.im.is_finite()) || s.re <= 0.0 || s.re > 1.5 {
        return Err(invalid("s", format!("need 0 < Re s <= 1.5, got {s}")));
    }
    if s.im.abs() > MAX_L_HEIGHT {
        return Err(Error::HeightExceeded(s.im));
    }
    Ok(l_eval_unchecked(s, chi))
}

/// E(w, L) = (e^{wL} − 1)/w, continuous at w = 0.
fn expm1_over(w: Complex64, l: f64) -> Complex64 {
    let z = w * l;
    if z.norm() < 1e-3 {
        // l (1 + z/2 + z²/6 + z³/24 + z⁴/120)
        l * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))))
    } else {
        (z.exp() - 1.0) / w
    }
}

pub(crate) fn l_eval_unchecked(s: Complex64, chi: &DirichletCharacter) -> Complex64 {
    let q = chi.q;
    let qf = q as f64;
    let m = q * (s.im.abs().ceil() as u64 + 15);
    let values = chi.values();

    let mut head = Complex64::new(0.0, 0.0);
    for n in 1..=m {
        let c = values[(n % q) as usize];
        if c.re != 0.0 || c.im != 0.0 {
            head += c * (-s * (n as f64).ln()).exp();
        }
    }

    let w = 1.0 - s;
    let mut tail = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let c = values[(a % q) as usize];
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let x0 = (m + a) as f64;
        let lx = x0.ln();
        let f0 = (-s * lx).exp();
        let mut acc = -expm1_over(w, lx) / qf + 0.5 * f0;
        // B_2k/(2k)! · s(s+1)…(s+2k−2) · q^{2k−1} · x0^{−s−2k+1}
        let mut rising = s;
        let mut scale = f0 * (qf / x0);
        let r2 = (qf / x0) * (qf / x0);
        for k in 1..=BERNOULLI_TERMS {
            let term = rising * scale * bernoulli_over_factorial(k);
            acc += term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
            let kk = (2 * k) as f64;
            rising *= (s + (kk - 1.0)) * (s + kk);
            scale *= r2;
        }
        tail += c * acc;
    }
    head + tail
}

/// Root number ε(χ) = τ(χ) / (i^κ √q) of a primitive character.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    let tau = chi.gauss_sum();
    let sq = (chi.q as f64).sqrt();
    if (tau.norm() - sq).abs() > 1e-9 * sq {
        return Err(Error::RootNumber { q: chi.q, index: chi.index, modulus: tau.norm(), expected: sq });
    }
    let i_kappa = match chi.parity {
        Parity::Even => Complex64::new(1.0, 0.0),
        Parity::Odd => Complex64::new(0.0, 1.0),
    };
    Ok(tau / (i_kappa * sq))
}

/// exp(iθ_χ(t)) L(1/2 + it, χ), real for primitive χ.
pub(crate) struct RotatedL {
    chi: DirichletCharacter,
    kappa: f64,
    half_arg_eps: f64,
    log_q_over_pi: f64,
    monotone_from: f64,
}

impl RotatedL {
    pub(crate) fn new(chi: &DirichletCharacter) -> Result<Self> {
        if chi.is_principal() {
            return Err(Error::PrincipalCharacter(chi.q));
        }
        if !chi.primitive {
            return Err(Error::ImprimitiveCharacter { q: chi.q, index: chi.index, conductor: chi.conductor });
        }
        let eps = root_number(chi)?;
        let kappa = if chi.parity == Parity::Odd { 1.0 } else { 0.0 };
        let mut f = RotatedL {
            chi: chi.clone(),
            kappa,
            half_arg_eps: 0.5 * eps.arg(),
            log_q_over_pi: (chi.q as f64 / PI).ln(),
            monotone_from: 0.0,
        };
        f.monotone_from = isolate::theta_minimum(|t| f.theta(t), 40.0);
        Ok(f)
    }
}

impl Rotated for RotatedL {
    fn theta(&self, t: f64) -> f64 {
        0.5 * t * self.log_q_over_pi + ln_gamma(Complex64::new(0.5 * (0.5 + self.kappa), 0.5 * t)).im
            - self.half_arg_eps
    }
    fn z(&self, t: f64) -> f64 {
        let l = l_eval_unchecked(Complex64::new(0.5, t), &self.chi);
        (Complex64::from_polar(1.0, self.theta(t)) * l).re
    }
    fn monotone_from(&self) -> f64 {
        self.monotone_from
    }
    fn index_after_gram(&self, _j: i64) -> Option<i64> {
        None
    }
}

/// The rotated real function Z_χ(t).
pub fn hardy_z_chi(chi: &DirichletCharacter, t: f64) -> Result<f64> {
    if !(0.0..=MAX_L_HEIGHT).contains(&t) {
        return Err(invalid("t", format!("need 0 <= t <= {MAX_L_HEIGHT}, got {t}")));
    }
    Ok(RotatedL::new(chi)?.z(t))
}

/// Zeros 1/2 + iγ of L(s, χ) with γ in [t_lo, t_hi), numbered from γ > 0.
pub fn find_l_zeros(chi: &DirichletCharacter, t_lo: f64, t_hi: f64, tol: f64) -> Result<ZeroSearch<ZetaZero>> {
    if chi.q > MAX_L_ZERO_MODULUS {
        return Err(invalid("q", format!("L-zeros are computed for q <= {MAX_L_ZERO_MODULUS}, got {}", chi.q)));
    }
    if t_hi > MAX_L_HEIGHT {
        return Err(Error::HeightExceeded(t_hi));
    }
    let f = RotatedL::new(chi)?;
    let s = isolate::search(&f, t_lo, t_hi, tol)?;
    Ok(ZeroSearch { zeros: s.zeros.into_iter().map(ZetaZero::from).collect(), flagged: s.flagged })
}

/// (T/2π) ln(qT/2π) − T/2π.
pub fn l_zero_count_main_term(q: u64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(invalid("T", format!("must be positive, got {t}")));
    }
    let u = t / (2.0 * PI);
    Ok(u * (q as f64 * u).ln() - u)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LCountCheck {
    pub q: u64,
    pub t: f64,
    pub found: usize,
    pub expected: f64,
    pub residual: f64,
    pub within_two: bool,
}

pub fn verify_l_count(zeros: &[ZetaZero], q: u64, t: f64) -> Result<LCountCheck> {
    let found = zeros.iter().filter(|z| z.gamma <= t).count();
    let expected = l_zero_count_main_term(q, t)?;
    let residual = found as f64 - expected;
    Ok(LCountCheck { q, t, found, expected, residual, within_two: residual.abs() < 2.0 })
}

/// (γₙ₊₁ − γₙ) ln(qγₙ/2π) / 2π for consecutive L-zeros.
pub fn normalize_l_spacings(zeros: &[ZetaZero], q: u64) -> Result<Vec<SpacingSample>> {
    if zeros.len() < 2 {
        return Err(invalid("zeros", "need at least two zeros"));
    }
    zeros
        .windows(2)
        .map(|w| {
            let raw = w[1].gamma - w[0].gamma;
            if !(raw > 0.0) {
                return Err(invalid("zeros", format!("not strictly ascending at index {}", w[0].index)));
            }
            Ok(SpacingSample {
                n: w[0].index,
                gamma_n: w[0].gamma,
                raw,
                delta: raw * (q as f64 * w[0].gamma / (2.0 * PI)).ln() / (2.0 * PI),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct APDualityRow {
    pub n: u64,
    /// n-th prime ≡ a (mod q)
    pub q_n: u64,
    /// n-th zero of L(s, χ)
    pub gamma_n: f64,
    /// qₙ · 2π / (φ(q) γₙ ln²n)
    pub ratio: f64,
    /// (γₙ₊₁ − γₙ) ln(qγₙ/2π) / 2π
    pub delta: f64,
    /// (γₙ₊₁ − γₙ) ln γₙ / 2π, the alternative normaliser.
    pub delta_log_gamma: f64,
    /// qₙ₊₁ − qₙ against (γₙ₊₁ − γₙ) φ(q) ln²n / 2π.
    pub prime_gap: u64,
    pub transfer_bound: f64,
    /// 4πq / (φ(q) ln²γₙ), the lower bound for γₙ₊₁ − γₙ.
    pub separation_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct APDualityDecade {
    pub n_lo: u64,
    pub n_hi: u64,
    pub count: usize,
    pub mean_ratio: f64,
    pub transfer_violation_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct APDualityReport {
    pub q: u64,
    pub a: u64,
    pub chi_index: usize,
    pub rows: Vec<APDualityRow>,
    pub decades: Vec<APDualityDecade>,
    pub mean_delta: f64,
    pub min_delta: Option<Extreme>,
    pub max_delta: Option<Extreme>,
    /// Rows with γₙ₊₁ − γₙ below the separation bound.
    pub separation_violations: usize,
}

/// Pair the primes ≡ a (mod q) with the zeros of L(s, χ) by index over
/// `n_lo ..= n_hi`, clipped to what both lists provide.
pub fn ap_duality_probe(
    q: u64,
    a: u64,
    chi: &DirichletCharacter,
    n_lo: u64,
    n_hi: u64,
    ap_primes: &[u64],
    l_zeros: &[ZetaZero],
) -> Result<APDualityReport> {
    if chi.q != q {
        return Err(invalid("chi", format!("character is mod {}, not mod {q}", chi.q)));
    }
    if let Some(p) = ap_primes.iter().find(|&&p| p % q != a % q) {
        return Err(invalid("ap_primes", format!("{p} is not ≡ {a} mod {q}")));
    }
    let phi = euler_phi(q) as f64;
    let have = ap_primes.len().min(l_zeros.len()) as u64;
    let lo = n_lo.max(2);
    let hi = n_hi.min(have.saturating_sub(1));
    let mut report = APDualityReport { q, a, chi_index: chi.index, ..Default::default() };
    if lo > hi {
        return Ok(report);
    }
    for n in lo..=hi {
        let i = n as usize - 1;
        let (g, g1) = (l_zeros[i].gamma, l_zeros[i + 1].gamma);
        let ln = (n as f64).ln();
        let raw = g1 - g;
        let lg = g.ln();
        report.rows.push(APDualityRow {
            n,
            q_n: ap_primes[i],
            gamma_n: g,
            ratio: ap_primes[i] as f64 * 2.0 * PI / (phi * g * ln * ln),
            delta: raw * (q as f64 * g / (2.0 * PI)).ln() / (2.0 * PI),
            delta_log_gamma: raw * lg / (2.0 * PI),
            prime_gap: ap_primes[i + 1] - ap_primes[i],
            transfer_bound: raw * phi * ln * ln / (2.0 * PI),
            separation_bound: 4.0 * PI * q as f64 / (phi * lg * lg),
        });
    }
    let rows = &report.rows;
    report.mean_delta = rows.iter().map(|r| r.delta).sum::<f64>() / rows.len() as f64;
    let samples: Vec<SpacingSample> =
        rows.iter().map(|r| SpacingSample { n: r.n, gamma_n: r.gamma_n, raw: 0.0, delta: r.delta }).collect();
    report.min_delta = running_records(&samples, true).last().copied();
    report.max_delta = running_records(&samples, false).last().copied();
    report.separation_violations = rows
        .iter()
        .zip(l_zeros[lo as usize..].iter().zip(&l_zeros[lo as usize - 1..]))
        .filter(|(r, (next, cur))| next.gamma - cur.gamma < r.separation_bound)
        .count();

    let mut start = 0;
    while start < rows.len() {
        let d = 10u64.pow((rows[start].n as f64).log10().floor() as u32);
        let end = rows[start..].iter().position(|r| r.n >= d * 10).map_or(rows.len(), |k| start + k);
        let chunk = &rows[start..end];
        let c = chunk.len() as f64;
        report.decades.push(APDualityDecade {
            n_lo: d,
            n_hi: d * 10,
            count: chunk.len(),
            mean_ratio: chunk.iter().map(|r| r.ratio).sum::<f64>() / c,
            transfer_violation_fraction: chunk.iter().filter(|r| r.prime_gap as f64 > r.transfer_bound).count() as f64
                / c,
        });
        start = end;
    }
    Ok(report)
}
