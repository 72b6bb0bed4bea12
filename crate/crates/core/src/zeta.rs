//! The Riemann–Siegel phase θ(t) and the Hardy function
//! Z(t) = exp(iθ(t)) ζ(1/2 + it).
//!
//! Low on the line ζ is summed directly with Euler–Maclaurin; above
//! [`RIEMANN_SIEGEL_FROM`] the Riemann–Siegel main sum is used together with
//! the correction terms C0 … C4.

use crate::error::{finite, invalid, Result};
use crate::special::{bernoulli_over_factorial, ln_gamma};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Highest ordinate the engine evaluates.
pub const MAX_HEIGHT: f64 = 1.0e5;

/// Height from which Z is evaluated with the Riemann–Siegel formula.
pub const RIEMANN_SIEGEL_FROM: f64 = 500.0;

/// Below this |t| the phase is evaluated through log Γ rather than its
/// asymptotic series.
const THETA_SERIES_FROM: f64 = 10.0;

/// The Riemann–Siegel phase θ(t) = arg Γ(1/4 + it/2) − (t/2) log π.
///
/// θ is odd, negative on (0, g₀) and increasing from t ≈ 6.29 on.
pub fn theta(t: f64) -> Result<f64> {
    finite(t)?;
    Ok(theta_unchecked(t))
}

pub(crate) fn theta_unchecked(t: f64) -> f64 {
    let a = t.abs();
    let v = if a >= THETA_SERIES_FROM {
        theta_series(a)
    } else {
        ln_gamma(Complex64::new(0.25, 0.5 * a)).im - 0.5 * a * PI.ln()
    };
    if t < 0.0 {
        -v
    } else {
        v
    }
}

fn theta_series(t: f64) -> f64 {
    let r = 1.0 / t;
    let r2 = r * r;
    let tail = r
        * (1.0 / 48.0
            + r2 * (7.0 / 5760.0
                + r2 * (31.0 / 80640.0
                    + r2 * (127.0 / 430080.0 + r2 * (511.0 / 1216512.0 + r2 * (1414477.0 / 1476034560.0))))));
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + tail
}

/// The Hardy Z function. Real on the real axis with |Z(t)| = |ζ(1/2 + it)|.
pub fn hardy_z(t: f64) -> Result<f64> {
    finite(t)?;
    if t < 0.0 {
        return Err(invalid("t", format!("must be non-negative, got {t}")));
    }
    if t > MAX_HEIGHT {
        return Err(crate::Error::HeightExceeded(t));
    }
    Ok(hardy_z_unchecked(t))
}

pub(crate) fn hardy_z_unchecked(t: f64) -> f64 {
    if t >= RIEMANN_SIEGEL_FROM {
        riemann_siegel_z(t)
    } else {
        hardy_z_direct(t)
    }
}

/// Z(t) from the Euler–Maclaurin value of ζ(1/2 + it).
pub(crate) fn hardy_z_direct(t: f64) -> f64 {
    let th = theta_unchecked(t);
    let z = zeta_euler_maclaurin(Complex64::new(0.5, t));
    (Complex64::from_polar(1.0, th) * z).re
}

/// ζ(1/2 + it) for any real t, through Z and the phase.
pub fn zeta_on_line(t: f64) -> Result<Complex64> {
    let a = t.abs();
    let z = hardy_z(a)?;
    let v = Complex64::from_polar(z, -theta_unchecked(a));
    Ok(if t < 0.0 { v.conj() } else { v })
}

/// ζ(s) by Euler–Maclaurin summation, for Re s > 0 and s ≠ 1.
pub fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let n = (s.im.abs().ceil() as usize) + 15;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0);
    sum += 0.5 * n_pow;
    // Σ B_2k/(2k)! · s(s+1)…(s+2k-2) · N^(-s-2k+1)
    let mut rising = s;
    let mut pow = n_pow / nf;
    let inv_n2 = 1.0 / (nf * nf);
    for k in 1..=12 {
        let term = rising * pow * bernoulli_over_factorial(k);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        let kk = (2 * k) as f64;
        rising *= (s + (kk - 1.0)) * (s + kk);
        pow *= inv_n2;
    }
    sum
}

/// Riemann–Siegel evaluation of Z with corrections through C4.
pub(crate) fn riemann_siegel_z(t: f64) -> f64 {
    let tau = (t / (2.0 * PI)).sqrt();
    let n = tau.floor() as usize;
    let p = tau - n as f64;
    let th = theta_unchecked(t);
    let mut main = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        main += (th - t * kf.ln()).cos() / kf.sqrt();
    }
    main *= 2.0;

    let z = 2.0 * p - 1.0;
    let w = 1.0 / tau;
    let corr = rs_c0(z) + w * (rs_c1(z) + w * (rs_c2(z) + w * (rs_c3(z) + w * rs_c4(z))));
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    main + sign * corr / tau.sqrt()
}

fn even_series(c: &[f64], z: f64) -> f64 {
    let z2 = z * z;
    c.iter().rev().fold(0.0, |acc, &ck| acc * z2 + ck)
}

fn odd_series(c: &[f64], z: f64) -> f64 {
    z * even_series(c, z)
}

fn rs_c0(z: f64) -> f64 {
    even_series(&C0, z)
}
fn rs_c1(z: f64) -> f64 {
    odd_series(&C1, z)
}
fn rs_c2(z: f64) -> f64 {
    even_series(&C2, z)
}
fn rs_c3(z: f64) -> f64 {
    odd_series(&C3, z)
}
fn rs_c4(z: f64) -> f64 {
    even_series(&C4, z)
}

// Taylor coefficients of the correction functions in z = 2p - 1, generated
// from Ψ(p) = cos(2π(p² - p - 1/16)) / cos(2πp) and its derivatives.
// Even functions list the z^0, z^2, … coefficients; odd ones z^1, z^3, ….
#[allow(clippy::excessive_precision)]
const C0: [f64; 22] = [
    3.8268343236508977173e-1,
    4.3724046807752044936e-1,
    1.3237657548034352332e-1,
    -1.3605026047674188655e-2,
    -1.3567621970103580888e-2,
    -1.6237253231444652829e-3,
    2.9705353733379690783e-4,
    7.943300879521469588e-5,
    4.6556124614504505037e-7,
    -1.4327251630955105754e-6,
    -1.0354847112312946075e-7,
    1.2357927083861738056e-8,
    1.7881083857954904986e-9,
    -3.3914143899270359069e-11,
    -1.6326633902565905101e-11,
    -3.7851093185412203829e-13,
    9.3274232592017248457e-14,
    5.2218430159781368553e-15,
    -3.3506730727442637895e-16,
    -3.4124265228117264941e-17,
    5.7512033414323991603e-19,
    1.4895301363211505455e-19,
];
#[allow(clippy::excessive_precision)]
const C1: [f64; 22] = [
    -2.682510262837534703e-2,
    1.378477342635185305e-2,
    3.8491250482235082229e-2,
    9.871066299062076472e-3,
    -3.3107597608584043329e-3,
    -1.4647808577954150825e-3,
    -1.3207940624876963675e-5,
    5.9227487018471413232e-5,
    5.9802425853734485877e-6,
    -9.6413224561698263527e-7,
    -1.833473372271441176e-7,
    4.4670875627178335996e-9,
    2.7096350821772743217e-9,
    7.7852886543158510463e-11,
    -2.3437626010893688532e-11,
    -1.5830172789987521642e-12,
    1.2119941573723791247e-13,
    1.4583781161108307018e-14,
    -2.8786305258131917505e-16,
    -8.6628629021237241225e-17,
    -8.4307227271370412716e-19,
    3.6308072230973462002e-19,
];
#[allow(clippy::excessive_precision)]
const C2: [f64; 22] = [
    5.1885428302931684938e-3,
    3.0946583880634746033e-4,
    -1.1335941078229373382e-2,
    2.2330457419581447721e-3,
    5.1966374088623302051e-3,
    3.4399144076208336695e-4,
    -5.9106484274705828217e-4,
    -1.0229972547935857454e-4,
    2.0888392216992755408e-5,
    5.9276654930965359579e-6,
    -1.6423838362436275978e-7,
    -1.5161199700940682862e-7,
    -5.9078036982066679629e-9,
    2.0911514859478188978e-9,
    1.7815649583292351054e-10,
    -1.6164072455353830753e-11,
    -2.3806962496667615707e-12,
    5.3982652955425949182e-14,
    1.9750142196969515273e-14,
    2.3332868732882634831e-16,
    -1.1187517610048080208e-16,
    -4.1640094888837671885e-18,
];
#[allow(clippy::excessive_precision)]
const C3: [f64; 22] = [
    -1.3397160907194569043e-3,
    3.7442151363793937047e-3,
    -1.330317891932146812e-3,
    -2.2654660765471787115e-3,
    9.5484999985067304151e-4,
    6.0100384589636039121e-4,
    -1.0128858286776621953e-4,
    -6.8657334492998256425e-5,
    5.9853667915385981593e-7,
    3.331659851239947129e-6,
    2.1919289102435081057e-7,
    -7.8908842456814944106e-8,
    -9.4146850812952621517e-9,
    9.5701162108834803019e-10,
    1.8763137453470662797e-10,
    -4.4378376793233993275e-12,
    -2.2426738505617353248e-12,
    -3.6276868657352436894e-14,
    1.7639809550821581608e-14,
    7.9607652467867777573e-16,
    -9.4196514905896907639e-17,
    -7.1331038545696578245e-18,
];
#[allow(clippy::excessive_precision)]
const C4: [f64; 22] = [
    4.6483389361763381854e-4,
    -1.005660736534047076e-3,
    2.4044856573725793022e-4,
    1.0283086149702321878e-3,
    -7.6578610717556441866e-4,
    -2.0365286803084817621e-4,
    2.3212290491068727895e-4,
    3.2602144243865197608e-5,
    -2.557906251794952514e-5,
    -4.107464438915744754e-6,
    1.1781113640371293881e-6,
    2.4456561422484578542e-7,
    -2.391582476734432243e-8,
    -7.5052142070357552885e-9,
    1.3312279416258428193e-10,
    1.3440626754225619719e-10,
    3.5137700424304859287e-12,
    -1.5191544533703919336e-12,
    -8.9154176814470873055e-14,
    1.1195891165228535773e-14,
    1.0516013329914814964e-15,
    -5.178655273646683671e-17,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_is_odd() {
        for &t in &[5.0, 20.0, 100.0] {
            assert_eq!(theta(-t).unwrap(), -theta(t).unwrap());
        }
        assert_eq!(theta(0.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_rejects_non_finite() {
        assert!(theta(f64::NAN).is_err());
        assert!(theta(f64::INFINITY).is_err());
    }

    #[test]
    fn theta_series_agrees_with_log_gamma_at_switch() {
        for &t in &[10.0, 12.0, 30.0, 250.0] {
            let direct = ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln();
            assert!((direct - theta_series(t)).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn riemann_siegel_agrees_with_euler_maclaurin() {
        let mut worst: f64 = 0.0;
        let mut t = RIEMANN_SIEGEL_FROM;
        while t < 1200.0 {
            let d = (riemann_siegel_z(t) - hardy_z_direct(t)).abs();
            worst = worst.max(d);
            t += 0.731;
        }
        assert!(worst < 1e-9, "worst RS/EM disagreement {worst:e}");
    }

    #[test]
    fn hardy_z_rejects_bad_input() {
        assert!(hardy_z(-1.0).is_err());
        assert!(hardy_z(f64::NAN).is_err());
        assert!(hardy_z(2.0 * MAX_HEIGHT).is_err());
    }

    #[test]
    fn hardy_z_is_modulus_of_zeta() {
        for &t in &[3.0, 20.0, 150.0, 420.0] {
            let z = hardy_z(t).unwrap();
            let zeta = zeta_euler_maclaurin(Complex64::new(0.5, t));
            assert!((z.abs() - zeta.norm()).abs() < 1e-9, "t = {t}");
        }
    }
}
