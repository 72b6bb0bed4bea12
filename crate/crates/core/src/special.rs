//! Scalar special functions shared by the engines.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ln(2π)
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Bernoulli numbers B_2, B_4, …, B_30.
pub const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// B_{2k} / (2k)! for k = 1..=15.
pub(crate) fn bernoulli_over_factorial(k: usize) -> f64 {
    let mut fact = 1.0;
    for j in 1..=(2 * k) {
        fact *= j as f64;
    }
    BERNOULLI_EVEN[k - 1] / fact
}

/// Principal branch of log Γ(z), continuous in the right half-plane.
///
/// Valid for `Re z > 0`. The argument is shifted until `|z| ≥ 15` and the
/// Stirling series is summed; the shift is undone with principal logarithms,
/// each of which stays on the principal branch because `Re(z + k) > 0`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "ln_gamma requires Re z > 0, got {z}");
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=10 {
        let kk = k as f64;
        series += pow * (BERNOULLI_EVEN[k - 1] / (2.0 * kk * (2.0 * kk - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * LN_2PI + series - shift
}

/// Exponential integral Ei(y) for y > 0 by its power series.
pub fn ei(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..500 {
        let kk = k as f64;
        term *= y / kk;
        let add = term / kk;
        sum += add;
        if add < sum * 1e-17 {
            break;
        }
    }
    EULER_GAMMA + y.ln() + sum
}

/// Logarithmic integral li(x) = Ei(ln x), for x > 1.
pub fn li(x: f64) -> f64 {
    ei(x.ln())
}

/// (sin πx / πx)², equal to 1 at the origin.
pub fn sinc_pi_squared(x: f64) -> f64 {
    let y = PI * x;
    if y.abs() < 1e-6 {
        1.0 - y * y / 3.0
    } else {
        let s = y.sin() / y;
        s * s
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// The k-fold iterated natural logarithm, `None` once an intermediate value
/// leaves the domain of the next logarithm.
pub fn iterated_ln(x: f64, k: u32) -> Option<f64> {
    let mut v = x;
    for _ in 0..k {
        if v <= 0.0 {
            return None;
        }
        v = v.ln();
    }
    Some(v)
}
