use primezero::duality::*;
use primezero::primes::*;
use primezero::spacing::*;
use primezero::zeros::find_zeros;
use primezero::ZetaZero;
use std::sync::OnceLock;

fn zeros() -> &'static [ZetaZero] {
    static Z: OnceLock<Vec<ZetaZero>> = OnceLock::new();
    Z.get_or_init(|| {
        let s = find_zeros(0.0, 9900.0, 1e-9).unwrap();
        assert!(s.is_clean());
        s.zeros.into_iter().take(10_000).collect()
    })
}

fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(120_000).unwrap())
}

fn gammas() -> Vec<f64> {
    zeros().iter().map(|z| z.gamma).collect()
}

#[test]
fn ten_thousand_zero_spacings() {
    assert_eq!(zeros().len(), 10_000);
    let s = normalize_spacings(zeros()).unwrap();
    assert!((mean_delta(&s) - 1.0).abs() < 0.02);
    let e = extremes_report(&s).unwrap();
    assert!(e.min_delta.delta < 0.52, "{:?}", e.min_delta);
    assert!(e.max_delta.delta > 2.0, "{:?}", e.max_delta);
}

#[test]
fn pair_correlation_follows_gue() {
    let t = zeros().last().unwrap().gamma;
    let p = pair_correlation(zeros(), 0.0, 3.0, t, 12, PairScaling::LogT).unwrap();
    let good = p.bins.iter().filter(|b| (b.density - b.gue).abs() < 0.1).count();
    assert!(good >= 10, "{:?}", p.bins);
    let total: u64 = p.bins.iter().map(|b| b.count).sum();
    assert!(total > 0);
}

#[test]
fn form_factor_at_two_thousand() {
    let f = form_factor(zeros(), 1.5, 2000.0).unwrap();
    assert!(f.imag_is_negligible(), "{f:?}");
    // Above α = 1 only the diagonal survives.
    assert!((f.value - f.diagonal).abs() < 0.15, "{f:?}");
    assert!((f.count_normalized - 1.0).abs() < 0.15, "{f:?}");
}

#[test]
fn spacing_bounds() {
    let s = normalize_spacings(zeros()).unwrap();
    let r = spacing_bound_report(&s).unwrap();
    // Close pairs below 2π/ln²γ, confirmed with an independent high-precision
    // zero list; the middle one is Lehmer's pair near 7005.
    let at: Vec<u64> = r.lower_violations.iter().map(|e| e.n).collect();
    assert_eq!(at, vec![1496, 4765, 6709]);
    assert!(r.upper_exceedances.iter().any(|e| e.n == 1));
    let mins: Vec<f64> = r.separation.iter().map(|d| d.min_scaled).collect();
    assert!(mins.iter().all(|&m| m > 0.0));
    // The per-decade minimum shrinks with n; the last decade's is set by
    // Lehmer's pair, 0.0376985 · 7005.0629^{1/3}.
    assert!(mins.windows(2).all(|w| w[1] < w[0]), "{mins:?}");
    assert!((mins[3] - 0.0376985 * 7005.0629f64.cbrt()).abs() < 1e-5, "{mins:?}");
}

#[test]
fn prime_gaps_at_a_million() {
    let pts = prime_gap_poisson(gap_stream(1_000_000).unwrap(), 1_000_000, &[0.0, 1.0, 50.0]).unwrap();
    assert_eq!(pts[0].empirical, 0.0);
    assert!((pts[1].empirical - pts[1].reference).abs() < 0.05);
    assert_eq!(pts[2].empirical, 1.0);
}

#[test]
fn hundred_gap_summary() {
    let s = gap_summary(100).unwrap();
    assert_eq!(s.pi_x, 25);
    assert_eq!(s.avg_gap, 4.0);
    assert_eq!((s.max_record.p, s.max_record.gap), (89, 8));
    assert!((s.cramer_stat - 8.0 / 89f64.ln().powi(2)).abs() < 1e-12);
}

#[test]
fn duality_examples() {
    let g = gammas();
    let r = duality_ratio(primes(), &g, 100).unwrap();
    assert_eq!(r.p_n, 541);
    assert!((r.ratio - 0.108).abs() < 1e-3, "{}", r.ratio);
    let l = 100f64.ln();
    assert_eq!(r.ratio * r.gamma_n * l * l, 541.0);
    let t = gap_transfer_prime_to_zero(primes(), &g, 1000, 1).unwrap();
    assert!(!t.violated(), "{t:?}");
    let r = duality_ratio(primes(), &g, 10_000).unwrap();
    assert!((0.7..=1.3).contains(&r.prime_input), "{r:?}");
}

#[test]
fn transfer_sweep_by_decade() {
    let g = gammas();
    let rows = transfer_sweep(primes(), &g, 100, 9_999, 1).unwrap();
    assert_eq!(rows.len(), 9_900);
    let d = violations_by_decade(&rows);
    assert_eq!(d.iter().map(|x| x.count).sum::<usize>(), rows.len());
    assert!(d.iter().all(|x| (0.0..=1.0).contains(&x.pz_fraction) && (0.0..=1.0).contains(&x.zp_fraction)));
}

#[test]
fn log_square_constant() {
    let (c, n) = prime_gap_log_square_constant(primes(), 10_000).unwrap();
    assert!(c > 0.0 && c < 2.0, "{c} at {n}");
}

#[test]
fn extremes_move_across_decades() {
    let s = normalize_spacings(zeros()).unwrap();
    let gaps: Vec<(u64, u64)> = primes().windows(2).map(|w| (w[0], w[1] - w[0])).collect();
    let r = theorem1_probe(&s, &gaps);
    assert_eq!(r.overlap, s.len());
    assert!(r.min_deepenings >= 2, "{r:?}");
    assert!(r.max_raisings >= 2, "{r:?}");
}

#[test]
fn cauchy_walk() {
    let a = cauchy_walk_probe(1000, 7, 2.5, 1e5).unwrap();
    assert_eq!(a, cauchy_walk_probe(1000, 7, 2.5, 1e5).unwrap());
    assert!(a.deviation < 1.0, "{a:?}");
}
