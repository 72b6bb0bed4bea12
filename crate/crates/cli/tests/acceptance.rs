//! Acceptance criteria, one test per criterion. Each prints a single
//! `[AC-n] PASS|FAIL: ...` line and then asserts the criterion at its stated
//! tolerance.

use num_complex::Complex64;
use primezero::dirichlet::{ap_gap_summary, character_by_values, find_l_zeros, l_eval, verify_l_count};
use primezero::duality::duality_ratio;
use primezero::primes::{gap_stream, primes_up_to};
use primezero::spacing::{
    extremes_report, mean_delta, normalize_spacings, pair_correlation, prime_gap_poisson, spacing_bound_report,
    PairScaling,
};
use primezero::zeros::{count_zeros_main_term, find_zeros, verify_count};
use primezero::ZetaZero;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

// High-precision ordinates (mpmath, 30 digits).
const GAMMA_1_29: [f64; 29] = [
    14.134_725_141_734_695,
    21.022_039_638_771_556,
    25.010_857_580_145_69,
    30.424_876_125_859_512,
    32.935_061_587_739_19,
    37.586_178_158_825_675,
    40.918_719_012_147_5,
    43.327_073_280_915,
    48.005_150_881_167_16,
    49.773_832_477_672_3,
    52.970_321_477_714_464,
    56.446_247_697_063_39,
    59.347_044_002_602_35,
    60.831_778_524_609_81,
    65.112_544_048_081_6,
    67.079_810_529_494_17,
    69.546_401_711_173_98,
    72.067_157_674_481_9,
    75.704_690_699_083_93,
    77.144_840_068_874_8,
    79.337_375_020_249_37,
    82.910_380_854_086_03,
    84.735_492_980_517_05,
    87.425_274_613_125_23,
    88.809_111_207_634_46,
    92.491_899_270_558_49,
    94.651_344_040_519_89,
    95.870_634_228_245_31,
    98.831_194_218_193_69,
];
const CHI4_FIRST_ZERO: f64 = 6.020_948_904_697_6;
const CHI3_FIRST_ZERO: f64 = 8.039_737_155_681_47;

fn verdict(id: u32, ok: bool, detail: String) {
    println!("[AC-{id}] {}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "AC-{id} failed: {detail}");
}

/// Zeros up to the default t-max of 5000.
fn zeros_5000() -> &'static (Vec<ZetaZero>, Duration) {
    static Z: OnceLock<(Vec<ZetaZero>, Duration)> = OnceLock::new();
    Z.get_or_init(|| {
        let t = Instant::now();
        let s = find_zeros(0.0, 5000.0, 1e-9).expect("search succeeds");
        assert!(s.is_clean(), "flagged blocks: {:?}", s.flagged);
        (s.zeros, t.elapsed())
    })
}

fn first_4000() -> &'static [ZetaZero] {
    &zeros_5000().0[..4000]
}

#[test]
fn ac01_zero_regression() {
    let t = Instant::now();
    let s = find_zeros(0.0, 100.0, 1e-9).unwrap();
    let elapsed = t.elapsed();
    let g: Vec<f64> = s.zeros.iter().map(|z| z.gamma).collect();
    // The published value is truncated, not rounded (14.1347251…).
    let first = g.first().map(|x| format!("{:.5}", (x * 1e5).floor() / 1e5)).unwrap_or_default();
    let worst = g.iter().zip(GAMMA_1_29).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ok = g.len() == 29 && first == "14.13472" && worst < 1e-8 && elapsed < Duration::from_secs(5);
    verdict(1, ok, format!("{} zeros, first {first}, max |γ − oracle| = {worst:.2e}, {:.2?}", g.len(), elapsed));
}

#[test]
fn ac02_counting_consistency() {
    let mut lines = Vec::new();
    let mut ok = true;
    for t in [100.0, 500.0, 1000.0, 5000.0] {
        let (zs, took) = if t == 5000.0 {
            let (z, d) = zeros_5000();
            (z.clone(), *d)
        } else {
            let s = Instant::now();
            (find_zeros(0.0, t, 1e-9).unwrap().zeros, s.elapsed())
        };
        let main = count_zeros_main_term(t).unwrap();
        let v = verify_count(&zs, t);
        let good = (v.zeros_found as f64 - main).abs() < 2.0 && v.complete;
        if t == 5000.0 {
            ok &= took < Duration::from_secs(120);
        }
        ok &= good;
        lines.push(format!("T={t}: {} vs {main:.2}, complete={} ({took:.2?})", v.zeros_found, v.complete));
    }
    verdict(2, ok, lines.join("; "));
}

#[test]
fn ac03_mean_normalized_spacing() {
    let s = normalize_spacings(first_4000()).unwrap();
    let m = mean_delta(&s);
    verdict(3, (0.98..=1.02).contains(&m), format!("mean δ over first 4000 zeros = {m:.5}"));
}

#[test]
fn ac04_gap_witnesses() {
    let s = normalize_spacings(first_4000()).unwrap();
    let e = extremes_report(&s).unwrap();
    let ok = e.min_delta.delta < 0.52 && e.max_delta.delta > 2.0;
    verdict(
        4,
        ok,
        format!(
            "min δ = {:.4} at n = {}, max δ = {:.4} at n = {} (2.63 not expected at this height)",
            e.min_delta.delta, e.min_delta.n, e.max_delta.delta, e.max_delta.n
        ),
    );
}

#[test]
fn ac05_pair_correlation() {
    let zs = first_4000();
    let t = zs.last().unwrap().gamma;
    let p = pair_correlation(zs, 0.0, 3.0, t, 12, PairScaling::LogT).unwrap();
    let good = p.bins.iter().filter(|b| (b.density - b.gue).abs() < 0.1).count();
    verdict(
        5,
        p.bins.len() == 12 && good >= 10,
        format!("{good}/12 bins within 0.1 of GUE, max deviation {:.4}", p.max_deviation()),
    );
}

#[test]
fn ac06_spacing_bounds() {
    let s = normalize_spacings(&zeros_5000().0).unwrap();
    let r = spacing_bound_report(&s).unwrap();
    let first_flagged = r.upper_exceedances.iter().any(|e| e.n == 1);
    let lows: Vec<String> =
        r.lower_violations.iter().map(|e| format!("n={} raw={:.4} < {:.4}", e.n, e.raw, e.bound)).collect();
    verdict(
        6,
        r.lower_violations.is_empty() && first_flagged,
        format!(
            "{} spacings, {} lower-bound violations [{}], γ₁→γ₂ upper exceedance flagged: {first_flagged}",
            r.samples,
            r.lower_violations.len(),
            lows.join("; ")
        ),
    );
}

#[test]
fn ac07_prime_oracle() {
    let t = Instant::now();
    let sieved = primes_up_to(1_000_000).unwrap();
    let elapsed = t.elapsed();
    let oracle: Vec<u64> =
        (2..=1_000_000u64).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
    let ok = sieved == oracle && oracle.len() == 78_498 && elapsed < Duration::from_secs(10);
    verdict(7, ok, format!("sieve {} primes, trial division {}, sieve time {elapsed:.2?}", sieved.len(), oracle.len()));
}

#[test]
fn ac08_poisson_gap_law() {
    let x = 10_000_000;
    let pts = prime_gap_poisson(gap_stream(x).unwrap(), x, &[0.5, 1.0, 2.0]).unwrap();
    let ok = pts.iter().all(|p| (p.empirical - p.reference).abs() < 0.05);
    let detail: Vec<String> = pts
        .iter()
        .map(|p| {
            format!(
                "t={}: {:.4} vs {:.4} (|Δ| = {:.4})",
                p.t,
                p.empirical,
                p.reference,
                (p.empirical - p.reference).abs()
            )
        })
        .collect();
    verdict(8, ok, detail.join("; "));
}

#[test]
fn ac09_duality_trend() {
    let ps = primes_up_to(100_000).unwrap();
    let gammas: Vec<f64> = zeros_5000().0.iter().map(|z| z.gamma).collect();
    let mut in_band = true;
    let (mut lo_p, mut lo_z, mut hi_p, mut hi_z) = (0.0, 0.0, 0.0, 0.0);
    let (mut worst_p, mut worst_z) = (1.0f64, 1.0f64);
    for n in 100..=4000u64 {
        let r = duality_ratio(&ps, &gammas, n).unwrap();
        let (dp, dz) = ((r.prime_input - 1.0).abs(), (r.zero_input - 1.0).abs());
        if n <= 1000 {
            lo_p += dp / 901.0;
            lo_z += dz / 901.0;
        }
        if n >= 1000 {
            hi_p += dp / 3001.0;
            hi_z += dz / 3001.0;
            for (v, w) in [(r.prime_input, &mut worst_p), (r.zero_input, &mut worst_z)] {
                if (v - 1.0).abs() > (*w - 1.0).abs() {
                    *w = v;
                }
                in_band &= (0.7..=1.3).contains(&v);
            }
        }
    }
    let trend = hi_p < lo_p && hi_z < lo_z;
    verdict(
        9,
        in_band && trend,
        format!(
            "n ln n/pₙ worst {worst_p:.4}, γₙ ln n/(2πn) worst {worst_z:.4} on [10³, 4·10³]; \
             mean |·−1| {lo_p:.4}→{hi_p:.4} and {lo_z:.4}→{hi_z:.4}"
        ),
    );
}

#[test]
fn ac10_dirichlet() {
    let chi4 = character_by_values(4, &[0, 1, 0, -1]).unwrap();
    let chi3 = character_by_values(3, &[0, 1, -1]).unwrap();
    let z4 = find_l_zeros(&chi4, 0.0, 10.0, 1e-9).unwrap().zeros[0].gamma;
    let z3s = find_l_zeros(&chi3, 0.0, 100.0, 1e-9).unwrap().zeros;
    let z3 = z3s[0].gamma;
    let count = verify_l_count(&z3s, 3, 100.0).unwrap();
    let l1 = l_eval(Complex64::new(1.0, 0.0), &chi4).unwrap();
    let rel = (l1 - PI / 4.0).norm() / (PI / 4.0);
    let ok = (z4 - CHI4_FIRST_ZERO).abs() < 5e-4
        && (z3 - CHI3_FIRST_ZERO).abs() < 5e-4
        && count.residual.abs() <= 2.0
        && rel < 1e-10;
    verdict(
        10,
        ok,
        format!(
            "χ₄ zero {z4:.6}, χ₃ zero {z3:.6}, N(100, χ₃) = {} vs {:.3}, |L(1, χ₄)/(π/4) − 1| = {rel:.1e}",
            count.found, count.expected
        ),
    );
}

#[test]
fn ac11_ap_gaps() {
    let s = ap_gap_summary(1_000_000, 1, 4, 1).unwrap();
    let d1 = s.delta_v_estimates[0];
    verdict(
        11,
        s.gaps_divisible && s.exceptional_gaps.is_empty() && d1 < 0.25,
        format!("{} primes ≡ 1 mod 4, all gaps ≡ 0 mod 4: {}, Δ₁ running minimum {d1:.4}", s.pi_xaq, s.gaps_divisible),
    );
}

fn run_pipeline(cache: &Path, out: &Path, threads: usize) -> Vec<(String, Vec<u8>)> {
    let bin = env!("CARGO_BIN_EXE_primezero");
    let steps: [(&str, &[&str]); 8] = [
        ("zeros.csv", &["zeros"]),
        ("primes.json", &["primes", "--format", "json"]),
        ("spacings.csv", &["spacings"]),
        ("paircorr.csv", &["paircorr"]),
        ("duality.csv", &["duality"]),
        ("dirichlet.json", &["dirichlet", "--format", "json"]),
        ("probe.csv", &["probe", "--kind", "cauchy", "--seed", "7"]),
        ("report.json", &["report", "--format", "json"]),
    ];
    let mut files = Vec::new();
    for (name, args) in steps {
        let path = out.join(name);
        let st = Command::new(bin)
            .args(args)
            .arg("--threads")
            .arg(threads.to_string())
            .arg("--out")
            .arg(&path)
            .env("PRIMEZERO_CACHE_DIR", cache)
            .status()
            .expect("binary runs");
        assert!(st.success(), "{name} exited with {st}");
        files.push((name.to_string(), std::fs::read(&path).unwrap()));
    }
    for c in ["zeros.zc", "primes.pc"] {
        files.push((c.to_string(), std::fs::read(cache.join(c)).unwrap()));
    }
    files
}

#[test]
fn ac12_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = |s: &str| {
        let p = tmp.path().join(s);
        std::fs::create_dir_all(&p).unwrap();
        p
    };
    let a = run_pipeline(&dir("cache-a"), &dir("out-a1"), 1);
    let a2 = run_pipeline(&dir("cache-a"), &dir("out-a2"), 1);
    let b = run_pipeline(&dir("cache-b"), &dir("out-b"), 8);
    let differ: Vec<&str> = a
        .iter()
        .zip(&a2)
        .zip(&b)
        .filter(|((x, y), z)| x.1 != y.1 || x.1 != z.1)
        .map(|((x, _), _)| x.0.as_str())
        .collect();
    verdict(
        12,
        differ.is_empty(),
        format!("{} files compared across two runs and 1 vs 8 threads; differing: {differ:?}", a.len()),
    );
}
