use num_complex::Complex64;
use primezero::dirichlet::{characters, l_eval, primes_in_ap};
use primezero::duality::{composed_bound, gap_transfer_prime_to_zero, gap_transfer_zero_to_prime};
use primezero::primes::{primes_up_to, sieve_segment};
use primezero::spacing::{cauchy_walk_probe, gue_pair_integral};
use primezero::zeros::find_zeros;
use primezero::zeta::{hardy_z, theta, zeta_on_line};
use proptest::prelude::*;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_odd(t in 0.1f64..5000.0) {
        let (a, b) = (theta(t).unwrap(), theta(-t).unwrap());
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn z_has_modulus_of_zeta(t in 0.0f64..3000.0) {
        let z = hardy_z(t).unwrap();
        let v = zeta_on_line(t).unwrap();
        prop_assert!((z.abs() - v.norm()).abs() < 1e-8);
    }

    #[test]
    fn sieve_windows_are_exact(lo in 0u64..200_000, len in 0u64..5_000) {
        let got = sieve_segment(lo, lo + len).unwrap();
        let want: Vec<u64> = (lo..=lo + len).filter(|&n| is_prime(n)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn ap_primes_lie_in_their_class(q in 3u64..40, a in 1u64..40) {
        if let Ok(ps) = primes_in_ap(20_000, a, q) {
            prop_assert!(ps.iter().all(|p| p % q == a % q && is_prime(*p)));
        }
    }

    #[test]
    fn character_values_are_multiplicative(q in 3u64..60, m in 1u64..500, n in 1u64..500) {
        for c in characters(q).unwrap() {
            let lhs = c.value(m * n);
            let rhs = c.value(m) * c.value(n);
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn l_reflection(re in 0.05f64..1.5, im in -200.0f64..200.0, k in 1usize..4) {
        let cs = characters(5).unwrap();
        let c = &cs[k];
        let s = Complex64::new(re, im);
        let a = l_eval(s.conj(), &c.conj()).unwrap();
        let b = l_eval(s, c).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn gue_integral_is_additive(a in 0.0f64..2.0, w1 in 0.01f64..1.0, w2 in 0.01f64..1.0) {
        let whole = gue_pair_integral(a, a + w1 + w2);
        let parts = gue_pair_integral(a, a + w1) + gue_pair_integral(a + w1, a + w1 + w2);
        prop_assert!((whole - parts).abs() < 1e-10);
    }

    #[test]
    fn composed_bound_is_four_times(n in 2u64..1_000_000, gap in 0.0f64..10.0) {
        prop_assert!((composed_bound(n, gap) - 4.0 * gap).abs() <= 1e-12 * gap.max(1.0));
    }

    #[test]
    fn cauchy_walk_is_reproducible(seed in any::<u64>(), n in 0u64..200) {
        let a = cauchy_walk_probe(n, seed, 2.5, 1e5).unwrap();
        prop_assert_eq!(a, cauchy_walk_probe(n, seed, 2.5, 1e5).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zero_ranges_concatenate(cut in 20.0f64..780.0) {
        let g = |lo, hi| -> Vec<f64> { find_zeros(lo, hi, 1e-9).unwrap().zeros.iter().map(|z| z.gamma).collect() };
        let mut parts = g(0.0, cut);
        parts.extend(g(cut, 800.0));
        prop_assert_eq!(parts, g(0.0, 800.0));
    }
}

#[test]
fn transfers_vanish_at_k_zero() {
    let primes = primes_up_to(10_000).unwrap();
    let gammas: Vec<f64> = find_zeros(0.0, 1000.0, 1e-9).unwrap().zeros.iter().map(|z| z.gamma).collect();
    for n in [2, 50, 500] {
        for t in [
            gap_transfer_prime_to_zero(&primes, &gammas, n, 0).unwrap(),
            gap_transfer_zero_to_prime(&primes, &gammas, n, 0).unwrap(),
        ] {
            assert_eq!((t.bound, t.actual), (0.0, 0.0));
        }
    }
}
