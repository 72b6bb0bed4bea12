use primezero::primes::*;
use primezero::Error;

fn trial_division(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn sieve_matches_trial_division_to_a_million() {
    let sieved = primes_up_to(1_000_000).unwrap();
    let oracle: Vec<u64> = (0..=1_000_000).filter(|&n| trial_division(n)).collect();
    assert_eq!(sieved, oracle);
    assert_eq!(sieved.len(), 78_498);
}

#[test]
fn ten_million() {
    assert_eq!(PrimeStream::new(10_000_000).unwrap().count(), 664_579);
}

#[test]
fn segment_windows_agree_with_the_full_sieve() {
    let all = primes_up_to(3_000_000).unwrap();
    let (lo, hi) = (2_097_000, 2_098_300);
    let window: Vec<u64> = all.iter().copied().filter(|&p| p >= lo && p <= hi).collect();
    assert_eq!(sieve_segment(lo, hi).unwrap(), window);
}

#[test]
fn stream_matches_batch() {
    let x = 20_000_000;
    let a: Vec<u64> = PrimeStream::new(x).unwrap().collect();
    assert_eq!(a, primes_up_to(x).unwrap());
}

#[test]
fn gap_stream_basics() {
    let g: Vec<(u64, u64)> = gap_stream(100).unwrap().collect();
    assert_eq!(g[0], (2, 1));
    assert_eq!(g[3], (7, 4));
    assert_eq!(g.iter().max_by_key(|x| x.1), Some(&(89, 8)));
    assert!(g.iter().skip(1).all(|x| x.1 % 2 == 0));
}

#[test]
fn maximal_gap_records_to_ten_million() {
    // Known table of maximal prime gaps.
    let want = [
        (2, 1),
        (3, 2),
        (7, 4),
        (23, 6),
        (89, 8),
        (113, 14),
        (523, 18),
        (887, 20),
        (1129, 22),
        (1327, 34),
        (9551, 36),
        (15683, 44),
        (19609, 52),
        (31397, 72),
        (155921, 86),
        (360653, 96),
        (370261, 112),
        (492113, 114),
        (1349533, 118),
        (1357201, 132),
        (2010733, 148),
        (4652353, 154),
    ];
    let got: Vec<(u64, u64)> = gap_records(10_000_000).unwrap().iter().map(|r| (r.p, r.gap)).collect();
    assert_eq!(got, want);
}

#[test]
fn summaries() {
    let s = gap_summary(10).unwrap();
    assert_eq!(s.max_record.gap, 2);
    assert!(matches!(gap_summary(2_000_000_000), Err(Error::CeilingExceeded { .. })));
}

#[test]
fn large_gap_fit_is_reported_past_the_threshold() {
    let r = gap_records(10_000_000).unwrap();
    let c = fit_large_gap_constant(&r).unwrap();
    assert!(c > 0.0);
    assert!(fit_large_gap_constant(&gap_records(1_000_000).unwrap()).is_none());
}

#[test]
fn composite_runs() {
    let f = composite_run_factorial(10).unwrap();
    assert_eq!((f.start, f.length), (3_628_802, 9));
    let p = composite_run_primorial(4).unwrap();
    assert_eq!((p.start, p.length), (212, 6));
    for r in [f, p] {
        for i in 0..r.length {
            assert!(!trial_division(r.start + i));
        }
    }
}
