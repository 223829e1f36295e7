use permgrowth::numerics::{factorial, Count};
use permgrowth::peakgrowth::{
    empirical_peak_growth, find_periodic_word, growth_rate_periodic, limit_growth_rate_periodic,
    log_rate_correction, log_rate_terms, max_peak_rate, PeriodicPeakFamily,
};
use permgrowth::peaks::{
    admissible_supersets, brute_force_peak, brute_force_peak_all, count_peak_closed, count_peak_ie,
    count_peak_periodic, count_peak_split, count_peak_transfer, count_q, is_admissible,
    periodic_peak_set,
};
use permgrowth::words::{word_to_set, BinaryWord, PositionSet};
use proptest::prelude::*;

fn set(s: &str) -> PositionSet {
    s.parse().unwrap()
}

fn mask_set(mask: usize, n: usize) -> PositionSet {
    word_to_set(&BinaryWord::from_mask(mask as u64, n - 1))
}

#[test]
fn counters_agree_with_brute_force_through_ten() {
    for n in 1..=10 {
        let hist = brute_force_peak_all(n).unwrap();
        let mut total = Count::default();
        for (mask, expected) in hist.iter().enumerate() {
            let s = mask_set(mask, n);
            if !is_admissible(&s, n) {
                assert_eq!(expected, &Count::default(), "{s} n = {n}");
                continue;
            }
            let ie = count_peak_ie(&s, n).unwrap();
            assert_eq!(&ie, expected, "ie {s} n = {n}");
            assert_eq!(count_peak_split(&s, n).unwrap(), ie, "split {s} n = {n}");
            assert_eq!(
                count_peak_transfer(&s, n).unwrap(),
                ie,
                "transfer {s} n = {n}"
            );
            total += ie;
        }
        assert_eq!(total, factorial(n as u64), "n = {n}");
    }
}

#[test]
fn q_is_sum_over_supersets() {
    for n in 1..=10 {
        for mask in 0..1usize << (n - 1) {
            let s = mask_set(mask, n);
            if !is_admissible(&s, n) {
                continue;
            }
            let sum: Count = admissible_supersets(&s, n)
                .unwrap()
                .iter()
                .map(|t| count_peak_ie(t, n).unwrap())
                .sum();
            assert_eq!(count_q(&s, n).unwrap(), sum, "{s} n = {n}");
        }
    }
}

#[test]
fn closed_forms_match_brute_force() {
    for n in 4..=10 {
        let one = set("2");
        assert_eq!(
            count_peak_closed(&one, n).unwrap().unwrap(),
            brute_force_peak(&one, n).unwrap()
        );
        let two = PositionSet::new(vec![2, n - 1]).unwrap();
        let closed = count_peak_closed(&two, n).unwrap().unwrap();
        assert_eq!(closed, brute_force_peak(&two, n).unwrap(), "n = {n}");
    }
}

#[test]
fn empty_peak_set_count_is_power_of_two() {
    for n in 1..=30 {
        let expected = Count::from(1u8) << (n - 1);
        assert_eq!(count_peak_ie(&set(""), n).unwrap(), expected);
        assert_eq!(count_peak_transfer(&set(""), n).unwrap(), expected);
    }
}

fn argmax_sets(n: usize) -> Vec<PositionSet> {
    let mut best = Count::default();
    let mut winners = Vec::new();
    for mask in 0..1usize << (n - 1) {
        let s = mask_set(mask, n);
        if !is_admissible(&s, n) {
            continue;
        }
        let c = count_peak_transfer(&s, n).unwrap();
        if c > best {
            best = c;
            winners.clear();
            winners.push(s);
        } else if c == best {
            winners.push(s);
        }
    }
    winners.sort();
    winners
}

fn progression(start: usize, n: usize) -> Vec<usize> {
    (start..n).step_by(3).collect()
}

/// Maximizers of `p_n` by residue of `n` mod 3; for `n ≡ 1` the family
/// `{3, ..., 3s, 3s+2, 3s+5, ...}` runs over `1 ≤ s < ⌊n/3⌋`.
pub fn expected_maximizers(n: usize) -> Vec<PositionSet> {
    let mut sets = match n % 3 {
        0 => vec![progression(3, n), progression(4, n)],
        2 => vec![progression(3, n)],
        _ => (1..n / 3)
            .map(|s| {
                let mut v = progression(3, 3 * s + 1);
                v.extend(progression(3 * s + 2, n));
                v
            })
            .collect(),
    };
    sets.sort();
    sets.dedup();
    let mut out: Vec<PositionSet> = sets
        .into_iter()
        .map(|v| PositionSet::new(v).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn maximizing_peak_sets() {
    for n in 6..=11 {
        assert_eq!(argmax_sets(n), expected_maximizers(n), "n = {n}");
    }
}

#[test]
fn periodic_counts_agree_with_generic_counters() {
    for (a, b) in [(2, 2), (2, 3), (3, 2), (2, 5), (3, 4)] {
        for n in 3 * a + 1..=3 * (3 * a + b + 2) {
            let s = periodic_peak_set(a, b, n);
            let block = count_peak_periodic(a, b, n).unwrap();
            assert_eq!(
                block,
                count_peak_transfer(&s, n).unwrap(),
                "a={a} b={b} n={n}"
            );
            if n <= 16 {
                assert_eq!(block, count_peak_ie(&s, n).unwrap(), "a={a} b={b} n={n}");
            }
            if n <= 10 {
                assert_eq!(block, brute_force_peak(&s, n).unwrap(), "a={a} b={b} n={n}");
            }
        }
    }
}

#[test]
fn top_rate_word_has_no_proper_admissible_superset() {
    // Peaks at 3, 6, 9, ...: unless n ≡ 0 (mod 3) leaves position n-1 free,
    // every other position is adjacent to a peak, so p_n = Q_n = n! 3^{-#peaks}.
    for n in (4..=16).filter(|n| n % 3 != 0) {
        let s = PositionSet::new(progression(3, n)).unwrap();
        assert_eq!(admissible_supersets(&s, n).unwrap().len(), 1);
        let q = count_q(&s, n).unwrap();
        assert_eq!(count_peak_ie(&s, n).unwrap(), q);
        assert_eq!(
            q * Count::from(3u8).pow(s.len() as u32),
            factorial(n as u64)
        );
    }
}

#[test]
fn log_rate_is_sum_of_three_terms() {
    let (ln2, ln3) = (2f64.ln(), 3f64.ln());
    for a in 2..=50u64 {
        for b in 2..=50u64 {
            let fam = PeriodicPeakFamily::new(a, b).unwrap();
            let weight = (3 * (a - 1) + b + 5) as f64;
            let ln_fact: f64 = (2..=b + 5).map(|k| (k as f64).ln()).sum();
            let expected =
                -ln_fact / weight - (a - 1) as f64 * ln3 / weight + (b + 2) as f64 * ln2 / weight;
            let terms = log_rate_terms(fam);
            assert!((terms.iter().sum::<f64>() - expected).abs() < 1e-9);
            assert!((growth_rate_periodic(fam).ln() - expected).abs() < 1e-9);
        }
    }
}

#[test]
fn search_hits_every_grid_target() {
    for k in 1..=13 {
        let target = 0.05 * k as f64;
        let found = find_periodic_word(target, 0.01).unwrap();
        let fam = found.family().unwrap();
        assert!(
            (growth_rate_periodic(fam) - target).abs() < 0.01,
            "{target}"
        );
        assert!(
            (limit_growth_rate_periodic(fam) - target).abs() < 0.01,
            "{target}"
        );
        assert!((found.achieved_rate - target).abs() < 0.01);
    }
}

#[test]
fn empirical_rates_track_limit_rate() {
    for (a, b) in [(2, 2), (2, 5), (5, 2), (4, 4)] {
        let fam = PeriodicPeakFamily::new(a, b).unwrap();
        let gap =
            (empirical_peak_growth(fam, 200).unwrap() - limit_growth_rate_periodic(fam)).abs();
        assert!(gap <= 0.02, "a={a} b={b}: {gap}");
    }
}

#[test]
fn closed_form_misses_the_per_period_factor() {
    // The log gap between the exact count and the closed form approaches
    // ln((b+1)(b+4)) / (3a+b+2), not 0.
    for (a, b) in [(2, 2), (2, 5), (5, 2), (4, 4)] {
        let fam = PeriodicPeakFamily::new(a, b).unwrap();
        let gap = empirical_peak_growth(fam, 400).unwrap().ln() - growth_rate_periodic(fam).ln();
        let correction = log_rate_correction(fam);
        assert!(correction > 0.05, "a={a} b={b}");
        assert!(
            (gap - correction).abs() < 0.02,
            "a={a} b={b}: {gap} vs {correction}"
        );
    }
}

#[test]
fn empirical_gap_shrinks_with_n() {
    // Single values oscillate with the position inside the period, so take
    // the worst gap over one full period (3a + b + 2 = 16 letters).
    let fam = PeriodicPeakFamily::new(3, 5).unwrap();
    let closed = limit_growth_rate_periodic(fam);
    let gaps: Vec<f64> = [50, 100, 200]
        .iter()
        .map(|&n| {
            (n..n + 16)
                .map(|m| (empirical_peak_growth(fam, m).unwrap() - closed).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
}

#[test]
fn top_endpoint_rate() {
    let top = find_periodic_word(max_peak_rate(), 0.001).unwrap();
    assert_eq!(top.word.to_string(), "[001]");
    let n = 16;
    let s = periodic_peak_set_of(&top.word.to_string(), n);
    let empirical = permgrowth::numerics::nth_root_float(
        &count_peak_ie(&s, n).unwrap(),
        &factorial(n as u64),
        n as u64,
    );
    // n!^{-1/n}-free part: (3^{-5})^{1/16}
    assert!((empirical - 3f64.powf(-5.0 / 16.0)).abs() < 1e-12);
}

fn periodic_peak_set_of(spec: &str, n: usize) -> PositionSet {
    let spec: permgrowth::WordSpec = spec.parse().unwrap();
    word_to_set(&spec.word_prefix(n - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_equals_transfer_on_random_sets(mask in 0u64..1 << 15, n in 4usize..=16) {
        let s = word_to_set(&BinaryWord::from_mask(mask & ((1 << (n - 1)) - 1), n - 1));
        prop_assume!(is_admissible(&s, n));
        prop_assert_eq!(count_peak_split(&s, n).unwrap(), count_peak_transfer(&s, n).unwrap());
    }
}
