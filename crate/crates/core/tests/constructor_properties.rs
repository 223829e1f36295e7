use num_traits::ToPrimitive;
use permgrowth::constructor::{
    compute_k, construct_word, construct_word_dual, envelope, ConstructorRun, State,
};
use permgrowth::numerics::{ratio, Ratio};

fn targets() -> Vec<Ratio> {
    vec![
        ratio(1, 5),
        ratio(3, 10),
        ratio(2, 5),
        ratio(1, 2),
        ratio(3, 5),
    ]
}

fn check_states(run: &ConstructorRun) {
    let bits = run.word.bits();
    let mut i = 1;
    while i <= bits.len() {
        match run.state_at(i) {
            State::Zero => {
                assert!(!bits[i - 1], "expected 0 at {i}");
                i += 1;
            }
            State::OneZero => {
                assert!(bits[i - 1], "expected 1 at {i}");
                if i < bits.len() {
                    assert!(!bits[i], "expected 0 at {}", i + 1);
                }
                i += 2;
            }
        }
    }
}

fn check_flip_signs(run: &ConstructorRun) {
    for (k, &n) in run.flips.iter().enumerate() {
        let here = run.sample(n).unwrap();
        if k % 2 == 0 {
            // 0 -> 10: r_n < 1, and the previous check (one letter back) was not.
            assert!(here.sign < 0, "flip at {n}");
            if n > 2 {
                assert!(run.sample(n - 1).unwrap().sign >= 0, "flip at {n}");
            }
        } else {
            // 10 -> 0: r'_n > 1, and the check two letters back was not.
            assert!(here.sign_high > 0, "flip at {n}");
            assert!(run.sample(n - 2).unwrap().sign_high <= 0, "flip at {n}");
        }
    }
}

#[test]
fn state_word_consistency_and_flip_semantics() {
    for l in targets() {
        let run = construct_word(&l, 400).unwrap();
        check_states(&run);
        check_flip_signs(&run);
        assert!(run.flips.len() >= 3, "{l}: {:?}", run.flips);
    }
    let dual = construct_word_dual(&ratio(3, 10), &ratio(1, 2), 400).unwrap();
    check_states(&dual);
    check_flip_signs(&dual);
}

#[test]
fn envelope_after_first_flip() {
    for l in targets() {
        let run = construct_word(&l, 400).unwrap();
        let k = compute_k(&l).unwrap();
        assert_eq!(run.k_constant, Some(k));
        let m = l.recip();
        let first = run.first_flip().unwrap();
        for s in run.r_log.iter().filter(|s| s.n > first) {
            let (f, g) = envelope(s.n as u64, k, &m);
            let root = s.r_root();
            assert!(
                f <= root + 1e-9 && root <= g + 1e-9,
                "{l} n = {}: {f} {root} {g}",
                s.n
            );
        }
    }
}

#[test]
fn consecutive_control_ratios_are_bounded() {
    // (M/n) r_{n-1} <= r_n <= M r_{n-1}, exactly.
    for l in targets() {
        let run = construct_word(&l, 150).unwrap();
        let m = l.recip();
        assert_eq!(run.exact_r.len(), 100);
        for n in 2..=run.exact_r.len() {
            let (prev, cur) = (&run.exact_r[n - 2], &run.exact_r[n - 1]);
            let lower = &m / Ratio::from_integer(n.into()) * prev;
            assert!(&lower <= cur, "{l} n = {n}");
            assert!(cur <= &(&m * prev), "{l} n = {n}");
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let a = construct_word_dual(&ratio(3, 10), &ratio(1, 2), 300).unwrap();
    let b = construct_word_dual(&ratio(3, 10), &ratio(1, 2), 300).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn growth_approaches_target() {
    for l in targets() {
        let run = construct_word(&l, 400).unwrap();
        let target = l.to_f64().unwrap();
        let g = run.growth(400).unwrap();
        assert!((g - target).abs() < 0.06, "{l}: {g}");
    }
}

#[test]
fn first_flip_is_first_time_ratio_drops_below_one() {
    // On the all-zeros prefix r_n = M^n / n!, so the first flip is the least
    // n >= 2 with M^n < n!.
    for l in targets() {
        let run = construct_word(&l, 100).unwrap();
        let m = l.recip();
        let mut fact = Ratio::from_integer(1.into());
        let mut pow = m.clone();
        let mut expected = None;
        for n in 2..100u32 {
            fact *= Ratio::from_integer(n.into());
            pow *= &m;
            if pow < fact {
                expected = Some(n as usize);
                break;
            }
        }
        assert_eq!(run.first_flip(), expected, "{l}");
    }
}
