//! `permgrowth selftest`: quick invariant checks against brute force and
//! closed forms.

use std::time::Instant;

use permgrowth::constructor::{construct_word, envelope};
use permgrowth::descent::{brute_force_descent_all, count_descent_word, descent_series};
use permgrowth::numerics::{factorial, ratio, zigzag_numbers, Count};
use permgrowth::peakgrowth::{
    find_periodic_word, growth_rate_periodic, limit_growth_rate_periodic,
};
use permgrowth::peaks::{
    brute_force_peak_all, count_peak_closed, count_peak_ie, count_peak_periodic, count_peak_split,
    count_peak_transfer, is_admissible, periodic_peak_set,
};
use permgrowth::words::{alternation_set, parse_word_spec, word_to_set, BinaryWord};
use permgrowth::PositionSet;

pub struct Report {
    pub text: String,
    pub passed: bool,
}

type Check = fn(bool) -> Result<String, String>;

pub fn run(deep: bool) -> Report {
    let checks: [(&str, Check); 8] = [
        ("descent dp matches brute force", descent_vs_brute),
        ("alternating words give zigzag numbers", zigzag),
        ("larger alternation set raises the count", alternation),
        ("builder stays inside its envelope", builder_envelope),
        ("peak counters agree with brute force", peak_counters),
        ("periodic block product matches transfer", periodic_blocks),
        ("peak closed forms", peak_closed),
        ("periodic word search hits grid targets", peak_search),
    ];
    let mut text = String::new();
    let mut passed = true;
    for (name, check) in checks {
        let start = Instant::now();
        let outcome = check(deep);
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                passed = false;
                ("FAIL", d)
            }
        };
        text.push_str(&format!("{tag} [{secs:.2}s] {name}: {detail}\n"));
    }
    Report { text, passed }
}

fn descent_vs_brute(deep: bool) -> Result<String, String> {
    let top = if deep { 9 } else { 7 };
    for n in 1..=top {
        let hist = brute_force_descent_all(n).map_err(|e| e.to_string())?;
        for (mask, expected) in hist.iter().enumerate() {
            let w = BinaryWord::from_mask(mask as u64, n - 1);
            let got = count_descent_word(&w, n).map_err(|e| e.to_string())?;
            if &got != expected {
                return Err(format!("{w} at n = {n}: {got} vs {expected}"));
            }
        }
    }
    Ok(format!("all words, n <= {top}"))
}

fn zigzag(deep: bool) -> Result<String, String> {
    let top = if deep { 60 } else { 20 };
    let euler = zigzag_numbers(top);
    for spec in ["[01]", "[10]"] {
        let spec = parse_word_spec(spec).map_err(|e| e.to_string())?;
        let series = descent_series(&spec, top).map_err(|e| e.to_string())?;
        let bad = series
            .rows()
            .find(|(n, c, _)| *c != &euler[*n])
            .map(|(n, _, _)| n);
        if let Some(n) = bad {
            return Err(format!("{spec} at n = {n}"));
        }
    }
    Ok(format!("n <= {top}"))
}

/// A strictly larger alternation set means strictly more permutations.
fn alternation(deep: bool) -> Result<String, String> {
    let top = if deep { 8 } else { 6 };
    let mut pairs = 0;
    for n in 1..=top {
        let mut words = Vec::new();
        for mask in 0..1u64 << (n - 1) {
            let w = BinaryWord::from_mask(mask, n - 1);
            let c = count_descent_word(&w, n).map_err(|e| e.to_string())?;
            words.push((alternation_set(&w), w, c));
        }
        for (alt_s, s, ds) in &words {
            for (alt_t, t, dt) in &words {
                if alt_s != alt_t && alt_s.is_subset(alt_t) {
                    if ds >= dt {
                        return Err(format!("{s} vs {t} at n = {n}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} nested pairs, n <= {top}"))
}

fn builder_envelope(deep: bool) -> Result<String, String> {
    let n_max = if deep { 600 } else { 200 };
    let mut worst = 0.0f64;
    for (p, q) in [(1, 5), (2, 5), (3, 5)] {
        let l = ratio(p, q);
        let run = construct_word(&l, n_max).map_err(|e| e.to_string())?;
        let k = run.k_constant.ok_or("no K")?;
        let m = l.recip();
        let first = run.first_flip().ok_or("no flip")?;
        for s in run.r_log.iter().filter(|s| s.n > first) {
            let (f, g) = envelope(s.n as u64, k, &m);
            let root = s.r_root();
            if root < f - 1e-9 || root > g + 1e-9 {
                return Err(format!("{l} at n = {}: {f} {root} {g}", s.n));
            }
        }
        let growth = run.r_log.last().map_or(0.0, |s| s.growth);
        worst = worst.max((growth - p as f64 / q as f64).abs());
    }
    Ok(format!(
        "targets 1/5 2/5 3/5 to n = {n_max}, worst growth gap {worst:.4}"
    ))
}

fn peak_counters(deep: bool) -> Result<String, String> {
    let top = if deep { 10 } else { 8 };
    for n in 1..=top {
        let hist = brute_force_peak_all(n).map_err(|e| e.to_string())?;
        let mut total = Count::default();
        for (mask, expected) in hist.iter().enumerate() {
            let s = word_to_set(&BinaryWord::from_mask(mask as u64, n - 1));
            if !is_admissible(&s, n) {
                continue;
            }
            let ie = count_peak_ie(&s, n).map_err(|e| e.to_string())?;
            let split = count_peak_split(&s, n).map_err(|e| e.to_string())?;
            let transfer = count_peak_transfer(&s, n).map_err(|e| e.to_string())?;
            if &ie != expected || split != ie || transfer != ie {
                return Err(format!("{s} at n = {n}"));
            }
            total += ie;
        }
        if total != factorial(n as u64) {
            return Err(format!("counts at n = {n} do not sum to n!"));
        }
    }
    Ok(format!("all admissible sets, n <= {top}"))
}

fn periodic_blocks(deep: bool) -> Result<String, String> {
    let top = if deep { 200 } else { 60 };
    for (a, b) in [(2, 2), (3, 4)] {
        for n in 3 * a + 1..=top {
            let block = count_peak_periodic(a, b, n).map_err(|e| e.to_string())?;
            let transfer =
                count_peak_transfer(&periodic_peak_set(a, b, n), n).map_err(|e| e.to_string())?;
            if block != transfer {
                return Err(format!("a = {a}, b = {b}, n = {n}"));
            }
        }
    }
    Ok(format!("(2,2) and (3,4) to n = {top}"))
}

fn peak_closed(deep: bool) -> Result<String, String> {
    let top = if deep { 10 } else { 8 };
    for n in 4..=top {
        let hist = brute_force_peak_all(n).map_err(|e| e.to_string())?;
        for positions in [vec![2], vec![2, n - 1]] {
            let s = PositionSet::new(positions).map_err(|e| e.to_string())?;
            let mask = s.iter().fold(0usize, |m, i| m | 1 << (i - 1));
            let closed = count_peak_closed(&s, n)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{s} not covered at n = {n}"))?;
            if closed != hist[mask] {
                return Err(format!("{s} at n = {n}: {closed} vs {}", hist[mask]));
            }
        }
    }
    Ok(format!("{{2}} and {{2, n-1}}, 4 <= n <= {top}"))
}

fn peak_search(_deep: bool) -> Result<String, String> {
    for k in 1..=13 {
        let target = 0.05 * k as f64;
        let found = find_periodic_word(target, 0.01).map_err(|e| e.to_string())?;
        let fam = found.family().ok_or("no family")?;
        if (growth_rate_periodic(fam) - target).abs() >= 0.01
            || (limit_growth_rate_periodic(fam) - target).abs() >= 0.01
        {
            return Err(format!("target {target}"));
        }
    }
    Ok("L = 0.05 .. 0.65, epsilon 0.01".into())
}
