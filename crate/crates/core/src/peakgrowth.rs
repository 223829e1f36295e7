//! Growth rates of periodic peak words.
//!
//! The peak word `(01(001)^a 0^b)^ω`, `a, b ≥ 2`, factors into blocks at
//! gaps of three, and each period contributes
//! `2^{b+2}(b+1)(b+4) / (b+5)! · 3^{-(a-1)}` to `p_n / n!` over
//! `3(a-1) + b + 5` letters. Hence the growth rate is
//!
//! ```text
//! exp( [ln((b+1)(b+4)) - ln((b+5)!) - (a-1) ln 3 + (b+2) ln 2] / (3(a-1) + b + 5) )
//! ```
//!
//! ([`limit_growth_rate_periodic`]). The customary closed form
//! [`growth_rate_periodic`] omits the `(b+1)(b+4)` factor. That factor is
//! raised to the number of periods, so it is not negligible for fixed
//! `a, b`; for `(2, 2)` the two values are 0.5040 and 0.6730. Both
//! expressions tend to `c = 3^{-1/3}` as `a → ∞` and to 0 as `b → ∞`, and
//! both tend to `L` along `a = ⌊m ln m⌋`, `b = ⌊γ m⌋` with `γ = 3 ln(c/L)`,
//! which is what [`find_periodic_word`] searches along.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{factorial, ln_factorial, nth_root_float};
use crate::peaks::{count_peak_periodic, periodic_peak_spec};
use crate::words::WordSpec;

/// `3^{-1/3}`, the largest peak growth rate.
pub fn max_peak_rate() -> f64 {
    3f64.powf(-1.0 / 3.0)
}

/// Parameters of the word `(01(001)^a 0^b)^ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodicPeakFamily {
    pub a: u64,
    pub b: u64,
}

impl PeriodicPeakFamily {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::invalid(format!(
                "the periodic family needs a, b >= 2, got a = {a}, b = {b}"
            )));
        }
        Ok(PeriodicPeakFamily { a, b })
    }

    pub fn word(&self) -> WordSpec {
        periodic_peak_spec(self.a as usize, self.b as usize)
    }
}

/// The three summands of the log growth rate: the `(b+5)!` term, the
/// `3^{-(a-1)}` term and the `2^{b+2}` term, each divided by the period
/// weight `3(a-1) + b + 5`.
pub fn log_rate_terms(fam: PeriodicPeakFamily) -> [f64; 3] {
    let (a, b) = (fam.a as f64, fam.b as f64);
    let weight = 3.0 * (a - 1.0) + b + 5.0;
    [
        -ln_factorial(fam.b + 5) / weight,
        -(a - 1.0) * 3f64.ln() / weight,
        (b + 2.0) * 2f64.ln() / weight,
    ]
}

/// The closed form without the per-period `(b+1)(b+4)` factor.
pub fn growth_rate_periodic(fam: PeriodicPeakFamily) -> f64 {
    log_rate_terms(fam).iter().sum::<f64>().exp()
}

/// `ln((b+1)(b+4)) / (3(a-1) + b + 5)`, the term [`growth_rate_periodic`]
/// leaves out.
pub fn log_rate_correction(fam: PeriodicPeakFamily) -> f64 {
    let (a, b) = (fam.a as f64, fam.b as f64);
    ((b + 1.0) * (b + 4.0)).ln() / (3.0 * (a - 1.0) + b + 5.0)
}

/// `lim (p_n / n!)^{1/n}` for `(01(001)^a 0^b)^ω`.
pub fn limit_growth_rate_periodic(fam: PeriodicPeakFamily) -> f64 {
    (log_rate_terms(fam).iter().sum::<f64>() + log_rate_correction(fam)).exp()
}

/// `(p_n / n!)^{1/n}` from the exact block-product count.
pub fn empirical_peak_growth(fam: PeriodicPeakFamily, n: usize) -> Result<f64> {
    let count = count_peak_periodic(fam.a as usize, fam.b as usize, n)?;
    Ok(nth_root_float(&count, &factorial(n as u64), n as u64))
}

/// Outcome of [`find_periodic_word`].
#[derive(Debug, Clone, Serialize)]
pub struct PeakTargetSearch {
    #[serde(rename = "L")]
    pub target: f64,
    pub epsilon: f64,
    /// `3 ln(c/L)`; absent for the endpoints.
    pub gamma: Option<f64>,
    pub m: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    /// Whether `b` had to be moved off `⌊γ m⌋` to land within tolerance.
    pub refined: bool,
    /// [`growth_rate_periodic`] of the family.
    pub achieved_rate: f64,
    /// [`limit_growth_rate_periodic`] of the family.
    pub limit_rate: f64,
    pub word: WordSpec,
}

impl PeakTargetSearch {
    pub fn family(&self) -> Option<PeriodicPeakFamily> {
        Some(PeriodicPeakFamily {
            a: self.a?,
            b: self.b?,
        })
    }
}

/// Default cap on `m` for [`find_periodic_word`].
pub const SEARCH_LIMIT: u64 = 10_000_000;

/// Finds a periodic peak word with growth rate within `epsilon` of `L`.
///
/// For `m = 2, 3, ...` the pair `a = ⌊m ln m⌋`, `b = ⌊γ m⌋` (both clamped to
/// at least 2) is tried first. Its rate converges to `L` only like
/// `1/ln m`, so when it misses, `b` is re-chosen at the same `a` by
/// bisection, the rate being decreasing in `b`. The first `m` at which both
/// [`growth_rate_periodic`] and [`limit_growth_rate_periodic`] land within
/// tolerance is returned.
pub fn find_periodic_word(target: f64, epsilon: f64) -> Result<PeakTargetSearch> {
    find_periodic_word_limited(target, epsilon, SEARCH_LIMIT)
}

pub fn find_periodic_word_limited(
    target: f64,
    epsilon: f64,
    max_m: u64,
) -> Result<PeakTargetSearch> {
    let c = max_peak_rate();
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::invalid(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !(0.0..=c).contains(&target) {
        return Err(Error::invalid(format!(
            "peak growth rates lie in [0, 3^(-1/3)] = [0, {c:.6}], got {target}"
        )));
    }
    let endpoint = |rate: f64, word: &str| PeakTargetSearch {
        target,
        epsilon,
        gamma: None,
        m: None,
        a: None,
        b: None,
        refined: false,
        achieved_rate: rate,
        limit_rate: rate,
        word: word.parse().expect("literal word"),
    };
    if target == 0.0 {
        return Ok(endpoint(0.0, "[0]"));
    }
    if (c - target).abs() < epsilon {
        return Ok(endpoint(c, "[001]"));
    }

    let gamma = 3.0 * (c / target).ln();
    let hit = |fam: PeriodicPeakFamily| {
        (growth_rate_periodic(fam) - target).abs() < epsilon
            && (limit_growth_rate_periodic(fam) - target).abs() < epsilon
    };
    for m in 2..=max_m {
        let mf = m as f64;
        let a = ((mf * mf.ln()).floor() as u64).max(2);
        let b = ((gamma * mf).floor() as u64).max(2);
        let literal = PeriodicPeakFamily { a, b };
        let (fam, refined) = if hit(literal) {
            (literal, false)
        } else if let Some(fam) = bisect_b(a, target).filter(|&f| hit(f)) {
            (fam, true)
        } else {
            continue;
        };
        return Ok(PeakTargetSearch {
            target,
            epsilon,
            gamma: Some(gamma),
            m: Some(m),
            a: Some(fam.a),
            b: Some(fam.b),
            refined,
            achieved_rate: growth_rate_periodic(fam),
            limit_rate: limit_growth_rate_periodic(fam),
            word: fam.word(),
        });
    }
    Err(Error::resource(format!(
        "no periodic word within {epsilon} of {target} for m <= {max_m}"
    )))
}

/// The `b ≥ 2` at fixed `a` whose rate is closest to `target`, or `None`
/// when even `b = 2` falls short. The rate bisected on is the geometric
/// mean of the two closed forms, so that both straddle `target`.
fn bisect_b(a: u64, target: f64) -> Option<PeriodicPeakFamily> {
    let rate = |b: u64| {
        let fam = PeriodicPeakFamily { a, b };
        (log_rate_terms(fam).iter().sum::<f64>() + 0.5 * log_rate_correction(fam)).exp()
    };
    if rate(2) < target {
        return None;
    }
    // Invariant: rate(lo) >= target > rate(hi).
    let mut lo = 2u64;
    let mut hi = 4u64;
    while rate(hi) >= target {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if rate(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = if rate(lo) - target <= target - rate(hi) {
        lo
    } else {
        hi
    };
    Some(PeriodicPeakFamily { a, b })
}
