//! Adaptive construction of a descent word with a prescribed growth rate.
//!
//! Given `L ∈ [0, 2/π]` with `M = 1/L`, the builder keeps a state `q ∈ {0, 10}`
//! and the control ratio `r_n = d_n(w) / n! · M^n`. Starting from `w_1 = 0`,
//! at each position `n` it compares `r_n` with 1, switching to `10` when
//! `r_n < 1` and back to `0` when `r_n > 1`, then appends `q`. Since `r_n`
//! only depends on `w_1 .. w_{n-1}`, it is known before `w_n` is chosen.
//!
//! With two targets `L ≤ L'` the switch back to `0` uses
//! `r'_n = d_n(w) / n! · (1/L')^n` instead, which drives the lower and upper
//! growth rates of the word to `L` and `L'`.
//!
//! Every comparison with 1 is decided exactly: for `L = p/q` in lowest terms,
//! `r_n < 1` iff `d_n · q^n < n! · p^n`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::descent::DescentDp;
use crate::error::{Error, Result};
use crate::numerics::{ln_biguint, ln_ratio, Count, Ratio, ZigzagNumbers};
use crate::words::BinaryWord;

/// Certified lower bound 0.636619 for `2/π`.
pub fn two_over_pi_lower() -> Ratio {
    Ratio::new(636_619.into(), 1_000_000.into())
}

/// Certified upper bound 0.636620 for `2/π`.
pub fn two_over_pi_upper() -> Ratio {
    Ratio::new(636_620.into(), 1_000_000.into())
}

/// Builder state: which block is appended next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum State {
    Zero,
    OneZero,
}

impl State {
    fn block(self) -> &'static [bool] {
        match self {
            State::Zero => &[false],
            State::OneZero => &[true, false],
        }
    }

    fn toggled(self) -> State {
        match self {
            State::Zero => State::OneZero,
            State::OneZero => State::Zero,
        }
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            State::Zero => "0",
            State::OneZero => "10",
        })
    }
}

/// How the word was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `L = 0`: the all-zeros word.
    Zeros,
    /// `L` inside the enclosure of `2/π`: the alternating word `0(10)^ω`.
    Alternating,
    /// The adaptive builder.
    Adaptive,
}

/// Diagnostics recorded for one `n`.
#[derive(Debug, Clone, Serialize)]
pub struct RSample {
    pub n: usize,
    /// Sign of `r_n - 1`.
    pub sign: i8,
    /// `ln r_n` (`+inf` when `L = 0`).
    pub ln_r: f64,
    /// Sign of `r'_n - 1`; equals `sign` for a single target.
    pub sign_high: i8,
    pub ln_r_high: f64,
    /// `(d_n / n!)^{1/n}`.
    pub growth: f64,
}

impl RSample {
    /// `r_n^{1/n}`.
    pub fn r_root(&self) -> f64 {
        (self.ln_r / self.n as f64).exp()
    }
}

/// Result of a bounded run of the builder.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructorRun {
    #[serde(serialize_with = "ser_ratio")]
    pub target_low: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub target_high: Ratio,
    pub regime: Regime,
    /// Threshold `K` for the low target: least `K` with `M^k/k! ≤ 1` and
    /// `E_k/(2·k!)·M^k ≥ 1` for all `k ≥ K`. `None` when `L` is an endpoint
    /// or the search hit its limit.
    #[serde(rename = "K")]
    pub k_constant: Option<u64>,
    pub word: BinaryWord,
    /// Positions `n` at which the state changed; the letter `w_n` is the
    /// first one written in the new state.
    pub flips: Vec<usize>,
    /// One entry per `n = 1 ..= word.len() + 1`.
    pub r_log: Vec<RSample>,
    /// Exact `r_n` for `n = 1 ..= exact_samples` (low target only).
    #[serde(skip)]
    pub exact_r: Vec<Ratio>,
    pub state_final: State,
}

fn ser_ratio<S: Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl ConstructorRun {
    pub fn sample(&self, n: usize) -> Option<&RSample> {
        n.checked_sub(1).and_then(|i| self.r_log.get(i))
    }

    /// `(d_n / n!)^{1/n}` at `n`.
    pub fn growth(&self, n: usize) -> Option<f64> {
        self.sample(n).map(|s| s.growth)
    }

    pub fn first_flip(&self) -> Option<usize> {
        self.flips.first().copied()
    }

    /// State in force when letter `w_i` was written.
    pub fn state_at(&self, i: usize) -> State {
        let switches = self.flips.iter().take_while(|&&f| f <= i).count();
        if switches % 2 == 0 {
            State::Zero
        } else {
            State::OneZero
        }
    }
}

/// Knobs for a run.
#[derive(Debug, Clone)]
pub struct ConstructorOptions {
    /// Keep exact `r_n` for the first this-many `n`.
    pub exact_samples: usize,
    /// Give up searching for `K` beyond this `k`.
    pub k_search_limit: u64,
}

impl Default for ConstructorOptions {
    fn default() -> Self {
        ConstructorOptions {
            exact_samples: 100,
            k_search_limit: 3000,
        }
    }
}

/// `K` for target `L`: the least `K` such that `M^k / k! ≤ 1` and
/// `½ · E_k / k! · M^k ≥ 1` for every `k` in `[K, K + 200]`.
pub fn compute_k(l: &Ratio) -> Result<u64> {
    compute_k_limited(l, ConstructorOptions::default().k_search_limit)
}

pub fn compute_k_limited(l: &Ratio, limit: u64) -> Result<u64> {
    const WINDOW: u64 = 200;
    if !l.is_positive() || *l >= two_over_pi_lower() {
        return Err(Error::invalid(format!(
            "K is defined for 0 < L < 2/π (certified below 0.636619); got {l}"
        )));
    }
    let (p, q) = split_ratio(l);
    let two = BigUint::from(2u32);
    let mut zigzag = ZigzagNumbers::new();
    zigzag.next();
    let (mut p_pow, mut q_pow, mut fact) = (BigUint::one(), BigUint::one(), BigUint::one());
    let mut candidate = 1u64;
    for k in 1u64.. {
        if k > limit {
            return Err(Error::resource(format!(
                "no K found with k <= {limit} for L = {l}"
            )));
        }
        let e_k = zigzag.next().expect("infinite");
        p_pow *= &p;
        q_pow *= &q;
        fact *= k;
        let scaled = &fact * &p_pow;
        // M^k/k! ≤ 1  and  E_k M^k ≥ 2 k!
        let decays = q_pow <= scaled;
        let alternation_wins = &e_k * &q_pow >= &two * &scaled;
        if !(decays && alternation_wins) {
            candidate = k + 1;
        }
        if k >= candidate + WINDOW {
            break;
        }
    }
    Ok(candidate)
}

/// `(f(n), g(n)) = (1 / [(n+K)^K · n]^{1/n}, (M^{K+2})^{1/n})`, the bounds
/// that squeeze `r_n^{1/n}` after the first flip.
pub fn envelope(n: u64, k: u64, m: &Ratio) -> (f64, f64) {
    assert!(n >= 1 && k >= 1);
    let (nf, kf) = (n as f64, k as f64);
    let f = (-(kf * (nf + kf).ln() + nf.ln()) / nf).exp();
    let g = ((kf + 2.0) * ln_ratio(m) / nf).exp();
    (f, g)
}

fn split_ratio(r: &Ratio) -> (BigUint, BigUint) {
    let p = r.numer().to_biguint().expect("nonnegative");
    let q = r.denom().to_biguint().expect("positive");
    (p, q)
}

/// Exact tracking of `r_n = d_n q^n / (n! p^n)` for `L = p/q > 0`.
struct Control {
    p: BigUint,
    q: BigUint,
    p_pow: BigUint,
    q_pow: BigUint,
    ln_m: f64,
}

impl Control {
    fn new(l: &Ratio) -> Option<Control> {
        if l.is_zero() {
            return None;
        }
        let (p, q) = split_ratio(l);
        let ln_m = ln_biguint(&q) - ln_biguint(&p);
        Some(Control {
            p,
            q,
            p_pow: BigUint::one(),
            q_pow: BigUint::one(),
            ln_m,
        })
    }

    fn advance(&mut self) {
        self.p_pow *= &self.p;
        self.q_pow *= &self.q;
    }

    fn compare(&self, d: &Count, fact: &Count) -> Ordering {
        (d * &self.q_pow).cmp(&(fact * &self.p_pow))
    }

    fn exact(&self, d: &Count, fact: &Count) -> Ratio {
        Ratio::new(
            BigInt::from(d * &self.q_pow),
            BigInt::from(fact * &self.p_pow),
        )
    }
}

fn sign_of(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Walks `n` upward alongside a [`DescentDp`], logging `r_n` and `r'_n`.
struct Tracker {
    dp: DescentDp,
    n: usize,
    fact: Count,
    low: Option<Control>,
    high: Option<Control>,
    log: Vec<RSample>,
    exact: Vec<Ratio>,
    exact_samples: usize,
}

impl Tracker {
    fn new(low: &Ratio, high: &Ratio, exact_samples: usize) -> Tracker {
        let mut t = Tracker {
            dp: DescentDp::new(),
            n: 0,
            fact: Count::one(),
            low: Control::new(low),
            high: Control::new(high),
            log: Vec::new(),
            exact: Vec::new(),
            exact_samples,
        };
        t.step();
        t
    }

    /// Moves to `n + 1` (whose `d` must already be known) and logs it.
    fn step(&mut self) {
        self.n += 1;
        let n = self.n;
        self.fact *= n;
        for c in self.low.iter_mut().chain(self.high.iter_mut()) {
            c.advance();
        }
        let d = self.dp.count(n).expect("count computed before step");
        let ln_d_over_fact = ln_biguint(d) - ln_biguint(&self.fact);
        let (sign, ln_r) = match &self.low {
            Some(c) => (
                sign_of(c.compare(d, &self.fact)),
                ln_d_over_fact + n as f64 * c.ln_m,
            ),
            None => (1, f64::INFINITY),
        };
        let (sign_high, ln_r_high) = match &self.high {
            Some(c) => (
                sign_of(c.compare(d, &self.fact)),
                ln_d_over_fact + n as f64 * c.ln_m,
            ),
            None => (1, f64::INFINITY),
        };
        if n <= self.exact_samples {
            if let Some(c) = &self.low {
                self.exact.push(c.exact(d, &self.fact));
            }
        }
        self.log.push(RSample {
            n,
            sign,
            ln_r,
            sign_high,
            ln_r_high,
            growth: (ln_d_over_fact / n as f64).exp(),
        });
    }

    fn push(&mut self, letter: bool) {
        self.dp.push(letter);
        self.step();
    }

    fn current(&self) -> &RSample {
        self.log.last().expect("n = 1 is logged at construction")
    }
}

/// Runs the builder for target `L` until the word has `n_max` letters.
pub fn construct_word(l: &Ratio, n_max: usize) -> Result<ConstructorRun> {
    construct_word_with(l, l, n_max, &ConstructorOptions::default())
}

/// Two-target variant: lower growth rate `L`, upper growth rate `L_high`.
pub fn construct_word_dual(l: &Ratio, l_high: &Ratio, n_max: usize) -> Result<ConstructorRun> {
    construct_word_with(l, l_high, n_max, &ConstructorOptions::default())
}

pub fn construct_word_with(
    l: &Ratio,
    l_high: &Ratio,
    n_max: usize,
    opts: &ConstructorOptions,
) -> Result<ConstructorRun> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let upper = two_over_pi_upper();
    if l.is_negative() || l_high.is_negative() {
        return Err(Error::invalid("growth-rate targets must be nonnegative"));
    }
    if *l > upper || *l_high > upper {
        return Err(Error::invalid(format!(
            "growth-rate targets cannot exceed 2/π (certified below {upper})"
        )));
    }
    if l > l_high {
        return Err(Error::invalid(format!(
            "lower target {l} exceeds upper target {l_high}"
        )));
    }

    let lower = two_over_pi_lower();
    let regime = if l.is_zero() && l_high.is_zero() {
        Regime::Zeros
    } else if *l >= lower {
        Regime::Alternating
    } else {
        Regime::Adaptive
    };
    let k_constant = match regime {
        Regime::Adaptive if l.is_positive() => compute_k_limited(l, opts.k_search_limit).ok(),
        _ => None,
    };

    let mut tracker = Tracker::new(l, l_high, opts.exact_samples);
    let mut flips = Vec::new();
    let mut state = State::Zero;
    tracker.push(false);

    while tracker.dp.word().len() < n_max {
        let n = tracker.dp.word().len() + 1;
        debug_assert_eq!(tracker.current().n, n);
        let flip = match (regime, state) {
            (Regime::Zeros, _) => false,
            (Regime::Alternating, State::Zero) => true,
            (Regime::Alternating, State::OneZero) => false,
            (Regime::Adaptive, State::Zero) => tracker.current().sign < 0,
            (Regime::Adaptive, State::OneZero) => tracker.current().sign_high > 0,
        };
        if flip {
            state = state.toggled();
            flips.push(n);
        }
        for &letter in state.block() {
            if tracker.dp.word().len() == n_max {
                break;
            }
            tracker.push(letter);
        }
    }

    Ok(ConstructorRun {
        target_low: l.clone(),
        target_high: l_high.clone(),
        regime,
        k_constant,
        word: tracker.dp.word().clone(),
        flips,
        r_log: tracker.log,
        exact_r: tracker.exact,
        state_final: state,
    })
}
