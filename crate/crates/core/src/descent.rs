//! Counting permutations by descent word.
//!
//! `d_n(w)` is the number of permutations of `[n]` whose descent word equals
//! `w[n-1]`. If the 1s of `w[n-1]` sit at `i_1 < ... < i_k`, then
//!
//! ```text
//! d_n(w) = Σ_{r=0}^{k} (-1)^{k-r} C(n, i_r) d_{i_r}(w),   i_0 = 0, d_0 = 1.
//! ```
//!
//! [`DescentDp`] evaluates this for `n = 1, 2, ...` as letters are appended,
//! so a whole series (or an adaptively built word) costs one pass.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{factorial, nth_root_float, Count, PascalRows};
use crate::perm::{descent_mask, for_each_permutation};
use crate::words::{BinaryWord, WordSpec};

/// Largest `n` the brute-force oracles enumerate by default.
pub const BRUTE_FORCE_LIMIT: usize = 11;

/// Incremental evaluation of `d_0, d_1, d_2, ...` along a growing word.
///
/// After `k` letters have been pushed, `d_0..=d_{k+1}` are available.
#[derive(Debug, Clone)]
pub struct DescentDp {
    word: BinaryWord,
    ones: Vec<usize>,
    counts: Vec<Count>,
    pascal: PascalRows,
}

impl DescentDp {
    pub fn new() -> Self {
        let mut pascal = PascalRows::new();
        pascal.advance();
        DescentDp {
            word: BinaryWord::new(),
            ones: Vec::new(),
            counts: vec![Count::one(), Count::one()],
            pascal,
        }
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    /// Largest `n` with `d_n` known, i.e. `word.len() + 1`.
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    /// `d_n` of the current word; `None` past [`max_n`](Self::max_n).
    pub fn count(&self, n: usize) -> Option<&Count> {
        self.counts.get(n)
    }

    /// The most recent count, `d_{max_n}`.
    pub fn last(&self) -> &Count {
        self.counts.last().expect("d_0 is always present")
    }

    /// `d_1, d_2, ...` up to `d_{max_n}`.
    pub fn counts(&self) -> &[Count] {
        &self.counts[1..]
    }

    /// Appends `w_{k+1}` and computes `d_{k+2}`; returns it.
    pub fn push(&mut self, letter: bool) -> &Count {
        self.word.push(letter);
        if letter {
            self.ones.push(self.word.len());
        }
        let m = self.word.len() + 1;
        self.pascal.advance();
        let row = self.pascal.row();
        debug_assert_eq!(row.len(), m + 1);

        // Terms alternate in sign, ending with + at r = k.
        let mut plus = BigUint::default();
        let mut minus = BigUint::default();
        let k = self.ones.len();
        let zero_term = BigUint::one();
        let terms = std::iter::once((0usize, &zero_term))
            .chain(self.ones.iter().map(|&i| (i, &self.counts[i])));
        for (r, (i, d)) in terms.enumerate() {
            let term = &row[i] * d;
            if (k - r).is_multiple_of(2) {
                plus += term;
            } else {
                minus += term;
            }
        }
        assert!(plus >= minus, "descent count went negative at n = {m}");
        self.counts.push(plus - minus);
        self.last()
    }
}

impl Default for DescentDp {
    fn default() -> Self {
        Self::new()
    }
}

/// `d_n(spec)`.
pub fn count_descent(spec: &WordSpec, n: usize) -> Result<Count> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut dp = DescentDp::new();
    for letter in spec.letters().take(n - 1) {
        dp.push(letter);
    }
    Ok(dp.last().clone())
}

/// `d_n(word)` for a finite word with at least `n - 1` letters.
pub fn count_descent_word(word: &BinaryWord, n: usize) -> Result<Count> {
    check_word_len(word, n)?;
    let mut dp = DescentDp::new();
    for &letter in &word.bits()[..n - 1] {
        dp.push(letter);
    }
    Ok(dp.last().clone())
}

fn check_word_len(word: &BinaryWord, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if word.len() < n - 1 {
        return Err(Error::invalid(format!(
            "word has {} letters but d_{n} needs {}",
            word.len(),
            n - 1
        )));
    }
    Ok(())
}

/// Counts permutations of `[n]` with descent word `word[n-1]` by enumerating
/// all of `S_n`. Refuses `n > 11`.
pub fn brute_force_descent(word: &BinaryWord, n: usize) -> Result<Count> {
    brute_force_descent_limited(word, n, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_descent_limited(word: &BinaryWord, n: usize, limit: usize) -> Result<Count> {
    check_word_len(word, n)?;
    check_brute_limit(n, limit)?;
    let target = mask_of(&word.truncated(n - 1));
    let mut hits = 0u64;
    for_each_permutation(n, |p| {
        if descent_mask(p) == target {
            hits += 1;
        }
    });
    Ok(Count::from(hits))
}

/// Brute-force `d_n(w)` for every `w` of length `n - 1` in one sweep over
/// `S_n`. Entry `mask` holds the count of [`BinaryWord::from_mask`]`(mask, n-1)`.
pub fn brute_force_descent_all(n: usize) -> Result<Vec<Count>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_brute_limit(n, BRUTE_FORCE_LIMIT)?;
    let mut hist = vec![0u64; 1 << (n - 1)];
    for_each_permutation(n, |p| hist[descent_mask(p) as usize] += 1);
    Ok(hist.into_iter().map(Count::from).collect())
}

pub(crate) fn check_brute_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::resource(format!(
            "brute force over S_{n} is above the limit n <= {limit}"
        )));
    }
    Ok(())
}

fn mask_of(word: &BinaryWord) -> u64 {
    word.ones().fold(0, |m, i| m | 1 << (i - 1))
}

/// `d_1..=d_{n_max}` of a word together with `(d_n / n!)^{1/n}`.
#[derive(Debug, Clone)]
pub struct DescentSeries {
    pub spec: WordSpec,
    pub counts: Vec<Count>,
    pub growth_points: Vec<f64>,
}

impl DescentSeries {
    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    /// `d_n`, 1-indexed.
    pub fn count(&self, n: usize) -> &Count {
        &self.counts[n - 1]
    }

    pub fn growth_point(&self, n: usize) -> f64 {
        self.growth_points[n - 1]
    }

    /// `(n, d_n, (d_n/n!)^{1/n})` rows.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Count, f64)> + '_ {
        self.counts
            .iter()
            .zip(&self.growth_points)
            .enumerate()
            .map(|(i, (c, &g))| (i + 1, c, g))
    }
}

pub fn descent_series(spec: &WordSpec, n_max: usize) -> Result<DescentSeries> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut dp = DescentDp::new();
    for letter in spec.letters().take(n_max - 1) {
        dp.push(letter);
    }
    let counts = dp.counts().to_vec();
    let mut fact = Count::one();
    let growth_points = counts
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let n = i + 1;
            fact *= n;
            nth_root_float(d, &fact, n as u64)
        })
        .collect();
    Ok(DescentSeries {
        spec: spec.clone(),
        counts,
        growth_points,
    })
}

/// `(d_n / n!)^{1/n}`, a finite-`n` estimate of the growth rate.
pub fn growth_estimate(spec: &WordSpec, n: usize) -> Result<f64> {
    let d = count_descent(spec, n)?;
    Ok(nth_root_float(&d, &factorial(n as u64), n as u64))
}
