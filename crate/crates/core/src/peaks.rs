//! Counting permutations by peak set.
//!
//! Position `i` of `π ∈ S_n` is a peak when `π_{i-1} < π_i > π_{i+1}`, so the
//! peak set lies in `{2, ..., n-1}` and never holds two consecutive integers.
//! `p_n(S)` is the number of permutations whose peak set is exactly `S`.
//!
//! Several independent counters are provided:
//!
//! * [`count_peak_ie`]: inclusion–exclusion over admissible supersets of the
//!   "peak set contains `T`" counts [`count_q`].
//! * [`count_peak_split`]: factorization at every gap of three, with the
//!   closed forms of [`count_peak_closed`] on the pieces.
//! * [`count_peak_transfer`]: a quadratic dynamic program over the relative
//!   rank of the last entry; the only one that scales to large `n` for
//!   arbitrary sets.
//! * [`brute_force_peak`]: enumeration of `S_n`.
//!
//! [`count_peak_periodic`] evaluates the block product for the periodic peak
//! words `(01(001)^a 0^b)^ω`.

use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::descent::{check_brute_limit, BRUTE_FORCE_LIMIT};
use crate::error::{Error, Result};
use crate::numerics::{binomial, euler_zigzag, factorial, Count};
use crate::perm::{for_each_permutation, peak_mask};
use crate::words::{BinaryWord, PositionSet, WordSpec};

/// Default cap on the number of supersets inclusion–exclusion may visit.
pub const SUPERSET_LIMIT: usize = 1_000_000;

/// A set that can be a peak set for large enough `n`: elements `≥ 2`, no two
/// consecutive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PeakSet(PositionSet);

impl PeakSet {
    pub fn new(set: PositionSet) -> Result<Self> {
        if set.positions().first().is_some_and(|&p| p < 2) {
            return Err(Error::invalid("position 1 is never a peak"));
        }
        if let Some(w) = set.positions().windows(2).find(|w| w[1] == w[0] + 1) {
            return Err(Error::invalid(format!(
                "positions {} and {} are adjacent and cannot both be peaks",
                w[0], w[1]
            )));
        }
        Ok(PeakSet(set))
    }

    pub fn into_inner(self) -> PositionSet {
        self.0
    }
}

impl Deref for PeakSet {
    type Target = PositionSet;

    fn deref(&self) -> &PositionSet {
        &self.0
    }
}

impl std::str::FromStr for PeakSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PeakSet::new(s.parse()?)
    }
}

impl std::fmt::Display for PeakSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `S ⊆ {2, ..., n-1}` with no two consecutive elements.
pub fn is_admissible(s: &PositionSet, n: usize) -> bool {
    let p = s.positions();
    p.first().is_none_or(|&f| f >= 2)
        && p.last().is_none_or(|&l| l < n)
        && p.windows(2).all(|w| w[1] > w[0] + 1)
}

/// Maximal chains `{ℓ, ℓ+2, ..., ℓ+2k}` partitioning a peak set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPartition {
    pub blocks: Vec<PositionSet>,
}

pub fn maximal_alternating_partition(s: &PositionSet) -> AlternatingPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in s.iter() {
        match blocks.last_mut() {
            Some(b) if *b.last().expect("blocks are nonempty") + 2 == i => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    AlternatingPartition {
        blocks: blocks
            .into_iter()
            .map(|b| PositionSet::new(b).expect("increasing"))
            .collect(),
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok(())
}

/// Number of permutations of `[n]` whose peak set contains `S`:
/// `n! · ∏_{A} E_{2|A|+1} / (2|A|+1)!` over the maximal alternating blocks.
pub fn count_q(s: &PositionSet, n: usize) -> Result<Count> {
    require_positive(n)?;
    if !is_admissible(s, n) {
        return Err(Error::invalid(format!(
            "{s} is not an admissible peak set for n = {n}"
        )));
    }
    let mut num = factorial(n as u64);
    let mut den = Count::one();
    for block in maximal_alternating_partition(s).blocks {
        let size = 2 * block.len() + 1;
        num *= euler_zigzag(size);
        den *= factorial(size as u64);
    }
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Q_{s}({n}) is not an integer");
    Ok(q)
}

/// Calls `visit` on every admissible `T` with `S ⊆ T ⊆ {2, ..., n-1}`.
/// Fails once more than `limit` sets would be visited.
pub fn for_each_admissible_superset(
    s: &PositionSet,
    n: usize,
    limit: usize,
    mut visit: impl FnMut(&PositionSet),
) -> Result<usize> {
    if !is_admissible(s, n) {
        return Ok(0);
    }
    let free: Vec<usize> = (2..n)
        .filter(|&i| !s.contains(i) && !s.contains(i - 1) && !s.contains(i + 1))
        .collect();
    let mut chosen = Vec::new();
    let mut visited = 0usize;
    extend_supersets(s, &free, 0, &mut chosen, &mut visited, limit, &mut visit)?;
    Ok(visited)
}

fn extend_supersets(
    base: &PositionSet,
    free: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    visited: &mut usize,
    limit: usize,
    visit: &mut impl FnMut(&PositionSet),
) -> Result<()> {
    *visited += 1;
    if *visited > limit {
        return Err(Error::resource(format!(
            "more than {limit} admissible supersets of {base}"
        )));
    }
    let mut all: Vec<usize> = base.iter().chain(chosen.iter().copied()).collect();
    all.sort_unstable();
    visit(&PositionSet::new(all).expect("distinct positions"));
    for k in from..free.len() {
        if chosen.last().is_some_and(|&c| free[k] == c + 1) {
            continue;
        }
        chosen.push(free[k]);
        extend_supersets(base, free, k + 1, chosen, visited, limit, visit)?;
        chosen.pop();
    }
    Ok(())
}

/// All admissible supersets of `S` within `{2, ..., n-1}`, `S` included.
pub fn admissible_supersets(s: &PositionSet, n: usize) -> Result<Vec<PositionSet>> {
    admissible_supersets_limited(s, n, SUPERSET_LIMIT)
}

pub fn admissible_supersets_limited(
    s: &PositionSet,
    n: usize,
    limit: usize,
) -> Result<Vec<PositionSet>> {
    let mut out = Vec::new();
    for_each_admissible_superset(s, n, limit, |t| out.push(t.clone()))?;
    Ok(out)
}

/// `p_n(S) = Σ_{T ⊇ S} (-1)^{|T - S|} Q_T(n)`; zero for inadmissible `S`.
pub fn count_peak_ie(s: &PositionSet, n: usize) -> Result<Count> {
    count_peak_ie_limited(s, n, SUPERSET_LIMIT)
}

pub fn count_peak_ie_limited(s: &PositionSet, n: usize, limit: usize) -> Result<Count> {
    require_positive(n)?;
    let mut total = BigInt::zero();
    for_each_admissible_superset(s, n, limit, |t| {
        let q = BigInt::from(count_q(t, n).expect("supersets are admissible"));
        if (t.len() - s.len()).is_multiple_of(2) {
            total += q;
        } else {
            total -= q;
        }
    })?;
    Ok(total
        .to_biguint()
        .expect("inclusion-exclusion produced a negative count"))
}

/// Closed forms: `p_n({2}) = 2^{n-2}(n-2)` and
/// `p_n({2, n-1}) = 2^{n-3}(n-4)(n-1)`. `Ok(None)` for any other set.
pub fn count_peak_closed(s: &PositionSet, n: usize) -> Result<Option<Count>> {
    if n < 4 {
        return Err(Error::invalid(format!("closed forms need n >= 4, got {n}")));
    }
    let two_pow = |e: usize| Count::one() << e;
    Ok(match s.positions() {
        [2] => Some(two_pow(n - 2) * (n - 2)),
        [2, last] if *last == n - 1 => Some(two_pow(n - 3) * (n - 4) * (n - 1)),
        _ => None,
    })
}

/// Splits at every gap of three: if `m` and `m+3` are consecutive elements
/// of `S`, then `p_n(S) = C(n, m+1) · p_{m+1}(S_L) · p_{n-m-1}(S_R)` where
/// `S_R` is re-indexed to start at 2. Unsplittable pieces go to the closed
/// forms when they apply, else to inclusion–exclusion.
pub fn count_peak_split(s: &PositionSet, n: usize) -> Result<Count> {
    require_positive(n)?;
    split_product(s, n, &|piece, size| count_peak_ie(piece, size))
}

fn split_product(
    s: &PositionSet,
    n: usize,
    fallback: &dyn Fn(&PositionSet, usize) -> Result<Count>,
) -> Result<Count> {
    if !is_admissible(s, n) {
        return Ok(Count::zero());
    }
    let mut acc = Count::one();
    let mut placed = 0usize;
    for (piece, size) in gap_of_three_pieces(s, n) {
        let count = match if size >= 4 {
            count_peak_closed(&piece, size)?
        } else {
            None
        } {
            Some(c) => c,
            None => fallback(&piece, size)?,
        };
        placed += size;
        acc = acc * binomial(placed as u64, size as u64) * count;
    }
    Ok(acc)
}

/// Pieces `(S_i, n_i)` of the gap-of-three factorization, left to right.
fn gap_of_three_pieces(s: &PositionSet, n: usize) -> Vec<(PositionSet, usize)> {
    let mut pieces = Vec::new();
    let mut offset = 0usize;
    let mut current = Vec::new();
    let p = s.positions();
    for (k, &x) in p.iter().enumerate() {
        current.push(x - offset);
        if p.get(k + 1) == Some(&(x + 3)) {
            let size = x + 1 - offset;
            pieces.push((
                PositionSet::new(std::mem::take(&mut current)).unwrap(),
                size,
            ));
            offset = x + 1;
        }
    }
    pieces.push((PositionSet::new(current).unwrap(), n - offset));
    pieces
}

/// `p_n(S)` by dynamic programming over the up/down pattern.
///
/// State after placing `j` entries: the relative rank of the last entry
/// among them and whether the last step went up. Position `j` is a peak iff
/// an up step is followed by a down step, which is all the constraint needs.
/// Uses `O(n^2)` big-integer additions.
pub fn count_peak_transfer(s: &PositionSet, n: usize) -> Result<Count> {
    require_positive(n)?;
    if !is_admissible(s, n) {
        return Ok(Count::zero());
    }
    if n == 1 {
        return Ok(Count::one());
    }
    // Index r - 1 holds the count with last rank r.
    let mut up = vec![Count::zero(), Count::one()];
    let mut down = vec![Count::one(), Count::zero()];
    for j in 2..n {
        let peak_here = s.contains(j);
        let mut new_up = vec![Count::zero(); j + 1];
        let mut new_down = vec![Count::zero(); j + 1];
        // New rank r' in 1..=j+1: up iff the previous rank r < r'.
        if !peak_here {
            let mut prefix = Count::zero();
            for rp in 1..=j + 1 {
                if rp >= 2 {
                    prefix += &up[rp - 2];
                    prefix += &down[rp - 2];
                }
                new_up[rp - 1] = prefix.clone();
            }
        }
        let source = if peak_here { &up } else { &down };
        let mut suffix = Count::zero();
        for rp in (1..=j).rev() {
            suffix += &source[rp - 1];
            new_down[rp - 1] = suffix.clone();
        }
        up = new_up;
        down = new_down;
    }
    Ok(up.iter().chain(down.iter()).sum())
}

/// Enumerates `S_n` and counts permutations whose peak set is exactly `S`.
pub fn brute_force_peak(s: &PositionSet, n: usize) -> Result<Count> {
    brute_force_peak_limited(s, n, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_peak_limited(s: &PositionSet, n: usize, limit: usize) -> Result<Count> {
    require_positive(n)?;
    check_brute_limit(n, limit)?;
    if s.max().is_some_and(|m| m >= n) {
        return Ok(Count::zero());
    }
    let target = s.iter().fold(0u64, |m, i| m | 1 << (i - 1));
    let mut hits = 0u64;
    for_each_permutation(n, |p| {
        if peak_mask(p) == target {
            hits += 1;
        }
    });
    Ok(Count::from(hits))
}

/// Brute-force `p_n` of every subset of `[n-1]` in one sweep; entry `mask`
/// is the count for the set whose position `i` is bit `i - 1`.
pub fn brute_force_peak_all(n: usize) -> Result<Vec<Count>> {
    require_positive(n)?;
    check_brute_limit(n, BRUTE_FORCE_LIMIT)?;
    let mut hist = vec![0u64; 1 << (n - 1)];
    for_each_permutation(n, |p| hist[peak_mask(p) as usize] += 1);
    Ok(hist.into_iter().map(Count::from).collect())
}

/// The peak word `(01(001)^a 0^b)^ω`.
pub fn periodic_peak_spec(a: usize, b: usize) -> WordSpec {
    let mut period = BinaryWord::from_bits(vec![false, true]);
    for _ in 0..a {
        period = period.concat(&"001".parse().expect("literal"));
    }
    period = period.concat(&BinaryWord::zeros(b));
    WordSpec::periodic(period).expect("nonempty period")
}

/// Peak set of `(01(001)^a 0^b)^ω` restricted to `{2, ..., n-1}`.
pub fn periodic_peak_set(a: usize, b: usize, n: usize) -> PositionSet {
    let word = periodic_peak_spec(a, b).word_prefix(n.saturating_sub(1));
    crate::words::word_to_set(&word)
}

fn check_family(a: usize, b: usize) -> Result<()> {
    if a < 2 || b < 2 {
        return Err(Error::invalid(format!(
            "the periodic family needs a, b >= 2, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// Exact `p_n` of the peak word `(01(001)^a 0^b)^ω` by the block product.
///
/// The word factors as `w1 (w2 w3)^ω` with `w1 = (010)^a`,
/// `w2 = 010 0^{b-1} 010` (peaks `{2, b+4}`) and `w3 = (010)^{a-1}`, and
/// consecutive blocks meet at a gap of three. Writing
/// `n - 3a = q(3a+b+2) + r` with `1 ≤ r ≤ 3a+b+2`, the last block is a
/// truncated `w2` (size `r`) or a full `w2` followed by a truncated `w3`.
/// A trailing piece of size 2 has no peak to split at, so it is absorbed
/// into the block before it.
pub fn count_peak_periodic(a: usize, b: usize, n: usize) -> Result<Count> {
    check_family(a, b)?;
    if n < 3 * a + 1 {
        return Err(Error::invalid(format!(
            "the block product needs n >= 3a + 1 = {}, got {n}",
            3 * a + 1
        )));
    }
    let w1: Vec<usize> = (0..a).map(|k| 2 + 3 * k).collect();
    let w2 = vec![2, b + 4];
    let w3: Vec<usize> = (0..a - 1).map(|k| 2 + 3 * k).collect();
    let (s1, s2, s3) = (3 * a, b + 5, 3 * a - 3);
    let cycle = s2 + s3;

    let rest = n - s1;
    let q = (rest - 1) / cycle;
    let r = rest - q * cycle;

    let mut blocks: Vec<(Vec<usize>, usize)> = vec![(w1, s1)];
    for _ in 0..q {
        blocks.push((w2.clone(), s2));
        blocks.push((w3.clone(), s3));
    }
    if r <= s2 {
        blocks.push((w2.clone(), r));
    } else {
        blocks.push((w2.clone(), s2));
        blocks.push((w3, r - s2));
    }
    if let Some(&(_, 2)) = blocks.last() {
        blocks.pop();
        blocks.last_mut().expect("w1 is always present").1 += 2;
    }

    let mut acc = Count::one();
    let mut placed = 0usize;
    for (set, size) in blocks {
        let set = PositionSet::new(set.into_iter().filter(|&p| p < size).collect())?;
        placed += size;
        let count = split_product(&set, size, &|piece, m| count_peak_transfer(piece, m))?;
        acc = acc * binomial(placed as u64, size as u64) * count;
    }
    debug_assert_eq!(placed, n);
    Ok(acc)
}
