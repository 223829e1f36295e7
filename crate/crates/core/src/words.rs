//! Finite binary words, eventually periodic infinite words, and position sets.
//!
//! All indexing is 1-based: the first letter of a word is `w_1`.
//!
//! Infinite words are written `prefix[period]`, e.g. `010[100]` is
//! `010 100 100 100 ...`. A bare string with no brackets means the prefix
//! followed by `0` forever, so a finite set `I ⊆ ℕ` is written as the plain
//! indicator string of `I`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryWord { bits }
    }

    /// The word of length `len` whose letters are the low bits of `mask`,
    /// `w_1` being bit 0.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64, "mask words are limited to 64 letters");
        BinaryWord {
            bits: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        BinaryWord {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Letter `w_i`, 1-indexed.
    pub fn get(&self, i: usize) -> Option<bool> {
        i.checked_sub(1).and_then(|j| self.bits.get(j).copied())
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// The first `k` letters, `w[k]`.
    pub fn truncated(&self, k: usize) -> BinaryWord {
        BinaryWord {
            bits: self.bits[..k.min(self.bits.len())].to_vec(),
        }
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BinaryWord { bits }
    }

    /// 1-based positions of the letters equal to 1.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_constant(&self) -> bool {
        self.bits.windows(2).all(|p| p[0] == p[1])
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s, 0).map(BinaryWord::from_bits)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_bits(s: &str, offset: usize) -> Result<Vec<bool>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::parse(
                offset + i + 1,
                format!("unexpected character {other:?}, expected 0 or 1"),
            )),
        })
        .collect()
}

/// An eventually periodic infinite word: `prefix` followed by `period`
/// repeated forever.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WordSpec {
    prefix: BinaryWord,
    period: BinaryWord,
}

impl WordSpec {
    pub fn new(prefix: BinaryWord, period: BinaryWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid(
                "the period of an infinite word must be nonempty",
            ));
        }
        Ok(WordSpec { prefix, period })
    }

    /// `x^ω` for a nonempty `x`.
    pub fn periodic(period: BinaryWord) -> Result<Self> {
        Self::new(BinaryWord::new(), period)
    }

    /// `x 0^ω`, the indicator word of a finite set.
    pub fn finite(prefix: BinaryWord) -> Self {
        WordSpec {
            prefix,
            period: BinaryWord::zeros(1),
        }
    }

    pub fn prefix(&self) -> &BinaryWord {
        &self.prefix
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    /// Letter `w_i` (1-indexed). `i = 0` has no letter.
    pub fn letter(&self, i: usize) -> bool {
        assert!(i >= 1, "words are 1-indexed");
        let j = i - 1;
        if j < self.prefix.len() {
            self.prefix.bits[j]
        } else {
            let k = (j - self.prefix.len()) % self.period.len();
            self.period.bits[k]
        }
    }

    /// `w[k]`, the first `k` letters.
    pub fn word_prefix(&self, k: usize) -> BinaryWord {
        BinaryWord {
            bits: (1..=k).map(|i| self.letter(i)).collect(),
        }
    }

    /// Letters `w_1 w_2 ...` without end.
    pub fn letters(&self) -> impl Iterator<Item = bool> + '_ {
        (1..).map(move |i| self.letter(i))
    }

    /// The `m`-shift `w_{m+1} w_{m+2} ...`. Prefix letters are dropped first;
    /// once the prefix is used up the period is rotated instead.
    pub fn shift(&self, m: usize) -> WordSpec {
        if m <= self.prefix.len() {
            return WordSpec {
                prefix: BinaryWord::from_bits(self.prefix.bits[m..].to_vec()),
                period: self.period.clone(),
            };
        }
        let p = self.period.len();
        let rot = (m - self.prefix.len()) % p;
        let mut bits = self.period.bits[rot..].to_vec();
        bits.extend_from_slice(&self.period.bits[..rot]);
        WordSpec {
            prefix: BinaryWord::new(),
            period: BinaryWord::from_bits(bits),
        }
    }

    /// Whether both specs denote the same infinite word.
    pub fn same_word(&self, other: &WordSpec) -> bool {
        let horizon =
            self.prefix.len().max(other.prefix.len()) + lcm(self.period.len(), other.period.len());
        (1..=horizon).all(|i| self.letter(i) == other.letter(i))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Parses `PREFIX? '[' PERIOD ']'` or a bare `PREFIX` (meaning `PREFIX 0^ω`).
pub fn parse_word_spec(text: &str) -> Result<WordSpec> {
    let text = text.trim();
    let Some(open) = text.find('[') else {
        if let Some(close) = text.find(']') {
            return Err(Error::parse(close + 1, "']' without a matching '['"));
        }
        return Ok(WordSpec::finite(BinaryWord::from_bits(parse_bits(
            text, 0,
        )?)));
    };
    let prefix = parse_bits(&text[..open], 0)?;
    let rest = &text[open + 1..];
    let Some(close) = rest.find(']') else {
        if let Some(extra) = rest.find('[') {
            return Err(Error::parse(open + extra + 2, "nested '['"));
        }
        return Err(Error::parse(text.len(), "missing closing ']'"));
    };
    let period = parse_bits(&rest[..close], open + 1)?;
    if period.is_empty() {
        return Err(Error::parse(open + 2, "empty period inside brackets"));
    }
    let tail = &rest[close + 1..];
    if !tail.is_empty() {
        return Err(Error::parse(
            open + close + 3,
            "trailing characters after the period",
        ));
    }
    WordSpec::new(BinaryWord::from_bits(prefix), BinaryWord::from_bits(period))
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word_spec(s)
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.prefix, self.period)
    }
}

impl fmt::Debug for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordSpec({self})")
    }
}

impl Serialize for WordSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A strictly increasing set of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PositionSet {
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) {
            return Err(Error::invalid("positions are 1-based; 0 is not a position"));
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::invalid("positions must be strictly increasing"));
        }
        Ok(PositionSet { positions })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.positions.last().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }

    pub fn is_subset(&self, other: &PositionSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated list such as `2,5,9`; braces and blanks are
/// tolerated, the empty string is the empty set. Order is not significant.
impl FromStr for PositionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if body.is_empty() {
            return Ok(PositionSet::empty());
        }
        let mut positions = body
            .split(',')
            .map(|item| {
                item.trim().parse::<usize>().map_err(|_| {
                    Error::parse(0, format!("{:?} is not a nonnegative integer", item.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        positions.sort_unstable();
        let before = positions.len();
        positions.dedup();
        if positions.len() != before {
            return Err(Error::invalid("repeated position in set"));
        }
        PositionSet::new(positions)
    }
}

/// `Alt(S) = { i : exactly one of i, i+1 is in S }`, reading `word` as the
/// indicator of `S ⊆ [n-1]` with `n = word.len() + 1`.
pub fn alternation_set(word: &BinaryWord) -> PositionSet {
    let positions = word
        .bits
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] != p[1])
        .map(|(i, _)| i + 1)
        .collect();
    PositionSet { positions }
}

/// Indicator word of `set` with `len` letters.
pub fn set_to_word(set: &PositionSet, len: usize) -> Result<BinaryWord> {
    if let Some(max) = set.max() {
        if max > len {
            return Err(Error::invalid(format!(
                "position {max} does not fit in a word of length {len}"
            )));
        }
    }
    let mut bits = vec![false; len];
    for i in set.iter() {
        bits[i - 1] = true;
    }
    Ok(BinaryWord { bits })
}

/// Positions of the 1s of `word`.
pub fn word_to_set(word: &BinaryWord) -> PositionSet {
    PositionSet {
        positions: word.ones().collect(),
    }
}
