//! Exact integer and rational helpers, plus log-space float reporting.
//!
//! Control decisions elsewhere in the crate only ever compare exact values;
//! the `f64` routines here exist for human-facing growth-rate reports.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact nonnegative count.
pub type Count = BigUint;

/// An exact rational number in lowest terms.
pub type Ratio = BigRational;

pub fn factorial(n: u64) -> Count {
    (2..=n).fold(Count::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    // Each partial product C(n-k+i, i) is an integer.
    (1..=k).fold(Count::one(), |acc, i| acc * (n - k + i) / i)
}

/// Successive rows of Pascal's triangle, `C(m, 0..=m)` for `m = 0, 1, ...`.
#[derive(Debug, Clone)]
pub struct PascalRows {
    row: Vec<Count>,
}

impl PascalRows {
    pub fn new() -> Self {
        PascalRows {
            row: vec![Count::one()],
        }
    }

    /// The current row `C(m, ·)` where `m = row.len() - 1`.
    pub fn row(&self) -> &[Count] {
        &self.row
    }

    /// Advances from row `m` to row `m + 1`.
    pub fn advance(&mut self) {
        let mut prev = Count::one();
        for j in 1..self.row.len() {
            let cur = std::mem::replace(&mut self.row[j], Count::zero());
            self.row[j] = &prev + &cur;
            prev = cur;
        }
        self.row.push(Count::one());
    }
}

impl Default for PascalRows {
    fn default() -> Self {
        Self::new()
    }
}

/// The zigzag numbers `E_0, E_1, E_2, ...` (1, 1, 1, 2, 5, 16, 61, ...),
/// generated row by row with the boustrophedon (Seidel) triangle.
#[derive(Debug, Clone)]
pub struct ZigzagNumbers {
    row: Vec<Count>,
}

impl ZigzagNumbers {
    pub fn new() -> Self {
        ZigzagNumbers { row: Vec::new() }
    }
}

impl Default for ZigzagNumbers {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ZigzagNumbers {
    type Item = Count;

    fn next(&mut self) -> Option<Count> {
        if self.row.is_empty() {
            self.row.push(Count::one());
            return Some(Count::one());
        }
        // Row k: T(k,0) = 0, T(k,j) = T(k,j-1) + T(k-1,k-j); E_k = T(k,k).
        let k = self.row.len();
        let mut next = Vec::with_capacity(k + 1);
        next.push(Count::zero());
        for j in 1..=k {
            let v = &next[j - 1] + &self.row[k - j];
            next.push(v);
        }
        self.row = next;
        self.row.last().cloned()
    }
}

/// `E_k`, the number of alternating permutations of size `k` (`E_0 = 1`).
pub fn euler_zigzag(k: usize) -> Count {
    ZigzagNumbers::new()
        .nth(k)
        .expect("zigzag sequence is infinite")
}

/// `E_0..=E_k_max`.
pub fn zigzag_numbers(k_max: usize) -> Vec<Count> {
    ZigzagNumbers::new().take(k_max + 1).collect()
}

/// Natural logarithm of a big integer, accurate to about 1e-15 relative.
/// Returns `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        if let Some(v) = x.to_f64() {
            if v.is_finite() {
                return v.ln();
            }
        }
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(num / den)`.
pub fn ln_quotient(num: &BigUint, den: &BigUint) -> f64 {
    ln_biguint(num) - ln_biguint(den)
}

/// `ln` of a nonnegative rational.
pub fn ln_ratio(x: &Ratio) -> f64 {
    let (num, den) = (x.numer(), x.denom());
    assert!(
        num.sign() != num_bigint::Sign::Minus,
        "logarithm of a negative rational"
    );
    ln_quotient(num.magnitude(), den.magnitude())
}

/// `(num / den)^{1/n}`, evaluated as `exp(ln(num/den) / n)`.
pub fn nth_root_float(num: &BigUint, den: &BigUint, n: u64) -> f64 {
    assert!(n >= 1, "root index must be positive");
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    (ln_quotient(num, den) / n as f64).exp()
}

/// `x^{1/n}` for a nonnegative rational `x`.
pub fn nth_root_ratio(x: &Ratio, n: u64) -> f64 {
    assert!(
        x.numer().sign() != num_bigint::Sign::Minus,
        "root of a negative rational"
    );
    nth_root_float(x.numer().magnitude(), x.denom().magnitude(), n)
}

/// `ln(n!)`: summed directly for small `n`, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 64 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// The ratio `p/q` from machine integers.
pub fn ratio(p: i64, q: i64) -> Ratio {
    Ratio::new(p.into(), q.into())
}

/// Parses `P/Q` or a bare integer into an exact rational.
pub fn parse_ratio(text: &str) -> crate::Result<Ratio> {
    use crate::Error;
    use num_bigint::BigInt;
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p
        .parse()
        .map_err(|_| Error::parse(1, format!("{p:?} is not an integer numerator")))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| Error::parse(1, format!("{q:?} is not an integer denominator")))?;
    if q.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(Ratio::new(p, q))
}
