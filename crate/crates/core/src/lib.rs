//! Exact enumeration of permutations by descent word and by peak set, and
//! constructions of binary words with prescribed growth rates.
//!
//! For an infinite binary word `w`, `d_n(w)` counts permutations of `[n]`
//! whose descent word is the length-`n-1` prefix of `w`, and `p_n(w)` does
//! the same for peak words. The growth rate of such a sequence is
//! `lim (a_n / n!)^{1/n}`. This crate provides:
//!
//! * [`words`]: finite and eventually periodic binary words (`prefix[period]`).
//! * [`numerics`]: factorials, binomials, zigzag numbers and log-space roots.
//! * [`descent`]: the alternating-sum recurrence for `d_n`, with a brute-force oracle.
//! * [`constructor`]: the adaptive `0` / `10` block construction that reaches
//!   any descent growth rate in `[0, 2/π]`, including the two-target variant.
//! * [`peaks`]: peak-set counting by inclusion–exclusion, gap-of-three
//!   splitting, closed forms, a transfer-matrix DP and brute force.
//! * [`peakgrowth`]: closed-form rates of the periodic words
//!   `(01(001)^a 0^b)^ω` and a search realizing any rate in `[0, 3^{-1/3}]`.

pub mod constructor;
pub mod descent;
pub mod error;
pub mod numerics;
pub mod peakgrowth;
pub mod peaks;
pub mod words;

mod perm;

pub use error::{Error, Result};
pub use numerics::{Count, Ratio};
pub use words::{BinaryWord, PositionSet, WordSpec};
