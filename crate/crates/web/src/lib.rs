//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each exported function returns a JSON string; errors become JS
//! exceptions carrying the message. The `*_json` functions hold the logic
//! and run natively in tests.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use permgrowth::constructor::{construct_word, construct_word_dual, envelope};
use permgrowth::descent::descent_series;
use permgrowth::numerics::parse_ratio;
use permgrowth::peakgrowth::{empirical_peak_growth, find_periodic_word};
use permgrowth::words::parse_word_spec;

/// Largest `n` any demo operation will compute; keeps the page responsive.
pub const MAX_N: usize = 1500;

fn check_n(n: usize) -> Result<(), String> {
    match n {
        0 => Err("n must be at least 1".into()),
        n if n > MAX_N => Err(format!("n is capped at {MAX_N} in the browser demo")),
        _ => Ok(()),
    }
}

fn text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Growth points `(d_n/n!)^{1/n}` of a descent word, `n = 1 ..= max_n`.
pub fn descent_curve_json(word: &str, max_n: usize) -> Result<String, String> {
    check_n(max_n)?;
    let spec = parse_word_spec(word).map_err(text)?;
    let series = descent_series(&spec, max_n).map_err(text)?;
    let points: Vec<Value> = series
        .rows()
        .map(|(n, c, g)| json!({"n": n, "count_digits": c.to_string().len(), "growth": g}))
        .collect();
    Ok(json!({"word": spec.to_string(), "points": points}).to_string())
}

/// A builder run toward `target` (optionally oscillating up to `upper`),
/// with `r_n^{1/n}` and its envelope at every `n`.
pub fn construct_json(target: &str, upper: &str, max_n: usize) -> Result<String, String> {
    check_n(max_n)?;
    let low = parse_ratio(target).map_err(text)?;
    let run = if upper.trim().is_empty() {
        construct_word(&low, max_n)
    } else {
        let high = parse_ratio(upper).map_err(text)?;
        construct_word_dual(&low, &high, max_n)
    }
    .map_err(text)?;
    // K exists only for interior targets, so the reciprocal is safe there.
    let m = run.k_constant.map(|_| low.recip());
    let points: Vec<Value> = run
        .r_log
        .iter()
        .map(|s| {
            let bounds = match (run.k_constant, &m) {
                (Some(k), Some(m)) => {
                    let (f, g) = envelope(s.n as u64, k, m);
                    json!([f, g])
                }
                _ => Value::Null,
            };
            json!({"n": s.n, "growth": s.growth, "r_root": finite(s.r_root()), "envelope": bounds})
        })
        .collect();
    let prefix: String = run.word.to_string().chars().take(200).collect();
    Ok(json!({
        "target": run.target_low.to_string(),
        "upper": run.target_high.to_string(),
        "K": run.k_constant,
        "flips": run.flips,
        "word_prefix": prefix,
        "points": points,
    })
    .to_string())
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// Periodic peak word near rate `target`, with its empirical growth up to
/// `max_n`.
pub fn peak_find_json(target: f64, epsilon: f64, max_n: usize) -> Result<String, String> {
    check_n(max_n)?;
    let found = find_periodic_word(target, epsilon).map_err(text)?;
    let mut points = Vec::new();
    if let Some(fam) = found.family() {
        let start = 3 * fam.a as usize + 1;
        for n in start..=max_n.max(start) {
            points.push(json!({"n": n, "growth": empirical_peak_growth(fam, n).map_err(text)?}));
        }
    }
    Ok(json!({"search": found, "points": points}).to_string())
}

#[wasm_bindgen]
pub fn descent_curve(word: &str, max_n: usize) -> Result<String, JsError> {
    descent_curve_json(word, max_n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construct(target: &str, upper: &str, max_n: usize) -> Result<String, JsError> {
    construct_json(target, upper, max_n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn peak_find(target: f64, epsilon: f64, max_n: usize) -> Result<String, JsError> {
    peak_find_json(target, epsilon, max_n).map_err(|e| JsError::new(&e))
}
