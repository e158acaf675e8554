//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string; errors surface as JS exceptions. The
//! plain functions behind them are ordinary Rust and tested natively.

use mascheroni::bounds::{lookup, sweep};
use mascheroni::rational::{parse_rational, to_fraction_string};
use mascheroni::sequences::{SequenceKind, SequenceWalker};
use mascheroni::series::difference_expansion_v;
use mascheroni::{gamma_reference, Rational};
use serde_json::json;
use wasm_bindgen::prelude::*;

const PRECISION: u32 = 128;
const MAX_POINTS: u64 = 5000;

fn opt_rational(text: &str) -> Result<Option<Rational>, String> {
    let text = text.trim();
    if text.is_empty() {
        Ok(None)
    } else {
        parse_rational(text).map(Some).map_err(|e| e.to_string())
    }
}

/// Coefficients of `v_n - v_{n+1}` through `n^-order`; blank parameters stay
/// symbolic.
pub fn expansion_json(a: &str, b: &str, order: u32) -> Result<String, String> {
    let (a, b) = (opt_rational(a)?, opt_rational(b)?);
    let series = difference_expansion_v(order as usize)
        .map_err(|e| e.to_string())?
        .substitute_partial(a.as_ref(), b.as_ref());
    let terms: Vec<_> = series
        .terms()
        .map(|(k, c)| json!({ "k": k, "coefficient": c.to_string() }))
        .collect();
    Ok(json!({ "terms": terms, "series": series.to_string() }).to_string())
}

/// `log10 |x_n - gamma|` for `n` in `[from, to]`.
pub fn error_curve_json(seq: &str, a: &str, b: &str, from: u64, to: u64) -> Result<String, String> {
    let (a, b) = (a.trim(), b.trim());
    let kind = SequenceKind::from_id(
        seq,
        (!a.is_empty()).then_some(a),
        (!b.is_empty()).then_some(b),
    )
    .map_err(|e| e.to_string())?;
    let from = from.max(kind.n_min());
    if to < from || to - from >= MAX_POINTS {
        return Err(format!(
            "range must be non-empty and hold at most {MAX_POINTS} points"
        ));
    }
    let gamma = gamma_reference(PRECISION).value().clone();
    let mut walker = SequenceWalker::new(kind.clone(), PRECISION, to);
    let mut points = Vec::new();
    for n in from..=to {
        let dev = &walker.value_at(n).map_err(|e| e.to_string())? - &gamma;
        let mag = dev.abs().to_f64();
        if mag > 0.0 {
            points.push(json!([n, mag.log10()]));
        }
    }
    Ok(json!({ "sequence": kind.to_string(), "points": points }).to_string())
}

/// Certified sweep of a catalog entry, scaled by `n^scale` for plotting.
pub fn bound_sweep_json(entry: &str, from: u64, to: u64, scale: u32) -> Result<String, String> {
    let sel = lookup(entry).map_err(|e| e.to_string())?;
    let from = from.max(sel.n_min());
    if to < from || to - from >= MAX_POINTS {
        return Err(format!(
            "range must be non-empty and hold at most {MAX_POINTS} points"
        ));
    }
    let report = sweep(&sel, from, to, PRECISION).map_err(|e| e.to_string())?;
    let factor = |n: u64| (n as f64).powi(scale as i32);
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|v| {
            let f = factor(v.n);
            json!({
                "n": v.n,
                "lower": v.lower.as_ref().map(|x| x.to_f64() * f),
                "value": v.value.to_f64() * f,
                "upper": v.upper.as_ref().map(|x| x.to_f64() * f),
                "verdict": v.holds.as_str(),
            })
        })
        .collect();
    Ok(json!({
        "entry": report.label,
        "formula": sel.entry.formula,
        "outcome": report.outcome().as_str(),
        "gamma_width": to_fraction_string(&gamma_reference(PRECISION).width().to_rational()),
        "rows": rows,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn expansion(a: &str, b: &str, order: u32) -> Result<String, JsValue> {
    js(expansion_json(a, b, order))
}

#[wasm_bindgen]
pub fn error_curve(seq: &str, a: &str, b: &str, from: u32, to: u32) -> Result<String, JsValue> {
    js(error_curve_json(seq, a, b, from as u64, to as u64))
}

#[wasm_bindgen]
pub fn bound_sweep(entry: &str, from: u32, to: u32, scale: u32) -> Result<String, JsValue> {
    js(bound_sweep_json(entry, from as u64, to as u64, scale))
}
