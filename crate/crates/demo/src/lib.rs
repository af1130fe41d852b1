//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! Failures come back as `{"error": "..."}` so the page never has to catch
//! exceptions.

use seqcube_core::{
    construct_cube, games_chan_lc, has_unique_decomposition_hint, klc_profile, materialize, predict_critical_ks,
    standard_decompose, Format, PeriodicSequence, SearchBudget, Spectrum,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest period the page offers; keeps exhaustive search interactive.
pub const MAX_DEMO_EXPONENT: u32 = 6;

fn to_json(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse_bits(bits: &str) -> Result<PeriodicSequence, String> {
    let s = PeriodicSequence::parse(bits.trim(), Format::Bits, None).map_err(|e| e.to_string())?;
    if s.exponent() > MAX_DEMO_EXPONENT {
        return Err(format!("the demo handles periods up to {}", 1 << MAX_DEMO_EXPONENT));
    }
    Ok(s)
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("`{t}` is not a number")))
        .collect()
}

/// Linear complexity and standard cube decomposition of a 0/1 string.
pub fn analyze_value(bits: &str) -> Result<Value, String> {
    let s = parse_bits(bits)?;
    let d = standard_decompose(&s);
    let even = !s.is_zero() && s.hamming_weight() % 2 == 0;
    let predicted = if even { predict_critical_ks(&d).ok() } else { None };
    let unique = if even { has_unique_decomposition_hint(&s).ok() } else { None };
    let cubes: Vec<Value> = d
        .cubes()
        .iter()
        .map(|c| json!({ "positions": c.positions(), "edges": c.edges(), "linear_complexity": c.linear_complexity() }))
        .collect();
    Ok(json!({
        "n": s.exponent(),
        "weight": s.hamming_weight(),
        "linear_complexity": games_chan_lc(&s),
        "cubes": cubes,
        "lone_vertex": d.lone_vertex(),
        "predicted_critical_ks": predicted,
        "unique_decomposition_hint": unique,
    }))
}

/// Full k-error profile and its critical points.
pub fn spectrum_value(bits: &str, max_patterns: f64) -> Result<Value, String> {
    let s = parse_bits(bits)?;
    if max_patterns.is_nan() || max_patterns < 1.0 {
        return Err("pattern budget must be at least 1".into());
    }
    let budget = SearchBudget::new(max_patterns as u128, SearchBudget::default().max_weight).map_err(|e| e.to_string())?;
    let profile = klc_profile(&s, s.hamming_weight(), &budget).map_err(|e| e.to_string())?;
    let spectrum = Spectrum::from_profile(&profile.values);
    Ok(json!({
        "profile": profile.values,
        "points": spectrum.points,
        "patterns_examined": profile.patterns_examined.to_string(),
    }))
}

/// Builds a cube from comma-separated edges and odd offsets.
pub fn construct_value(n: u32, edges: &str, anchor: u32, offsets: &str) -> Result<Value, String> {
    if n > MAX_DEMO_EXPONENT {
        return Err(format!("the demo handles n up to {MAX_DEMO_EXPONENT}"));
    }
    let edges: Vec<u32> = parse_list(edges)?;
    let mut offsets: Vec<u64> = parse_list(offsets)?;
    if offsets.is_empty() {
        offsets = vec![1; edges.len()];
    }
    let cube = construct_cube(n, &edges, anchor as usize, &offsets).map_err(|e| e.to_string())?;
    let bits = materialize(&cube).serialize(Format::Bits).map_err(|e| e.to_string())?;
    Ok(json!({
        "positions": cube.positions(),
        "edges": cube.edges(),
        "linear_complexity": cube.linear_complexity(),
        "bits": bits,
    }))
}

#[wasm_bindgen]
pub fn analyze(bits: &str) -> String {
    to_json(analyze_value(bits))
}

#[wasm_bindgen]
pub fn spectrum(bits: &str, max_patterns: f64) -> String {
    to_json(spectrum_value(bits, max_patterns))
}

#[wasm_bindgen]
pub fn construct(n: u32, edges: &str, anchor: u32, offsets: &str) -> String {
    to_json(construct_value(n, edges, anchor, offsets))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn analyze_reports_cubes() {
        let v = parse(analyze("1101100110000000"));
        assert_eq!(v["linear_complexity"], 15);
        assert_eq!(v["cubes"].as_array().unwrap().len(), 3);
        assert_eq!(v["predicted_critical_ks"], json!([2, 4, 6]));
    }

    #[test]
    fn spectrum_points() {
        let v = parse(spectrum("11110000", 1e6));
        assert_eq!(v["points"][0]["complexity"], 5);
        assert_eq!(v["points"][1], json!({ "k": 4, "complexity": 0 }));
        assert_eq!(v["profile"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn construct_builds_bits() {
        let v = parse(construct(4, "0,1,2", 0, ""));
        assert_eq!(v["bits"], "1111111100000000");
        assert_eq!(v["linear_complexity"], 9);
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(analyze("101")).get("error").is_some());
        assert!(parse(spectrum("1".repeat(128).as_str(), 10.0)).get("error").is_some());
        assert!(parse(spectrum("1101100110000000", 5.0)).get("error").is_some());
        assert!(parse(construct(4, "0", 0, "2")).get("error").is_some());
        assert!(parse(construct(4, "a", 0, "")).get("error").is_some());
    }
}
