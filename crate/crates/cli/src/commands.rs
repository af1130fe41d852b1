use seqcube_core::*;
use serde_json::{json, Value};

use crate::Report;

/// Largest period for which `lc` runs the quadratic polynomial cross-check.
const ORACLE_PERIOD_LIMIT: usize = 1 << 12;

type Parsed = (PeriodicSequence, Value);

fn report(input: Value, result: Value, text: Vec<String>) -> Report {
    Report { input, result, text, patterns_examined: None, incomplete: false }
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn pairs(spectrum: &Spectrum) -> String {
    spectrum.as_pairs().iter().map(|(k, c)| format!("({k},{c})")).collect::<Vec<_>>().join(" ")
}

fn parse_u32_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad edge exponent `{t}`"))))
        .collect()
}

pub fn lc((s, input): Parsed) -> Result<Report> {
    let lc = games_chan_lc(&s);
    let oracle = (s.period() <= ORACLE_PERIOD_LIMIT).then(|| lc_by_factor_multiplicity(&s));
    if let Some(o) = oracle {
        if o != lc {
            return Err(Error::Invariant(format!("halving gives {lc}, polynomial method gives {o}")));
        }
    }
    let checked = match oracle {
        Some(_) => "agrees",
        None => "skipped (period too large)",
    };
    Ok(report(
        input,
        json!({ "linear_complexity": lc, "oracle_checked": oracle.is_some() }),
        vec![format!("linear complexity: {lc}"), format!("polynomial cross-check: {checked}")],
    ))
}

pub fn klc((s, input): Parsed, k: usize, budget: &SearchBudget) -> Result<Report> {
    let profile = klc_profile(&s, k, budget)?;
    let value = profile.values[k];
    let lc = profile.values[0];
    let stable = value == lc;
    let kmin = (lc.value() > 0).then(|| kmin_first_decrease(&s)).transpose()?;
    let mut text = vec![
        format!("{k}-error linear complexity: {value}"),
        format!("linear complexity: {lc}"),
        format!("stable: {stable}"),
    ];
    if let Some(m) = kmin {
        text.push(format!("first decrease at k = {m}"));
    }
    Ok(Report {
        input,
        result: json!({ "k": k, "k_error_linear_complexity": value, "linear_complexity": lc, "stable": stable, "kmin": kmin }),
        text,
        patterns_examined: Some(profile.patterns_examined),
        incomplete: false,
    })
}

pub fn kmin((s, input): Parsed) -> Result<Report> {
    let kmin = kmin_first_decrease(&s)?;
    let lc = games_chan_lc(&s);
    Ok(report(
        input,
        json!({ "kmin": kmin, "linear_complexity": lc }),
        vec![format!("first decrease at k = {kmin}"), format!("linear complexity: {lc}")],
    ))
}

pub fn spectrum((s, input): Parsed, budget: &SearchBudget) -> Result<Report> {
    let profile = klc_profile(&s, s.hamming_weight(), budget)?;
    let spectrum = Spectrum::from_profile(&profile.values);
    Ok(Report {
        input,
        result: json!({ "points": spectrum.points }),
        text: vec![format!("critical points: {}", pairs(&spectrum))],
        patterns_examined: Some(profile.patterns_examined),
        incomplete: false,
    })
}

fn cube_json(c: &Cube) -> Value {
    json!({
        "positions": c.positions(),
        "edges": c.edges(),
        "anchor": c.anchor(),
        "dimension": c.dimension(),
        "linear_complexity": c.linear_complexity(),
    })
}

fn cube_line(c: &Cube) -> String {
    format!(
        "{}-cube {{{}}} edges 2^{{{}}} anchor {} LC {}",
        c.dimension(),
        list(c.positions()),
        list(c.edges()),
        c.anchor(),
        c.linear_complexity()
    )
}

pub fn decompose((s, input): Parsed) -> Result<Report> {
    let d = standard_decompose(&s);
    let lc = games_chan_lc(&s);
    if d.reconstruct() != s {
        return Err(Error::Invariant("cubes do not reconstruct the sequence".into()));
    }
    let even = !s.is_zero() && s.hamming_weight() % 2 == 0;
    let predicted = if even { Some(predict_critical_ks(&d)?) } else { None };
    let unique = if even { Some(has_unique_decomposition_hint(&s)?) } else { None };
    let mut text = vec![format!("linear complexity: {lc}")];
    text.extend(d.cubes().iter().map(cube_line));
    if let Some(v) = d.lone_vertex() {
        text.push(format!("lone vertex: {v}"));
    }
    if let Some(p) = &predicted {
        text.push(format!("predicted critical k: {}", list(p)));
    }
    if let Some(u) = unique {
        text.push(format!("uniqueness condition holds: {u}"));
    }
    Ok(report(
        input,
        json!({
            "linear_complexity": lc,
            "cubes": d.cubes().iter().map(cube_json).collect::<Vec<_>>(),
            "lone_vertex": d.lone_vertex(),
            "predicted_critical_ks": predicted,
            "unique_decomposition_hint": unique,
        }),
        text,
    ))
}

pub fn recognize((s, input): Parsed) -> Result<Report> {
    let cube = recognize_cube(&s.support());
    let text = match &cube {
        Some(c) => vec![cube_line(c)],
        None => vec!["not a cube".to_string()],
    };
    Ok(report(input, json!({ "is_cube": cube.is_some(), "cube": cube.as_ref().map(cube_json) }), text))
}

pub fn construct(n: u32, edges: &[u32], anchor: usize, offsets: &[u64]) -> Result<Report> {
    let offsets = if offsets.is_empty() { vec![1; edges.len()] } else { offsets.to_vec() };
    let cube = construct_cube(n, edges, anchor, &offsets)?;
    let s = materialize(&cube);
    let lc = games_chan_lc(&s);
    if lc != cube.linear_complexity() {
        return Err(Error::Invariant(format!("cube formula gives {}, sequence has {lc}", cube.linear_complexity())));
    }
    let mut text = vec![cube_line(&cube)];
    let bits = (n <= 10).then(|| s.serialize(Format::Bits)).transpose()?;
    if let Some(b) = &bits {
        text.push(format!("bits: {b}"));
    }
    Ok(report(
        json!({ "n": n, "edges": edges, "anchor": anchor, "offsets": offsets }),
        json!({ "cube": cube_json(&cube), "bits": bits }),
        text,
    ))
}

pub fn maxklc(n: u32, k: usize) -> Result<Report> {
    let v = max_klc(n, k)?;
    Ok(report(
        json!({ "n": n, "k": k }),
        json!({ "max_k_error_linear_complexity": v }),
        vec![format!("maximum {k}-error linear complexity at period 2^{n}: {v}")],
    ))
}

pub fn census(n: u32, edges: &[String], verify: bool, budget: &SearchBudget) -> Result<Report> {
    let cubes = edges.iter().map(|e| parse_u32_list(e)).collect::<Result<Vec<_>>>()?;
    let spec = CountingSpec::new(n, cubes.clone())?;
    let predicted = match count_sequences(&spec) {
        Err(Error::Unsupported(_)) if n >= 4 && spec == example35_spec(n)? => example35_count(n)?,
        other => other?,
    };
    let mut text = vec![format!("predicted: {predicted}")];
    let mut result = json!({ "predicted": predicted });
    let mut scanned = None;
    if verify {
        let (observed, supports) = observed_count_by_enumeration(&spec, budget)?;
        let agrees = observed == predicted;
        text.push(format!("observed: {observed}"));
        text.push(format!("agrees: {agrees}"));
        result["observed"] = json!(observed);
        result["agrees"] = json!(agrees);
        scanned = Some(supports);
    }
    Ok(Report {
        input: json!({ "n": n, "cubes": cubes }),
        result,
        text,
        patterns_examined: scanned,
        incomplete: false,
    })
}

pub fn quad_audit(n: u32) -> Result<Report> {
    let audit = quad_lc_audit(n)?;
    let witnesses: Vec<&QuadCase> = audit.witnesses().collect();
    let mut text = vec![format!(
        "cases: {}  agree: {}  disagree: {}",
        audit.cases, audit.agreements, audit.disagreements
    )];
    text.extend(witnesses.iter().map(|c| {
        format!(
            "{{{}}} pairs ({},{}) ({},{}): formula {} actual {}",
            list(&c.support),
            c.pairs[0][0],
            c.pairs[0][1],
            c.pairs[1][0],
            c.pairs[1][1],
            c.predicted,
            c.actual
        )
    }));
    Ok(report(
        json!({ "n": n }),
        json!({
            "cases": audit.cases,
            "agreements": audit.agreements,
            "disagreements": audit.disagreements,
            "witnesses": witnesses,
        }),
        text,
    ))
}

pub fn scan(n: u32, filter: &str, max_weight: Option<usize>, budget: &SearchBudget) -> Result<Report> {
    let filter: ScanFilter = filter.parse()?;
    let options = ScanOptions { n, filter, max_sequence_weight: max_weight };
    let r = conjecture_scan(&options, budget)?;
    let mut text = vec![format!(
        "visited: {}  match: {}  mismatch: {}  skipped: {}  unresolved: {}",
        r.visited, r.matched, r.mismatched, r.skipped, r.unresolved
    )];
    text.push(format!("complete: {}", r.complete));
    text.extend(r.mismatches.iter().map(|w| {
        let cubes: Vec<String> = w.decomposition.iter().map(|c| format!("{{{}}}", list(&c.positions))).collect();
        format!(
            "MISMATCH {{{}}} cubes {} predicted {} spectrum {}",
            list(&w.positions),
            cubes.join(" "),
            list(&w.predicted),
            pairs(&w.spectrum)
        )
    }));
    Ok(Report {
        input: json!({ "n": n, "filter": filter, "max_sequence_weight": max_weight }),
        result: serde_json::to_value(&r).expect("report serialises"),
        text,
        patterns_examined: None,
        incomplete: !r.complete,
    })
}
