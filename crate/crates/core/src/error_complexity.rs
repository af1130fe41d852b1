//! k-error linear complexity and its critical points.
//!
//! The authoritative routine is the exhaustive search in [`klc_profile`]:
//! error patterns are visited by ascending weight and, within a weight, in
//! lexicographic order of their support. Two exact floors cut the search
//! short. No pattern lighter than `W_H(s)` can reach complexity 0, so once the
//! running minimum is 1 nothing below weight `W_H(s)` can improve it, and at
//! weight `W_H(s)` erasing every one reaches 0.

use serde::Serialize;

use crate::bitseq::{check_exponent, PeriodicSequence};
use crate::cube::{has_unique_decomposition_hint, standard_decompose, Cube, CubeDecomposition};
use crate::enumerate::{binomial, par_fold_combinations};
use crate::error::{Error, Result};
use crate::linear_complexity::{games_chan_lc, games_chan_word, LinearComplexity};

/// Caps on the exhaustive error-pattern search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_patterns: u128,
    pub max_weight: u32,
}

impl SearchBudget {
    pub fn new(max_patterns: u128, max_weight: u32) -> Result<Self> {
        if max_patterns == 0 || max_weight == 0 {
            return Err(Error::invalid("search budget caps must be positive"));
        }
        Ok(Self { max_patterns, max_weight })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_patterns: 1 << 26, max_weight: 8 }
    }
}

/// `L_k(s)` for every `k` in `0..=k_max`, plus the number of error patterns
/// actually evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KlcProfile {
    pub values: Vec<LinearComplexity>,
    pub patterns_examined: u128,
}

fn min_over_weight_class(s: &PeriodicSequence, weight: usize) -> u64 {
    let n = s.exponent();
    let period = s.period();
    if let Some(word) = s.as_word() {
        return par_fold_combinations(
            period,
            weight,
            || u64::MAX,
            |best, pattern| {
                let w = pattern.iter().fold(word, |w, &i| w ^ (1 << i));
                best.min(games_chan_word(w, n))
            },
            u64::min,
        );
    }
    par_fold_combinations(
        period,
        weight,
        || (u64::MAX, s.clone()),
        |(best, mut scratch), pattern| {
            pattern.iter().for_each(|&i| scratch.flip(i));
            let lc = games_chan_lc(&scratch).0;
            pattern.iter().for_each(|&i| scratch.flip(i));
            (best.min(lc), scratch)
        },
        |a, b| if b.0 < a.0 { b } else { a },
    )
    .0
}

/// Exhaustive k-error linear complexity for every budget up to `k_max`.
pub fn klc_profile(s: &PeriodicSequence, k_max: usize, budget: &SearchBudget) -> Result<KlcProfile> {
    let period = s.period();
    if k_max > period {
        return Err(Error::invalid(format!("k = {k_max} exceeds the period {period}")));
    }
    let weight = s.hamming_weight();
    let mut incumbent = games_chan_lc(s).0;
    let mut values = vec![LinearComplexity(incumbent)];
    let mut examined: u128 = 1;
    for k in 1..=k_max {
        if k >= weight {
            incumbent = 0;
        } else if incumbent > 1 {
            let class = binomial(period as u128, k as u128);
            let required = examined.saturating_add(class);
            if k as u32 > budget.max_weight {
                return Err(Error::BudgetExceeded {
                    required,
                    reason: format!("error weight {k} above cap {}", budget.max_weight),
                });
            }
            if required > budget.max_patterns {
                return Err(Error::BudgetExceeded {
                    required,
                    reason: format!("pattern cap {}", budget.max_patterns),
                });
            }
            incumbent = incumbent.min(min_over_weight_class(s, k));
            examined = required;
        }
        values.push(LinearComplexity(incumbent));
    }
    Ok(KlcProfile { values, patterns_examined: examined })
}

/// Smallest linear complexity reachable by changing at most `k` bits of one period.
pub fn klc_exhaustive(s: &PeriodicSequence, k: usize, budget: &SearchBudget) -> Result<LinearComplexity> {
    Ok(klc_profile(s, k, budget)?.values[k])
}

/// `2^{W_H(2^n - L(s))}`, the least `k` with `L_k(s) < L(s)`.
pub fn kmin_first_decrease(s: &PeriodicSequence) -> Result<usize> {
    let lc = games_chan_lc(s).0;
    if lc == 0 {
        return Err(Error::invalid("the zero sequence has no decrease"));
    }
    Ok(1 << (s.period() as u64 - lc).count_ones())
}

/// `L_k(s) == L(s)`.
pub fn is_stable_klc(s: &PeriodicSequence, k: usize, budget: &SearchBudget) -> Result<bool> {
    Ok(klc_exhaustive(s, k, budget)? == games_chan_lc(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub k: usize,
    pub complexity: LinearComplexity,
}

/// Points `(k, L_k)` at which the k-error linear complexity drops, starting
/// with `(0, L(s))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub points: Vec<CriticalPoint>,
}

impl Spectrum {
    /// Keeps `k = 0` and every `k` where the profile strictly decreases.
    pub fn from_profile(values: &[LinearComplexity]) -> Self {
        let mut points: Vec<CriticalPoint> = Vec::new();
        for (k, &c) in values.iter().enumerate() {
            if points.last().is_none_or(|p| c < p.complexity) {
                points.push(CriticalPoint { k, complexity: c });
            }
        }
        Self { points }
    }

    /// Critical error budgets after the initial point.
    pub fn decrease_ks(&self) -> Vec<usize> {
        self.points.iter().skip(1).map(|p| p.k).collect()
    }

    pub fn as_pairs(&self) -> Vec<(usize, u64)> {
        self.points.iter().map(|p| (p.k, p.complexity.0)).collect()
    }
}

/// Full critical error linear complexity spectrum.
pub fn celcs(s: &PeriodicSequence, budget: &SearchBudget) -> Result<Spectrum> {
    let profile = klc_profile(s, s.hamming_weight(), budget)?;
    Ok(Spectrum::from_profile(&profile.values))
}

/// Largest k-error linear complexity over all sequences of period `2^n`:
/// `2^n - (2^l - 1)` for `2^{l-1} <= k < 2^l`, and `2^n` for `k = 0`.
pub fn max_klc(n: u32, k: usize) -> Result<LinearComplexity> {
    check_exponent(n)?;
    let period = 1u64 << n;
    if k as u64 >= period {
        return Err(Error::invalid(format!("k = {k} must be below the period {period}")));
    }
    let l = usize::BITS - k.leading_zeros();
    Ok(LinearComplexity(period - ((1u64 << l) - 1)))
}

/// Prefix sums of `2^{m_i}` over cube dimensions taken in descending order of
/// linear complexity.
pub fn predict_critical_ks(d: &CubeDecomposition) -> Result<Vec<usize>> {
    if d.lone_vertex().is_some() {
        return Err(Error::invalid("prediction requires an even-weight sequence"));
    }
    if d.cubes().is_empty() {
        return Err(Error::invalid("decomposition has no cubes"));
    }
    let mut cubes: Vec<&Cube> = d.cubes().iter().collect();
    cubes.sort_by_key(|c| std::cmp::Reverse(c.linear_complexity()));
    Ok(cubes
        .iter()
        .scan(0usize, |acc, c| {
            *acc += 1 << c.dimension();
            Some(*acc)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanFilter {
    /// Only sequences whose standard decomposition passes the uniqueness hint.
    Prop32Unique,
    AllEvenWeight,
}

impl std::str::FromStr for ScanFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop32_unique" | "prop32-unique" => Ok(ScanFilter::Prop32Unique),
            "all_even_weight" | "all-even-weight" => Ok(ScanFilter::AllEvenWeight),
            other => Err(Error::parse(format!("unknown scan filter `{other}`"))),
        }
    }
}

/// One cube of a witness decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeSummary {
    pub positions: Vec<usize>,
    pub edges: Vec<u32>,
    pub linear_complexity: LinearComplexity,
}

impl From<&Cube> for CubeSummary {
    fn from(c: &Cube) -> Self {
        Self { positions: c.positions().to_vec(), edges: c.edges().to_vec(), linear_complexity: c.linear_complexity() }
    }
}

/// A sequence whose predicted critical budgets differ from the oracle's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanWitness {
    pub positions: Vec<usize>,
    pub decomposition: Vec<CubeSummary>,
    pub predicted: Vec<usize>,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanOutcome {
    Skipped,
    Match,
    Mismatch(ScanWitness),
}

/// Classifies one sequence by comparing the predicted critical budgets of its
/// standard decomposition with the exhaustive spectrum. Only the budgets are
/// compared, not the complexity values reached.
pub fn classify_sequence(s: &PeriodicSequence, filter: ScanFilter, budget: &SearchBudget) -> Result<ScanOutcome> {
    let weight = s.hamming_weight();
    if weight == 0 || weight % 2 == 1 {
        return Ok(ScanOutcome::Skipped);
    }
    if filter == ScanFilter::Prop32Unique && !has_unique_decomposition_hint(s)? {
        return Ok(ScanOutcome::Skipped);
    }
    let d = standard_decompose(s);
    let predicted = predict_critical_ks(&d)?;
    let spectrum = celcs(s, budget)?;
    if spectrum.decrease_ks() == predicted {
        return Ok(ScanOutcome::Match);
    }
    Ok(ScanOutcome::Mismatch(ScanWitness {
        positions: s.ones().collect(),
        decomposition: d.cubes().iter().map(CubeSummary::from).collect(),
        predicted,
        spectrum,
    }))
}

/// Which sequences a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    pub n: u32,
    pub filter: ScanFilter,
    /// Restrict to even weights up to this cap; required above `n = 4`.
    pub max_sequence_weight: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub visited: u64,
    pub matched: u64,
    pub mismatched: u64,
    pub skipped: u64,
    /// Sequences whose spectrum exceeded the search budget.
    pub unresolved: u64,
    pub complete: bool,
    pub mismatches: Vec<ScanWitness>,
}

impl ScanReport {
    fn record(mut self, outcome: Result<ScanOutcome>) -> Self {
        self.visited += 1;
        match outcome {
            Ok(ScanOutcome::Skipped) => self.skipped += 1,
            Ok(ScanOutcome::Match) => self.matched += 1,
            Ok(ScanOutcome::Mismatch(w)) => {
                self.mismatched += 1;
                self.mismatches.push(w);
            }
            Err(_) => self.unresolved += 1,
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.visited += other.visited;
        self.matched += other.matched;
        self.mismatched += other.mismatched;
        self.skipped += other.skipped;
        self.unresolved += other.unresolved;
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Sweeps sequences of period `2^n` and tallies how often the predicted
/// critical budgets agree with the exhaustive spectrum.
///
/// Without a weight cap every one of the `2^{2^n}` sequences is visited in
/// increasing packed order (`n <= 4`). With a cap, even weights `2..=cap`
/// are visited by ascending weight, then lexicographically by support.
/// Sequences that exhaust the budget are counted as unresolved and mark the
/// report incomplete.
pub fn conjecture_scan(options: &ScanOptions, budget: &SearchBudget) -> Result<ScanReport> {
    use rayon::prelude::*;

    let n = options.n;
    check_exponent(n)?;
    let classify = |s: &PeriodicSequence| classify_sequence(s, options.filter, budget);
    let report = match options.max_sequence_weight {
        None => {
            if n > 4 {
                return Err(Error::invalid("a full sweep needs n <= 4; pass a weight cap"));
            }
            let total = 1u64 << (1u32 << n);
            let chunk = 1024u64.min(total);
            let parts: Vec<ScanReport> = (0..total / chunk)
                .into_par_iter()
                .map(|c| {
                    (c * chunk..(c + 1) * chunk).fold(ScanReport::default(), |r, word| {
                        let s = PeriodicSequence::from_word(n, word).expect("n <= 4");
                        r.record(classify(&s))
                    })
                })
                .collect();
            parts.into_iter().fold(ScanReport::default(), ScanReport::merge)
        }
        Some(cap) => {
            let period = 1usize << n;
            let mut report = ScanReport::default();
            for weight in (2..=cap.min(period)).step_by(2) {
                let part = par_fold_combinations(
                    period,
                    weight,
                    ScanReport::default,
                    |r, support| {
                        let s = PeriodicSequence::from_support(n, support).expect("valid support");
                        r.record(classify(&s))
                    },
                    ScanReport::merge,
                );
                report = report.merge(part);
            }
            report
        }
    };
    Ok(ScanReport { complete: report.unresolved == 0, ..report })
}
