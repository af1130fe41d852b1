//! Exact counts of cubes and of sequences built from two or three cubes with
//! prescribed edge sets, with brute-force enumeration to check them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::bitseq::{check_exponent, PeriodicSequence, SupportSet};
use crate::cube::{recognize_cube, standard_decompose, validate_edges};
use crate::enumerate::{binomial, for_each_combination, par_fold_combinations};
use crate::error::{Error, Result};
use crate::error_complexity::SearchBudget;
use crate::linear_complexity::{games_chan_lc, quad_lc_predictor, LinearComplexity};

/// Arbitrary-precision nonnegative count; serialises as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    fn pow2(exponent: i128) -> Result<Self> {
        let e = u64::try_from(exponent)
            .map_err(|_| Error::Unsupported(format!("count exponent {exponent} is negative")))?;
        Ok(Self(BigUint::one() << e))
    }

    pub fn from_u64(v: u64) -> Self {
        Self(BigUint::from(v))
    }

    pub fn is_power_of_two(&self) -> bool {
        !self.0.is_zero() && self.0.count_ones() == 1
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

/// Edge sets of one, two or three cubes in the order `C_1, C_2, C_3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingSpec {
    n: u32,
    cubes: Vec<Vec<u32>>,
}

impl CountingSpec {
    pub fn new(n: u32, cubes: Vec<Vec<u32>>) -> Result<Self> {
        check_exponent(n)?;
        if cubes.is_empty() || cubes.len() > 3 {
            return Err(Error::invalid(format!("expected 1 to 3 cubes, got {}", cubes.len())));
        }
        for edges in &cubes {
            if edges.is_empty() {
                return Err(Error::InvalidEdges { n, edges: Vec::new(), reason: "edge list is empty".into() });
            }
            validate_edges(n, edges)?;
        }
        Ok(Self { n, cubes })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn cubes(&self) -> &[Vec<u32>] {
        &self.cubes
    }

    /// Total number of ones in a sequence built from these cubes.
    pub fn weight(&self) -> usize {
        self.cubes.iter().map(|e| 1usize << e.len()).sum()
    }
}

/// `2^m n - (2^{m-1} i_m + ... + 2 i_2 + i_1) - 2^{m+1} + 2`.
fn leading_exponent(n: u32, edges: &[u32]) -> i128 {
    let m = edges.len() as u32;
    let weighted: i128 = edges.iter().enumerate().map(|(t, &e)| (1i128 << t) * e as i128).sum();
    (1i128 << m) * n as i128 - weighted - (1i128 << (m + 1)) + 2
}

/// `2^l n - (2^{l-1} j_l + ... + 2 j_2 + 2 j_1) - 2^{l+1} + 2`; the lowest
/// exponent carries weight 2 rather than 1.
fn follower_exponent(n: u32, edges: &[u32]) -> i128 {
    leading_exponent(n, edges) - edges[0] as i128
}

/// Number of exponents in `edges` that are `<= bound`.
fn count_at_most(edges: &[u32], bound: u32) -> u32 {
    edges.iter().take_while(|&&e| e <= bound).count() as u32
}

/// Number of `m`-cubes with the given edge exponents.
pub fn count_cubes(n: u32, edges: &[u32]) -> Result<BigCount> {
    validate_edges(n, edges)?;
    if edges.is_empty() {
        return Err(Error::InvalidEdges { n, edges: Vec::new(), reason: "edge list is empty".into() });
    }
    BigCount::pow2(leading_exponent(n, edges))
}

fn require_len(spec: &CountingSpec, len: usize) -> Result<()> {
    if spec.cubes.len() != len {
        return Err(Error::invalid(format!("expected {len} cubes, got {}", spec.cubes.len())));
    }
    Ok(())
}

/// Second factor of the two-cube count, with `t = max{x : i_x <= j_1}`.
fn second_factor(n: u32, first: &[u32], second: &[u32]) -> Result<BigUint> {
    let j1 = second[0];
    let t = count_at_most(first, j1);
    if j1 <= t {
        return Err(Error::Unsupported(format!("side condition 2^{j1} > 2^{t} fails")));
    }
    let free = (BigUint::one() << j1) - (BigUint::one() << t);
    Ok(BigCount::pow2(follower_exponent(n, second))?.0 * free)
}

/// Number of sequences made of two independent cubes `C_1`, `C_2`.
pub fn count_two_cube_sequences(spec: &CountingSpec) -> Result<BigCount> {
    require_len(spec, 2)?;
    let (c1, c2) = (&spec.cubes[0], &spec.cubes[1]);
    let first = count_cubes(spec.n, c1)?.0;
    Ok(BigCount(first * second_factor(spec.n, c1, c2)?))
}

/// Number of sequences made of three independent cubes `C_1`, `C_2`, `C_3`.
pub fn count_three_cube_sequences(spec: &CountingSpec) -> Result<BigCount> {
    require_len(spec, 3)?;
    let (c1, c2, c3) = (&spec.cubes[0], &spec.cubes[1], &spec.cubes[2]);
    let first = count_cubes(spec.n, c1)?.0;
    let second = second_factor(spec.n, c1, c2)?;
    let k1 = c3[0];
    let u = count_at_most(c1, k1);
    let v = count_at_most(c2, k1);
    let limit = BigUint::one() << k1;
    let taken = (BigUint::one() << u) + (BigUint::one() << v);
    if limit <= taken {
        return Err(Error::Unsupported(format!("side condition 2^{k1} > 2^{u} + 2^{v} fails")));
    }
    let third = BigCount::pow2(follower_exponent(spec.n, c3))?.0 * (limit - taken);
    Ok(BigCount(first * second * third))
}

/// Dispatches on the number of cubes in `spec`.
pub fn count_sequences(spec: &CountingSpec) -> Result<BigCount> {
    match spec.cubes.len() {
        1 => count_cubes(spec.n, &spec.cubes[0]),
        2 => count_two_cube_sequences(spec),
        _ => count_three_cube_sequences(spec),
    }
}

/// Count for the two-cube configuration with edges `{0, 1}` and `{0, 3}`,
/// which falls outside the two-cube side condition: `2^10 (2^8)^{n-4}`.
pub fn example35_count(n: u32) -> Result<BigCount> {
    check_exponent(n)?;
    if n < 4 {
        return Err(Error::invalid("configuration needs n >= 4"));
    }
    BigCount::pow2(10 + 8 * (n as i128 - 4))
}

/// The `{0,1}` + `{0,3}` configuration as a [`CountingSpec`].
pub fn example35_spec(n: u32) -> Result<CountingSpec> {
    CountingSpec::new(n, vec![vec![0, 1], vec![0, 3]])
}

/// Predicted and enumerated counts for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub predicted: BigCount,
    pub observed: BigCount,
    pub supports_scanned: u128,
}

impl CountCheck {
    pub fn agrees(&self) -> bool {
        self.predicted == self.observed
    }
}

/// Brute-force tally over every support of the configuration's total weight.
///
/// One cube: supports recognised as a cube with exactly these edges. Several
/// cubes: supports whose standard decomposition has exactly this multiset of
/// edge lists.
pub fn observed_count_by_enumeration(spec: &CountingSpec, budget: &SearchBudget) -> Result<(BigCount, u128)> {
    let period = 1usize << spec.n;
    let weight = spec.weight();
    let scanned = binomial(period as u128, weight as u128);
    if scanned > budget.max_patterns {
        return Err(Error::BudgetExceeded {
            required: scanned,
            reason: format!("C({period}, {weight}) supports to scan"),
        });
    }
    let n = spec.n;
    let observed = if spec.cubes.len() == 1 {
        let edges = &spec.cubes[0];
        par_fold_combinations(
            period,
            weight,
            || 0u64,
            |acc, support| {
                let set = SupportSet::new(n, support.to_vec()).expect("valid support");
                acc + recognize_cube(&set).is_some_and(|c| c.edges() == edges.as_slice()) as u64
            },
            |a, b| a + b,
        )
    } else {
        let mut target = spec.cubes.clone();
        target.sort();
        par_fold_combinations(
            period,
            weight,
            || 0u64,
            |acc, support| {
                let s = PeriodicSequence::from_support(n, support).expect("valid support");
                acc + (standard_decompose(&s).edge_profile() == target) as u64
            },
            |a, b| a + b,
        )
    };
    Ok((BigCount::from_u64(observed), scanned))
}

/// Closed-form count alongside the enumerated tally. Equality is not asserted.
pub fn verify_count_by_enumeration(spec: &CountingSpec, budget: &SearchBudget) -> Result<CountCheck> {
    let predicted = count_sequences(spec)?;
    let (observed, supports_scanned) = observed_count_by_enumeration(spec, budget)?;
    Ok(CountCheck { predicted, observed, supports_scanned })
}

/// One four-element support split into the pairs `(i, j)` and `(k, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadCase {
    pub support: [usize; 4],
    pub pairs: [[usize; 2]; 2],
    pub predicted: LinearComplexity,
    pub actual: LinearComplexity,
}

impl QuadCase {
    pub fn agrees(&self) -> bool {
        self.predicted == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadAudit {
    pub n: u32,
    pub cases: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Every case examined, in lexicographic order of support then pairing.
    pub details: Vec<QuadCase>,
}

impl QuadAudit {
    pub fn witnesses(&self) -> impl Iterator<Item = &QuadCase> {
        self.details.iter().filter(|c| !c.agrees())
    }
}

/// Compares the four-element closed form with the true linear complexity for
/// every support of size four and every pairing meeting its hypotheses.
///
/// With `i < k` and `i < j`, `i` is the support minimum, so each support has
/// at most three admissible pairings: the minimum paired with each of the
/// other elements, kept when the remaining pair starts at an odd distance
/// from the minimum.
pub fn quad_lc_audit(n: u32) -> Result<QuadAudit> {
    check_exponent(n)?;
    if !(2..=4).contains(&n) {
        return Err(Error::invalid("quad audit supports 2 <= n <= 4"));
    }
    let period = 1usize << n;
    let mut details = Vec::new();
    for_each_combination(period, 4, |c| {
        let support = [c[0], c[1], c[2], c[3]];
        let actual = games_chan_lc(&PeriodicSequence::from_support(n, c).expect("valid support"));
        for partner in 1..4 {
            let i = support[0];
            let j = support[partner];
            let rest: Vec<usize> = (1..4).filter(|&x| x != partner).map(|x| support[x]).collect();
            let (k, l) = (rest[0], rest[1]);
            if (k - i) % 2 == 0 {
                continue;
            }
            let predicted = quad_lc_predictor(i, j, k, l, n).expect("hypotheses checked above");
            details.push(QuadCase { support, pairs: [[i, j], [k, l]], predicted, actual });
        }
    });
    let agreements = details.iter().filter(|c| c.agrees()).count();
    Ok(QuadAudit { n, cases: details.len(), agreements, disagreements: details.len() - agreements, details })
}
