//! Cubes: sets of `2^m` positions built by repeatedly pairing two copies of
//! an `(m-1)`-cube at a common 2-adic distance.
//!
//! The distance between positions `i` and `j` is `2^y` where
//! `|j - i| = (2x + 1) 2^y`. An `m`-cube has edge exponents
//! `i_1 < ... < i_m` and linear complexity `2^n - (2^{i_1} + ... + 2^{i_m})`.

use serde::Serialize;

use crate::bitseq::{check_exponent, PeriodicSequence, SupportSet};
use crate::error::{Error, Result};
use crate::linear_complexity::{valuation, LinearComplexity};

/// A cube inside one period of length `2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cube {
    n: u32,
    support: SupportSet,
    edges: Vec<u32>,
}

impl Cube {
    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn positions(&self) -> &[usize] {
        self.support.positions()
    }

    /// Edge exponents, strictly increasing.
    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn dimension(&self) -> usize {
        self.edges.len()
    }

    /// Smallest vertex.
    pub fn anchor(&self) -> usize {
        self.support.positions()[0]
    }

    pub fn linear_complexity(&self) -> LinearComplexity {
        edges_lc(self.n, &self.edges)
    }
}

/// An ordered list of disjoint cubes, ascending by linear complexity, plus the
/// single leftover position of an odd-weight sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeDecomposition {
    n: u32,
    cubes: Vec<Cube>,
    lone_vertex: Option<usize>,
}

impl CubeDecomposition {
    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn lone_vertex(&self) -> Option<usize> {
        self.lone_vertex
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty() && self.lone_vertex.is_none()
    }

    /// XOR of every cube (and the lone vertex).
    pub fn reconstruct(&self) -> PeriodicSequence {
        let mut s = PeriodicSequence::zero(self.n).expect("exponent already validated");
        for p in self.cubes.iter().flat_map(|c| c.positions()).chain(self.lone_vertex.iter()) {
            s.flip(*p);
        }
        s
    }

    /// Multiset of edge lists, sorted, ignoring anchors and order.
    pub fn edge_profile(&self) -> Vec<Vec<u32>> {
        let mut profile: Vec<Vec<u32>> = self.cubes.iter().map(|c| c.edges.clone()).collect();
        profile.sort();
        profile
    }
}

/// `2^y` where `|j - i| = (2x + 1) 2^y`.
pub fn element_distance(i: usize, j: usize) -> Result<usize> {
    if i == j {
        return Err(Error::invalid("distance needs two distinct positions"));
    }
    Ok(1 << valuation(i.abs_diff(j)))
}

pub(crate) fn validate_edges(n: u32, edges: &[u32]) -> Result<()> {
    check_exponent(n)?;
    let bad = |reason: &str| Error::InvalidEdges { n, edges: edges.to_vec(), reason: reason.into() };
    if edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("exponents must be strictly increasing"));
    }
    if edges.last().is_some_and(|&e| e >= n) {
        return Err(bad("exponents must be below n"));
    }
    Ok(())
}

fn edges_lc(n: u32, edges: &[u32]) -> LinearComplexity {
    let drop: u64 = edges.iter().map(|&e| 1u64 << e).sum();
    LinearComplexity((1u64 << n) - drop)
}

/// `2^n - (2^{i_1} + ... + 2^{i_m})`; the empty edge list gives `2^n`.
pub fn cube_lc(n: u32, edges: &[u32]) -> Result<LinearComplexity> {
    validate_edges(n, edges)?;
    Ok(edges_lc(n, edges))
}

/// Edge exponents of `positions` if they form a cube.
///
/// The top edge is the largest valuation among pairwise differences; every
/// position must have exactly one partner at that valuation. Partners differ
/// in that bit, which splits the set into two halves that must be cubes with
/// identical edges.
fn recognize_edges(positions: &[usize]) -> Option<Vec<u32>> {
    let size = positions.len();
    if !size.is_power_of_two() {
        return None;
    }
    if size == 1 {
        return Some(Vec::new());
    }
    let mut top = 0;
    for (a, &p) in positions.iter().enumerate() {
        for &q in &positions[a + 1..] {
            top = top.max(valuation(p ^ q));
        }
    }
    for &p in positions {
        let partners = positions.iter().filter(|&&q| q != p && valuation(p ^ q) == top).count();
        if partners != 1 {
            return None;
        }
    }
    let (low, high): (Vec<usize>, Vec<usize>) = positions.iter().partition(|&&p| p >> top & 1 == 0);
    let edges = recognize_edges(&low)?;
    if recognize_edges(&high)? != edges || edges.last().is_some_and(|&e| e >= top) {
        return None;
    }
    let mut edges = edges;
    edges.push(top);
    Some(edges)
}

/// Returns the cube formed by `p`, or `None` when `p` is not a cube.
pub fn recognize_cube(p: &SupportSet) -> Option<Cube> {
    if p.is_empty() {
        return None;
    }
    recognize_edges(p.positions()).map(|edges| Cube { n: p.exponent(), support: p.clone(), edges })
}

pub fn materialize(c: &Cube) -> PeriodicSequence {
    c.support.to_sequence()
}

/// Builds the cube with vertices `anchor + sum_{t in T} offsets[t] 2^{edges[t]}`
/// (mod `2^n`) for every subset `T` of the edges. Offsets must be odd.
pub fn construct_cube(n: u32, edges: &[u32], anchor: usize, offsets: &[u64]) -> Result<Cube> {
    validate_edges(n, edges)?;
    let period = 1usize << n;
    if anchor >= period {
        return Err(Error::PositionOutOfRange { position: anchor, n });
    }
    if offsets.len() != edges.len() {
        return Err(Error::invalid(format!(
            "{} offsets given for {} edges",
            offsets.len(),
            edges.len()
        )));
    }
    if let Some(o) = offsets.iter().find(|&&o| o % 2 == 0) {
        return Err(Error::invalid(format!("offset {o} is not odd")));
    }
    let mask = (period - 1) as u64;
    let steps: Vec<u64> = edges.iter().zip(offsets).map(|(&e, &o)| o.wrapping_shl(e)).collect();
    let mut positions = Vec::with_capacity(1 << edges.len());
    for subset in 0u64..(1 << edges.len()) {
        let p = steps
            .iter()
            .enumerate()
            .filter(|(t, _)| subset >> t & 1 == 1)
            .fold(anchor as u64, |acc, (_, &s)| acc.wrapping_add(s));
        positions.push((p & mask) as usize);
    }
    let support = SupportSet::new(n, positions)
        .map_err(|_| Error::invalid("generated vertices collide modulo the period"))?;
    Ok(Cube { n, support, edges: edges.to_vec() })
}

struct RawCube {
    vertices: Vec<usize>,
    edges: Vec<u32>,
}

/// Match-and-lift recursion behind [`standard_decompose`].
///
/// Positions present at the same offset in both halves of the period are
/// decomposed together over the half period and lifted back by doubling each
/// vertex (adding the half length as a new top edge). The remaining positions
/// fold onto their offsets, are decomposed over the half period, and unfold to
/// their unique source half.
fn decompose_rec(positions: &[usize], n: u32) -> Vec<RawCube> {
    if positions.is_empty() {
        return Vec::new();
    }
    if n == 0 {
        return vec![RawCube { vertices: vec![0], edges: Vec::new() }];
    }
    let half = 1usize << (n - 1);
    let split = positions.partition_point(|&p| p < half);
    let (left, right) = positions.split_at(split);

    let mut matched = Vec::new();
    let mut folded = Vec::new();
    let mut from_right = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < left.len() || b < right.len() {
        let l = left.get(a).copied();
        let r = right.get(b).map(|&p| p - half);
        match (l, r) {
            (Some(x), Some(y)) if x == y => {
                matched.push(x);
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if y < x => {
                folded.push(y);
                from_right.push(true);
                b += 1;
            }
            (Some(x), _) => {
                folded.push(x);
                from_right.push(false);
                a += 1;
            }
            (None, Some(y)) => {
                folded.push(y);
                from_right.push(true);
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }

    let mut out = Vec::new();
    for mut c in decompose_rec(&folded, n - 1) {
        for v in &mut c.vertices {
            let idx = folded.binary_search(v).expect("vertex came from the folded set");
            if from_right[idx] {
                *v += half;
            }
        }
        c.vertices.sort_unstable();
        out.push(c);
    }
    for c in decompose_rec(&matched, n - 1) {
        let mut vertices: Vec<usize> = c.vertices.iter().flat_map(|&v| [v, v + half]).collect();
        vertices.sort_unstable();
        let mut edges = c.edges;
        edges.push(n - 1);
        out.push(RawCube { vertices, edges });
    }
    out
}

/// The standard cube decomposition, cubes ascending by linear complexity.
pub fn standard_decompose(s: &PeriodicSequence) -> CubeDecomposition {
    let n = s.exponent();
    let positions: Vec<usize> = s.ones().collect();
    let mut cubes = Vec::new();
    let mut lone_vertex = None;
    for raw in decompose_rec(&positions, n) {
        if raw.edges.is_empty() {
            debug_assert!(lone_vertex.is_none(), "at most one vertex is left unpaired");
            lone_vertex = Some(raw.vertices[0]);
        } else {
            let support = SupportSet::new(n, raw.vertices).expect("decomposition stays in range");
            cubes.push(Cube { n, support, edges: raw.edges });
        }
    }
    cubes.sort_by_key(|c| c.linear_complexity());
    CubeDecomposition { n, cubes, lone_vertex }
}

/// Smallest 2-adic distance between a vertex of `a` and a vertex of `b`.
pub fn inter_cube_distance(a: &Cube, b: &Cube) -> Result<usize> {
    if a.n != b.n {
        return Err(Error::PeriodMismatch { left: a.n, right: b.n });
    }
    let mut best = usize::MAX;
    for &p in a.positions() {
        for &q in b.positions() {
            if p == q {
                return Err(Error::invalid(format!("cubes share position {p}")));
            }
            best = best.min(1 << valuation(p ^ q));
        }
    }
    Ok(best)
}

/// Sufficient condition for the cube decomposition to be unique: distinct
/// cube complexities, and every distance between two cubes is below the
/// shortest edge `2^w` found in any cube. `false` means uniqueness is not
/// established.
pub fn has_unique_decomposition_hint(s: &PeriodicSequence) -> Result<bool> {
    if s.is_zero() {
        return Err(Error::invalid("the zero sequence has no cubes"));
    }
    if s.hamming_weight() % 2 == 1 {
        return Err(Error::invalid("uniqueness hint requires even weight"));
    }
    let d = standard_decompose(s);
    let cubes = d.cubes();
    if cubes.windows(2).any(|w| w[0].linear_complexity() == w[1].linear_complexity()) {
        return Ok(false);
    }
    let shortest = cubes.iter().map(|c| 1usize << c.edges[0]).min().expect("nonzero even weight");
    for (i, a) in cubes.iter().enumerate() {
        for b in &cubes[i + 1..] {
            if inter_cube_distance(a, b)? >= shortest {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the longest edge among all pairs of support positions is realised
/// inside the cube of least linear complexity.
pub fn longest_edge_in_smallest_cube(d: &CubeDecomposition) -> Result<bool> {
    let smallest = d.cubes.first().ok_or_else(|| Error::invalid("decomposition has no cubes"))?;
    let all: Vec<usize> = d.cubes.iter().flat_map(|c| c.positions().iter().copied()).chain(d.lone_vertex).collect();
    let max_val = |ps: &[usize]| {
        let mut m = None;
        for (i, &p) in ps.iter().enumerate() {
            for &q in &ps[i + 1..] {
                m = m.max(Some(valuation(p ^ q)));
            }
        }
        m
    };
    Ok(max_val(&all) == max_val(smallest.positions()))
}
