//! Linear complexity of `2^n`-periodic binary sequences.
//!
//! [`games_chan_lc`] is the production route. [`lc_by_factor_multiplicity`]
//! computes the same quantity from the period polynomial and exists as an
//! independent cross-check. [`pair_lc`] and [`quad_lc_predictor`] are closed
//! forms for two- and four-element supports.

use std::fmt;

use serde::Serialize;

use crate::bitseq::{check_exponent, word_mask, PeriodicSequence};
use crate::error::{Error, Result};

/// Degree of the minimal polynomial; always in `0..=2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LinearComplexity(pub u64);

impl LinearComplexity {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for LinearComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// 2-adic valuation of a nonzero integer.
#[inline]
pub fn valuation(x: usize) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros()
}

/// Games-Chan on a packed period of length `2^n <= 64`.
#[inline]
pub(crate) fn games_chan_word(word: u64, n: u32) -> u64 {
    let mut len = 1u64 << n;
    let mut w = word & word_mask(len as usize);
    let mut lc = 0;
    while len > 1 {
        let half = len / 2;
        let lo = w & word_mask(half as usize);
        let hi = w >> half;
        if lo != hi {
            lc += half;
            w = lo ^ hi;
        } else {
            w = lo;
        }
        len = half;
    }
    lc + (w & 1)
}

/// Linear complexity by the Games-Chan halving recursion, run iteratively.
///
/// Equal halves keep the left half; unequal halves add half the current
/// length and continue with their sum. A final single one adds 1.
pub fn games_chan_lc(s: &PeriodicSequence) -> LinearComplexity {
    let n = s.exponent();
    if n <= 6 {
        return LinearComplexity(games_chan_word(s.words()[0], n));
    }
    let mut buf = s.words().to_vec();
    let mut words = buf.len();
    let mut lc = 0u64;
    while words > 1 {
        let hw = words / 2;
        let (left, right) = buf[..words].split_at_mut(hw);
        if left != right {
            lc += (hw * 64) as u64;
            left.iter_mut().zip(right.iter()).for_each(|(a, b)| *a ^= b);
        }
        words = hw;
    }
    LinearComplexity(lc + games_chan_word(buf[0], 6))
}

/// Linear complexity as `2^n - v`, where `v` is the multiplicity of `1 + x`
/// in the period polynomial over GF(2).
///
/// Uses repeated synthetic division on the coefficient vector; the zero
/// sequence gets `v = 2^n` and hence complexity 0. Quadratic in the period.
pub fn lc_by_factor_multiplicity(s: &PeriodicSequence) -> LinearComplexity {
    let period = s.period();
    let mut coeffs: Vec<u8> = (0..period).map(|i| s.get(i) as u8).collect();
    let mut v = 0usize;
    loop {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return LinearComplexity(0);
        }
        // remainder of division by (1 + x) is p(1)
        if coeffs.iter().fold(0u8, |a, &c| a ^ c) == 1 {
            break;
        }
        let d = coeffs.len() - 1;
        let mut q = vec![0u8; d];
        q[d - 1] = coeffs[d];
        for i in (1..d).rev() {
            q[i - 1] = coeffs[i] ^ q[i];
        }
        coeffs = q;
        v += 1;
    }
    LinearComplexity((period - v) as u64)
}

/// Closed form for a two-element support `{i, j}`: `2^n - 2^r` where
/// `j - i = 2^r (2a + 1)`.
pub fn pair_lc(i: usize, j: usize, n: u32) -> Result<LinearComplexity> {
    check_exponent(n)?;
    let period = 1usize << n;
    for p in [i, j] {
        if p >= period {
            return Err(Error::PositionOutOfRange { position: p, n });
        }
    }
    if i == j {
        return Err(Error::invalid("pair positions must differ"));
    }
    let r = valuation(i.abs_diff(j));
    Ok(LinearComplexity((period - (1 << r)) as u64))
}

/// Closed-form prediction for a four-element support split as `{i, j}` and
/// `{k, l}`, where `j - i = 2^d (2u + 1)`, `l - k = 2^e (2v + 1)` and `k - i` is
/// odd: `2^n - (2^d + 1)` when `d = e`, otherwise `2^n - 2^min(d, e)`.
///
/// The value depends on how the support is split into pairs and is not a
/// ground truth; compare against [`games_chan_lc`].
pub fn quad_lc_predictor(i: usize, j: usize, k: usize, l: usize, n: u32) -> Result<LinearComplexity> {
    check_exponent(n)?;
    let period = 1usize << n;
    for p in [i, j, k, l] {
        if p >= period {
            return Err(Error::PositionOutOfRange { position: p, n });
        }
    }
    let mut all = [i, j, k, l];
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("positions must be distinct".into()));
    }
    if i >= j || k >= l {
        return Err(Error::Precondition("each pair must satisfy i < j and k < l".into()));
    }
    if i >= k {
        return Err(Error::Precondition("requires i < k".into()));
    }
    if (k - i).is_multiple_of(2) {
        return Err(Error::Precondition(format!("k - i = {} must be odd", k - i)));
    }
    let d = valuation(j - i);
    let e = valuation(l - k);
    let drop = if d == e { (1usize << d) + 1 } else { 1usize << d.min(e) };
    Ok(LinearComplexity((period - drop) as u64))
}
