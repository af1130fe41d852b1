//! One period of a binary sequence with period `2^n`.
//!
//! Bits are packed little-endian into `u64` words: index `i` lives in bit
//! `i % 64` of word `i / 64`. Index 0 is `s_0`, the constant term of the
//! period polynomial.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported period exponent.
pub const MAX_EXPONENT: u32 = 30;

/// Text encodings accepted by [`PeriodicSequence::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// `0`/`1` characters, leftmost is index 0.
    Bits,
    /// Hex digits, digit `t` covers indices `4t..4t+3` with `4t` in the most
    /// significant bit.
    Hex,
    /// Comma-separated ascending list of the indices holding a one.
    Positions,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" => Ok(Format::Bits),
            "hex" => Ok(Format::Hex),
            "positions" => Ok(Format::Positions),
            other => Err(Error::parse(format!("unknown format `{other}`"))),
        }
    }
}

pub(crate) fn check_exponent(n: u32) -> Result<()> {
    if n > MAX_EXPONENT {
        return Err(Error::ExponentOutOfRange { n, max: MAX_EXPONENT });
    }
    Ok(())
}

#[inline]
pub(crate) fn word_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// One period `s_0 .. s_{2^n - 1}` of a binary sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    n: u32,
    words: Vec<u64>,
}

impl PeriodicSequence {
    /// The all-zero sequence of period `2^n`.
    pub fn zero(n: u32) -> Result<Self> {
        check_exponent(n)?;
        let period = 1usize << n;
        Ok(Self { n, words: vec![0; period.div_ceil(64)] })
    }

    /// Builds a sequence from the set of positions holding a one.
    ///
    /// Positions may come in any order but must be distinct and `< 2^n`.
    pub fn from_support(n: u32, positions: &[usize]) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for &p in positions {
            if p >= s.period() {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
            if s.get(p) {
                return Err(Error::invalid(format!("duplicate position {p}")));
            }
            s.flip(p);
        }
        Ok(s)
    }

    /// Builds a sequence of period `2^n <= 64` from a packed word.
    pub fn from_word(n: u32, word: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::invalid(format!("2^{n} does not fit in one word")));
        }
        Ok(Self { n, words: vec![word & word_mask(1 << n)] })
    }

    /// Builds a sequence from individual bits; the length must be a power of two.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let n = exponent_of_len(bits.len())?;
        let mut s = Self::zero(n)?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.flip(i);
            }
        }
        Ok(s)
    }

    /// Parses `text` in the given format.
    ///
    /// For [`Format::Bits`] the length determines the period and `n`, when
    /// given, must agree with it. The other formats require `n`.
    pub fn parse(text: &str, format: Format, n: Option<u32>) -> Result<Self> {
        let text = text.trim();
        match format {
            Format::Bits => {
                let bits = text
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::parse(format!("bad bit character `{other}`"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(n) = n {
                    check_exponent(n)?;
                    if bits.len() != 1usize << n {
                        return Err(Error::parse(format!(
                            "bit string has length {}, expected 2^{n} = {}",
                            bits.len(),
                            1usize << n
                        )));
                    }
                }
                Self::from_bits(&bits)
            }
            Format::Hex => {
                let n = n.ok_or_else(|| Error::parse("hex input requires n"))?;
                check_exponent(n)?;
                if n < 2 {
                    return Err(Error::parse("hex input requires n >= 2"));
                }
                let digits = (1usize << n) / 4;
                let chars: Vec<char> = text.chars().collect();
                if chars.len() != digits {
                    return Err(Error::parse(format!(
                        "hex string has {} digits, expected {digits}",
                        chars.len()
                    )));
                }
                let mut s = Self::zero(n)?;
                for (t, c) in chars.into_iter().enumerate() {
                    let v = c
                        .to_digit(16)
                        .ok_or_else(|| Error::parse(format!("bad hex character `{c}`")))?;
                    for b in 0..4 {
                        if v & (8 >> b) != 0 {
                            s.flip(4 * t + b);
                        }
                    }
                }
                Ok(s)
            }
            Format::Positions => {
                let n = n.ok_or_else(|| Error::parse("positions input requires n"))?;
                check_exponent(n)?;
                let mut s = Self::zero(n)?;
                if text.is_empty() {
                    return Ok(s);
                }
                for item in text.split(',') {
                    let item = item.trim();
                    let p: usize = item
                        .parse()
                        .map_err(|_| Error::parse(format!("bad position `{item}`")))?;
                    if p >= s.period() {
                        return Err(Error::PositionOutOfRange { position: p, n });
                    }
                    if s.get(p) {
                        return Err(Error::parse(format!("duplicate position {p}")));
                    }
                    s.flip(p);
                }
                Ok(s)
            }
        }
    }

    /// Inverse of [`PeriodicSequence::parse`].
    pub fn serialize(&self, format: Format) -> Result<String> {
        match format {
            Format::Bits => Ok((0..self.period()).map(|i| if self.get(i) { '1' } else { '0' }).collect()),
            Format::Hex => {
                if self.n < 2 {
                    return Err(Error::invalid("hex output requires n >= 2"));
                }
                Ok((0..self.period() / 4)
                    .map(|t| {
                        let v = (0..4).fold(0u32, |acc, b| acc << 1 | self.get(4 * t + b) as u32);
                        char::from_digit(v, 16).unwrap()
                    })
                    .collect())
            }
            Format::Positions => Ok(self
                .ones()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")),
        }
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// `2^n`.
    pub fn period(&self) -> usize {
        1usize << self.n
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed period when it fits in a single word.
    pub fn as_word(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of ones in one period.
    pub fn hamming_weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ascending iterator over the positions holding a one.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn support(&self) -> SupportSet {
        SupportSet { n: self.n, positions: self.ones().collect() }
    }

    /// Elementwise sum modulo 2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::PeriodMismatch { left: self.n, right: other.n });
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(Self { n: self.n, words })
    }

    /// Splits one period into its left and right halves, each of period `2^{n-1}`.
    pub fn halves(&self) -> Result<(Self, Self)> {
        if self.n == 0 {
            return Err(Error::invalid("a sequence of period 1 has no halves"));
        }
        let half = self.period() / 2;
        let mut left = Self::zero(self.n - 1)?;
        let mut right = Self::zero(self.n - 1)?;
        if half >= 64 {
            let hw = half / 64;
            left.words.copy_from_slice(&self.words[..hw]);
            right.words.copy_from_slice(&self.words[hw..]);
        } else {
            let w = self.words[0];
            left.words[0] = w & word_mask(half);
            right.words[0] = (w >> half) & word_mask(half);
        }
        Ok((left, right))
    }

    /// Concatenates two periods of equal length into one of twice the length.
    pub fn join(left: &Self, right: &Self) -> Result<Self> {
        if left.n != right.n {
            return Err(Error::PeriodMismatch { left: left.n, right: right.n });
        }
        let mut out = Self::zero(left.n + 1)?;
        let half = left.period();
        if half >= 64 {
            out.words[..left.words.len()].copy_from_slice(&left.words);
            out.words[left.words.len()..].copy_from_slice(&right.words);
        } else {
            out.words[0] = left.words[0] | right.words[0] << half;
        }
        Ok(out)
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "PeriodicSequence(n={}, {})", self.n, self.serialize(Format::Bits).unwrap())
        } else {
            write!(f, "PeriodicSequence(n={}, weight={})", self.n, self.hamming_weight())
        }
    }
}

fn exponent_of_len(len: usize) -> Result<u32> {
    if !len.is_power_of_two() {
        return Err(Error::parse(format!("length {len} is not a power of two")));
    }
    let n = len.trailing_zeros();
    check_exponent(n)?;
    Ok(n)
}

/// Strictly ascending set of positions inside one period of length `2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SupportSet {
    n: u32,
    positions: Vec<usize>,
}

impl SupportSet {
    /// Sorts `positions` and validates range and distinctness.
    pub fn new(n: u32, mut positions: Vec<usize>) -> Result<Self> {
        check_exponent(n)?;
        positions.sort_unstable();
        if let Some(w) = positions.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate position {}", w[0])));
        }
        if let Some(&p) = positions.last() {
            if p >= 1usize << n {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
        }
        Ok(Self { n, positions })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    pub fn to_sequence(&self) -> PeriodicSequence {
        PeriodicSequence::from_support(self.n, &self.positions)
            .expect("support set invariants guarantee a valid sequence")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> PeriodicSequence {
        PeriodicSequence::parse(s, Format::Bits, None).unwrap()
    }

    fn support(n: u32, p: &[usize]) -> PeriodicSequence {
        PeriodicSequence::from_support(n, p).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(bits("11110000").support().positions(), &[0, 1, 2, 3]);
        let s = PeriodicSequence::parse("0,1,3,4,7,8", Format::Positions, Some(4)).unwrap();
        assert_eq!(s.support().positions(), &[0, 1, 3, 4, 7, 8]);
        assert!(matches!(
            PeriodicSequence::parse("1111000", Format::Bits, Some(3)),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            PeriodicSequence::parse("1111000", Format::Bits, None),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn parse_rejects_bad_input() {
        for (text, fmt, n) in [
            ("1102", Format::Bits, None),
            ("0,1,1", Format::Positions, Some(3)),
            ("0,x", Format::Positions, Some(3)),
            ("fg", Format::Hex, Some(3)),
            ("f", Format::Hex, Some(3)),
            ("1", Format::Hex, Some(1)),
        ] {
            assert!(matches!(PeriodicSequence::parse(text, fmt, n), Err(Error::Parse(_))), "{text}");
        }
        assert!(matches!(
            PeriodicSequence::parse("0,8", Format::Positions, Some(3)),
            Err(Error::PositionOutOfRange { position: 8, n: 3 })
        ));
        assert!(matches!(
            PeriodicSequence::parse("", Format::Positions, Some(31)),
            Err(Error::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn hex_layout() {
        // index 0 in the most significant bit of the first digit
        let s = PeriodicSequence::parse("8001", Format::Hex, Some(4)).unwrap();
        assert_eq!(s.support().positions(), &[0, 15]);
        let s = PeriodicSequence::parse("F0", Format::Hex, Some(3)).unwrap();
        assert_eq!(s, bits("11110000"));
        assert_eq!(s.serialize(Format::Hex).unwrap(), "f0");
    }

    #[test]
    fn weight_examples() {
        assert_eq!(PeriodicSequence::zero(3).unwrap().hamming_weight(), 0);
        assert_eq!(support(3, &[0, 1, 2, 3]).hamming_weight(), 4);
        assert_eq!(support(4, &[0, 1, 3, 4, 7, 8]).hamming_weight(), 6);
    }

    #[test]
    fn xor_examples() {
        let s = support(4, &[0, 1, 3, 4, 7, 8]);
        let z = PeriodicSequence::zero(4).unwrap();
        assert!(s.xor(&s).unwrap().is_zero());
        assert_eq!(s.xor(&z).unwrap(), s);
        // symmetric difference of {0,8} and {0,1,3,4,7,8}
        assert_eq!(support(4, &[0, 8]).xor(&s).unwrap(), support(4, &[1, 3, 4, 7]));
        assert!(matches!(s.xor(&support(3, &[0])), Err(Error::PeriodMismatch { .. })));
    }

    #[test]
    fn halves_examples() {
        let (l, r) = bits("11110000").halves().unwrap();
        assert_eq!((l, r), (bits("1111"), bits("0000")));
        let (l, r) = bits("10100101").halves().unwrap();
        assert_eq!((l, r), (bits("1010"), bits("0101")));
        let (l, r) = support(4, &[0, 8]).halves().unwrap();
        assert_eq!(l.support().positions(), &[0]);
        assert_eq!(r.support().positions(), &[0]);
        assert!(bits("1").halves().is_err());
    }

    #[test]
    fn multiword_halves_and_join() {
        let s = support(8, &[0, 63, 64, 127, 128, 200, 255]);
        let (l, r) = s.halves().unwrap();
        assert_eq!(l.support().positions(), &[0, 63, 64, 127]);
        assert_eq!(r.support().positions(), &[0, 72, 127]);
        assert_eq!(PeriodicSequence::join(&l, &r).unwrap(), s);
    }

    #[test]
    fn support_set_validation() {
        assert_eq!(SupportSet::new(3, vec![5, 1]).unwrap().positions(), &[1, 5]);
        assert!(SupportSet::new(3, vec![1, 1]).is_err());
        assert!(SupportSet::new(3, vec![8]).is_err());
    }
}
