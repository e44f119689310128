//! Words over `Σ_q = {0, …, q-1}` and the transforms used throughout the crate.
//!
//! Positions in the public API are 1-based and intervals are inclusive, so
//! `x.slice(i, j)` is `x_i … x_j` and is empty when `i > j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};

const SYMBOLS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest supported alphabet (symbols print as `0-9a-z`).
pub const MAX_Q: u8 = 36;

/// A finite word over `Σ_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequence {
    q: u8,
    symbols: Vec<u8>,
}

pub(crate) fn check_q(q: u8) -> Result<()> {
    if (2..=MAX_Q).contains(&q) {
        Ok(())
    } else {
        Err(Error::Alphabet(q as u32))
    }
}

impl Sequence {
    pub fn new(q: u8, symbols: Vec<u8>) -> Result<Self> {
        check_q(q)?;
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::Symbol { symbol: s as u32, q });
        }
        Ok(Sequence { q, symbols })
    }

    /// Caller guarantees `q` and every symbol are in range.
    pub(crate) fn from_raw(q: u8, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < q));
        Sequence { q, symbols }
    }

    pub fn empty(q: u8) -> Result<Self> {
        Self::new(q, Vec::new())
    }

    /// Parses `0-9a-z` symbols. A lone `-` is the empty word.
    pub fn parse(q: u8, text: &str) -> Result<Self> {
        check_q(q)?;
        let text = text.trim();
        if text == "-" {
            return Ok(Sequence { q, symbols: Vec::new() });
        }
        let mut symbols = Vec::with_capacity(text.len());
        for c in text.chars() {
            let v = c.to_digit(36).ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in {text:?}")))?;
            if v >= q as u32 {
                return Err(Error::Symbol { symbol: v, q });
            }
            symbols.push(v as u8);
        }
        Ok(Sequence { q, symbols })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// `x_i`, 1-based.
    pub fn at(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    /// `x_{[i,j]}`, 1-based inclusive; empty when `i > j`.
    pub fn slice(&self, i: usize, j: usize) -> Sequence {
        Sequence { q: self.q, symbols: interval(&self.symbols, i, j).to_vec() }
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Sequence { q: self.q, symbols }
    }

    /// Base-q value of the word. For words of equal length this order agrees
    /// with lexicographic order.
    pub fn rank(&self) -> u64 {
        rank(&self.symbols, self.q)
    }

    pub fn from_rank(q: u8, len: usize, r: u64) -> Sequence {
        let mut symbols = vec![0; len];
        unrank(r, q, &mut symbols);
        Sequence { q, symbols }
    }

    /// All words of length `n` in lexicographic order.
    pub fn words(q: u8, n: usize) -> impl Iterator<Item = Sequence> {
        let total = word_count(q, n);
        (0..total).map(move |r| Sequence::from_rank(q, n, r))
    }

    pub(crate) fn same_alphabet(&self, other: &Sequence) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.q, other.q))
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("-");
        }
        for &s in &self.symbols {
            write!(f, "{}", SYMBOLS[s as usize] as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn interval(s: &[u8], i: usize, j: usize) -> &[u8] {
    if i > j || j == 0 {
        &[]
    } else {
        &s[i - 1..j]
    }
}

pub(crate) fn symbol_char(s: u8) -> char {
    SYMBOLS[s as usize] as char
}

pub(crate) fn format_symbols(s: &[u8]) -> String {
    if s.is_empty() {
        return "-".into();
    }
    s.iter().map(|&c| symbol_char(c)).collect()
}

/// `q^n`; panics on overflow of `u64`.
pub fn word_count(q: u8, n: usize) -> u64 {
    (q as u64).checked_pow(n as u32).expect("q^n overflows u64")
}

pub(crate) fn rank(s: &[u8], q: u8) -> u64 {
    s.iter().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
}

pub(crate) fn unrank(mut r: u64, q: u8, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (r % q as u64) as u8;
        r /= q as u64;
    }
}

/// A set of words kept sorted and duplicate free.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceSet(Vec<Sequence>);

impl SequenceSet {
    pub fn new() -> Self {
        SequenceSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Sequence) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sequence> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Sequence] {
        &self.0
    }

    pub fn intersection(&self, other: &SequenceSet) -> SequenceSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        SequenceSet(out)
    }

    pub fn union(&self, other: &SequenceSet) -> SequenceSet {
        self.iter().chain(other.iter()).cloned().collect()
    }

    pub fn difference(&self, other: &SequenceSet) -> SequenceSet {
        self.iter().filter(|x| !other.contains(x)).cloned().collect()
    }

    pub fn is_subset(&self, other: &SequenceSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }
}

impl FromIterator<Sequence> for SequenceSet {
    fn from_iter<I: IntoIterator<Item = Sequence>>(iter: I) -> Self {
        let mut v: Vec<Sequence> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SequenceSet(v)
    }
}

impl IntoIterator for SequenceSet {
    type Item = Sequence;
    type IntoIter = std::vec::IntoIter<Sequence>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a SequenceSet {
    type Item = &'a Sequence;
    type IntoIter = std::slice::Iter<'a, Sequence>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for SequenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Number of maximal runs; 0 for the empty word.
pub fn runs(x: &Sequence) -> usize {
    runs_of(x.symbols())
}

pub(crate) fn runs_of(s: &[u8]) -> usize {
    if s.is_empty() {
        0
    } else {
        1 + s.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// `x_i = x_{i+t}` for every valid `i`; words of length at most `t` qualify.
pub fn is_t_periodic(x: &Sequence, t: usize) -> Result<bool> {
    pre(t >= 1, "period must be positive")?;
    Ok(periodic(x.symbols(), t))
}

pub(crate) fn periodic(s: &[u8], t: usize) -> bool {
    s.len() <= t || s.iter().zip(&s[t..]).all(|(a, b)| a == b)
}

/// Periodic with some period in `1..=t`.
pub fn is_t_le_periodic(x: &Sequence, t: usize) -> Result<bool> {
    pre(t >= 1, "period must be positive")?;
    Ok(le_periodic(x.symbols(), t))
}

pub(crate) fn le_periodic(s: &[u8], t: usize) -> bool {
    (1..=t).any(|p| periodic(s, p))
}

/// Membership in `R_q(n,t,ℓ)`: no window of length `ℓ+1` has a period `≤ t`.
pub fn in_period_restricted(x: &Sequence, t: usize, l: usize) -> Result<bool> {
    pre(t >= 1 && l >= t, "need 1 <= t <= l")?;
    Ok(period_restricted(x.symbols(), t, l))
}

pub(crate) fn period_restricted(s: &[u8], t: usize, l: usize) -> bool {
    let w = l + 1;
    if s.len() < w {
        return true;
    }
    // A window of length w is p-periodic iff it holds w-p consecutive
    // matches x_i = x_{i+p}.
    for p in 1..=t {
        // A window no longer than p counts as p-periodic.
        if p >= w {
            return false;
        }
        let need = w - p;
        let mut streak = 0;
        for i in 0..s.len() - p {
            if s[i] == s[i + p] {
                streak += 1;
                if streak >= need {
                    return false;
                }
            } else {
                streak = 0;
            }
        }
    }
    true
}

/// The alternating word `abab…` of a given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingSpec {
    pub len: usize,
    pub a: u8,
    pub b: u8,
}

impl AlternatingSpec {
    pub fn symbols(&self) -> Vec<u8> {
        (0..self.len).map(|i| if i % 2 == 0 { self.a } else { self.b }).collect()
    }
}

pub fn alternating(q: u8, len: usize, a: u8, b: u8) -> Result<Sequence> {
    Sequence::new(q, AlternatingSpec { len, a, b }.symbols())
}

/// `x = prefix · x_core · suffix`, `y = prefix · y_core · suffix` with the
/// longest common prefix, then the longest common suffix of the remainders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDecomposition {
    pub prefix: Sequence,
    pub x_core: Sequence,
    pub y_core: Sequence,
    pub suffix: Sequence,
}

pub fn decompose_pair(x: &Sequence, y: &Sequence) -> Result<PairDecomposition> {
    x.same_alphabet(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let (p, s) = common_affixes(x.symbols(), y.symbols());
    let n = x.len();
    let q = x.q();
    Ok(PairDecomposition {
        prefix: Sequence::from_raw(q, x.symbols()[..p].to_vec()),
        x_core: Sequence::from_raw(q, x.symbols()[p..n - s].to_vec()),
        y_core: Sequence::from_raw(q, y.symbols()[p..n - s].to_vec()),
        suffix: Sequence::from_raw(q, x.symbols()[n - s..].to_vec()),
    })
}

/// Lengths of the common prefix and of the common suffix of what remains.
pub(crate) fn common_affixes(x: &[u8], y: &[u8]) -> (usize, usize) {
    let n = x.len();
    let p = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    let s = (0..n - p).take_while(|&i| x[n - 1 - i] == y[n - 1 - i]).count();
    (p, s)
}

/// `d_i = x_i - x_{i-1} mod q` with `x_0 = 0`.
pub fn differential(x: &Sequence) -> Sequence {
    let q = x.q();
    let mut prev = 0u8;
    let symbols = x
        .symbols()
        .iter()
        .map(|&c| {
            let d = (c + q - prev) % q;
            prev = c;
            d
        })
        .collect();
    Sequence::from_raw(q, symbols)
}

/// Integer prefix sums `g_i = d_1 + … + d_i` of the differential word, with
/// the differential symbols read as integers in `0..q` (no reduction).
pub fn integer_differential(x: &Sequence) -> Vec<i64> {
    integer_differential_of(x.symbols(), x.q())
}

pub(crate) fn integer_differential_of(s: &[u8], q: u8) -> Vec<i64> {
    let mut d = Vec::with_capacity(s.len());
    let mut prev = 0u8;
    for &c in s {
        d.push(((c + q - prev) % q) as i64);
        prev = c;
    }
    let mut acc = 0;
    for v in d.iter_mut() {
        acc += *v;
        *v = acc;
    }
    d
}

/// Bit `i-1` of each symbol, as a binary word (`i` is 1-based).
pub fn binary_row(x: &Sequence, i: u32) -> Result<Sequence> {
    let rows = row_count(x.q());
    pre(i >= 1 && i <= rows, format!("row {i} not in 1..={rows}"))?;
    Ok(Sequence::from_raw(2, x.symbols().iter().map(|&c| (c >> (i - 1)) & 1).collect()))
}

/// `⌈log₂ q⌉`, the number of binary rows of a q-ary word.
pub fn row_count(q: u8) -> u32 {
    (q as u32).next_power_of_two().trailing_zeros()
}

/// Symbols at odd positions `x_1 x_3 x_5 …`.
pub fn odd_subsequence(x: &Sequence) -> Sequence {
    Sequence::from_raw(x.q(), x.symbols().iter().step_by(2).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u8, t: &str) -> Sequence {
        Sequence::parse(q, t).unwrap()
    }

    #[test]
    fn runs_examples() {
        assert_eq!(runs(&s(3, "001220")), 4);
        assert_eq!(runs(&s(2, "-")), 0);
        assert_eq!(runs(&s(2, "0")), 1);
    }

    #[test]
    fn periodicity_examples() {
        assert!(!is_t_le_periodic(&s(2, "011"), 1).unwrap());
        assert!(!is_t_le_periodic(&s(3, "0112"), 2).unwrap());
        assert!(is_t_periodic(&s(2, "010101"), 2).unwrap());
        assert!(is_t_le_periodic(&s(2, "01"), 2).unwrap());
        assert!(is_t_periodic(&s(2, "-"), 1).unwrap());
        assert!(is_t_periodic(&s(2, "0"), 1).is_ok());
        assert!(is_t_periodic(&s(2, "0"), 0).is_err());
    }

    #[test]
    fn short_windows_are_periodic() {
        assert!(!period_restricted(&[0, 1, 2], 4, 2));
        assert!(period_restricted(&[0, 1], 4, 2));
        assert!(!period_restricted(&[0, 1, 0, 0], 1, 1));
        assert!(period_restricted(&[0, 1, 0, 1], 1, 1));
    }

    #[test]
    fn restricted_examples() {
        assert!(in_period_restricted(&s(2, "00110100"), 1, 2).unwrap());
        assert!(!in_period_restricted(&s(2, "00010100"), 1, 2).unwrap());
        assert!(!in_period_restricted(&s(2, "0101"), 2, 3).unwrap());
        assert!(in_period_restricted(&s(2, "0110"), 2, 3).unwrap());
        assert!(in_period_restricted(&s(2, "000"), 1, 3).unwrap());
        assert!(in_period_restricted(&s(2, "0"), 2, 1).is_err());
    }

    #[test]
    fn restricted_matches_window_scan() {
        for n in 0..=9 {
            for x in Sequence::words(2, n) {
                for t in 1..=3 {
                    for l in t..=5 {
                        let slow = x.symbols().windows(l + 1).all(|w| !le_periodic(w, t));
                        assert_eq!(period_restricted(x.symbols(), t, l), slow, "{x} {t} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_pair(&s(2, "0011"), &s(2, "0101")).unwrap();
        assert_eq!(d.prefix, s(2, "0"));
        assert_eq!(d.x_core, s(2, "01"));
        assert_eq!(d.y_core, s(2, "10"));
        assert_eq!(d.suffix, s(2, "1"));
        let d = decompose_pair(&s(2, "010"), &s(2, "001")).unwrap();
        assert_eq!((d.prefix.len(), d.suffix.len()), (1, 0));
        let d = decompose_pair(&s(2, "0110"), &s(2, "0110")).unwrap();
        assert!(d.x_core.is_empty() && d.suffix.is_empty());
        assert!(decompose_pair(&s(2, "01"), &s(2, "011")).is_err());
    }

    #[test]
    fn differential_examples() {
        assert_eq!(differential(&s(3, "012")), s(3, "011"));
        assert_eq!(differential(&s(4, "31")), s(4, "32"));
        assert_eq!(integer_differential(&s(2, "11")), vec![1, 1]);
        assert_eq!(integer_differential(&s(3, "021")), vec![0, 2, 4]);
        assert_eq!(integer_differential(&s(3, "012")), vec![0, 1, 2]);
    }

    #[test]
    fn rows_and_odd() {
        assert_eq!(binary_row(&s(4, "0123"), 1).unwrap(), s(2, "0101"));
        assert_eq!(binary_row(&s(4, "0123"), 2).unwrap(), s(2, "0011"));
        assert!(binary_row(&s(4, "0123"), 3).is_err());
        assert_eq!(row_count(2), 1);
        assert_eq!(row_count(3), 2);
        assert_eq!(row_count(5), 3);
        assert_eq!(odd_subsequence(&s(3, "21021")), s(3, "201"));
        assert_eq!(alternating(2, 3, 0, 1).unwrap(), s(2, "010"));
    }

    #[test]
    fn parse_and_rank() {
        assert!(Sequence::parse(2, "012").is_err());
        assert!(Sequence::new(1, vec![]).is_err());
        let x = s(3, "2101");
        assert_eq!(Sequence::from_rank(3, 4, x.rank()), x);
        assert_eq!(x.to_string(), "2101");
        assert_eq!(s(2, "-").to_string(), "-");
        let all: Vec<_> = Sequence::words(2, 3).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), 8);
        assert_eq!(x.slice(2, 3), s(3, "10"));
        assert!(x.slice(3, 2).is_empty());
    }

    #[test]
    fn set_ops() {
        let a: SequenceSet = ["01", "10", "01"].iter().map(|t| s(2, t)).collect();
        let b: SequenceSet = ["10", "11"].iter().map(|t| s(2, t)).collect();
        assert_eq!(a.len(), 2);
        assert_eq!(a.intersection(&b).len(), 1);
        assert_eq!(a.union(&b).len(), 3);
        assert_eq!(a.difference(&b).len(), 1);
    }
}
