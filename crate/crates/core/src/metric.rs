//! Insertion and deletion balls, their intersections, and the
//! insertion/deletion (Levenshtein) distance.
//!
//! Balls are generated without duplicates by walking leftmost embeddings, so
//! every member is produced exactly once and in lexicographic order.

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::seq::{self, Sequence, SequenceSet};

/// Which channel a ball describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Insertion,
    Deletion,
}

impl BallKind {
    pub fn name(self) -> &'static str {
        match self {
            BallKind::Insertion => "insertion",
            BallKind::Deletion => "deletion",
        }
    }

    /// Length of the ball members for a centre of length `n`.
    pub fn member_len(self, n: usize, t: usize) -> usize {
        match self {
            BallKind::Insertion => n + t,
            BallKind::Deletion => n - t,
        }
    }
}

impl std::str::FromStr for BallKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "insertion" | "ins" | "I" => Ok(BallKind::Insertion),
            "deletion" | "del" | "D" => Ok(BallKind::Deletion),
            _ => Err(Error::Unknown { kind: "ball kind", name: s.into() }),
        }
    }
}

/// Calls `f` on every distinct subsequence of `x` with length `m`, in
/// lexicographic order.
pub(crate) fn for_each_subsequence(x: &[u8], q: u8, m: usize, f: &mut impl FnMut(&[u8])) {
    if m > x.len() {
        return;
    }
    // next[i][c]: first index >= i holding c, or n.
    let n = x.len();
    let mut next = vec![n as u32; (n + 1) * q as usize];
    for i in (0..n).rev() {
        let (head, tail) = next.split_at_mut((i + 1) * q as usize);
        head[i * q as usize..].copy_from_slice(&tail[..q as usize]);
        head[i * q as usize + x[i] as usize] = i as u32;
    }
    let mut buf = Vec::with_capacity(m);
    sub_rec(&next, q as usize, n, 0, m, &mut buf, f);
}

fn sub_rec(next: &[u32], q: usize, n: usize, pos: usize, left: usize, buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if left == 0 {
        f(buf);
        return;
    }
    for c in 0..q {
        let j = next[pos * q + c] as usize;
        if j < n && n - j >= left {
            buf.push(c as u8);
            sub_rec(next, q, n, j + 1, left - 1, buf, f);
            buf.pop();
        }
    }
}

/// Calls `f` on every distinct supersequence of `x` with length `|x| + t`,
/// in lexicographic order.
pub(crate) fn for_each_supersequence(x: &[u8], q: u8, t: usize, f: &mut impl FnMut(&[u8])) {
    let mut buf = Vec::with_capacity(x.len() + t);
    sup_rec(x, q, 0, t, &mut buf, f);
}

fn sup_rec(x: &[u8], q: u8, i: usize, left: usize, buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if i == x.len() && left == 0 {
        f(buf);
        return;
    }
    for c in 0..q {
        if i < x.len() && c == x[i] {
            buf.push(c);
            sup_rec(x, q, i + 1, left, buf, f);
            buf.pop();
        } else if left > 0 {
            // An inserted symbol must differ from the next unmatched one,
            // otherwise the leftmost embedding would have used it.
            buf.push(c);
            sup_rec(x, q, i, left - 1, buf, f);
            buf.pop();
        }
    }
}

pub(crate) fn for_each_ball_member(x: &[u8], q: u8, t: usize, kind: BallKind, f: &mut impl FnMut(&[u8])) {
    match kind {
        BallKind::Insertion => for_each_supersequence(x, q, t, f),
        BallKind::Deletion => {
            if t <= x.len() {
                for_each_subsequence(x, q, x.len() - t, f)
            }
        }
    }
}

/// Sorted ranks of the ball members.
pub(crate) fn ball_ranks(x: &[u8], q: u8, t: usize, kind: BallKind) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_ball_member(x, q, t, kind, &mut |z| out.push(seq::rank(z, q)));
    out
}

/// `D_t(x)`: all subsequences of length `|x| - t`.
pub fn deletion_ball(x: &Sequence, t: usize) -> Result<SequenceSet> {
    pre(t <= x.len(), format!("cannot delete {t} symbols from a word of length {}", x.len()))?;
    Ok(collect(x, t, BallKind::Deletion))
}

/// `I_t(x)`: all supersequences of length `|x| + t`.
pub fn insertion_ball(x: &Sequence, t: usize) -> SequenceSet {
    collect(x, t, BallKind::Insertion)
}

pub fn ball(x: &Sequence, t: usize, kind: BallKind) -> Result<SequenceSet> {
    match kind {
        BallKind::Insertion => Ok(insertion_ball(x, t)),
        BallKind::Deletion => deletion_ball(x, t),
    }
}

fn collect(x: &Sequence, t: usize, kind: BallKind) -> SequenceSet {
    let q = x.q();
    let mut out = Vec::new();
    for_each_ball_member(x.symbols(), q, t, kind, &mut |z| out.push(Sequence::from_raw(q, z.to_vec())));
    out.into_iter().collect()
}

/// `B_t(x) ∩ B_t(y)` for equal-length `x`, `y`.
pub fn ball_intersection(x: &Sequence, y: &Sequence, t: usize, kind: BallKind) -> Result<SequenceSet> {
    x.same_alphabet(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(ball(x, t, kind)?.intersection(&ball(y, t, kind)?))
}

/// Size of the intersection of two sorted, duplicate-free slices.
pub(crate) fn intersect_count(a: &[u64], b: &[u64]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        i += (x <= y) as usize;
        j += (y <= x) as usize;
        c += (x == y) as usize;
    }
    c
}

pub(crate) fn intersect_into(a: &[u64], b: &[u64], out: &mut Vec<u64>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x == y {
            out.push(x);
        }
        i += (x <= y) as usize;
        j += (y <= x) as usize;
    }
}

/// Length of a longest common subsequence.
pub fn lcs_len(x: &Sequence, y: &Sequence) -> usize {
    lcs(x.symbols(), y.symbols())
}

pub(crate) fn lcs(x: &[u8], y: &[u8]) -> usize {
    let mut row = vec![0u32; y.len() + 1];
    for &a in x {
        let mut diag = 0;
        for (j, &b) in y.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if a == b { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[y.len()] as usize
}

/// Insertion/deletion distance `|x| + |y| - 2·LCS(x, y)`.
pub fn levenshtein(x: &Sequence, y: &Sequence) -> usize {
    indel(x.symbols(), y.symbols())
}

pub(crate) fn indel(x: &[u8], y: &[u8]) -> usize {
    x.len() + y.len() - 2 * lcs(x, y)
}

pub fn is_subsequence(z: &Sequence, x: &Sequence) -> bool {
    subseq(z.symbols(), x.symbols())
}

pub(crate) fn subseq(z: &[u8], x: &[u8]) -> bool {
    let mut it = x.iter();
    z.iter().all(|c| it.any(|d| d == c))
}

/// 1-based positions of the leftmost embedding of `z` in `x`.
pub fn leftmost_embedding(x: &Sequence, z: &Sequence) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(z.len());
    let mut i = 0;
    for &c in z.symbols() {
        while i < x.len() && x.symbols()[i] != c {
            i += 1;
        }
        if i == x.len() {
            return Err(Error::Precondition(format!("{z} is not a subsequence of {x}")));
        }
        i += 1;
        out.push(i);
    }
    Ok(out)
}

/// The injection from `D_t(x) ∩ D_t(y)` into `I_t(x) ∩ I_t(y)`.
///
/// With leftmost embeddings `p` of `z` in `x` and `p'` of `z` in `y`, the
/// image interleaves `x` minus its embedded symbols with all of `y`, block by
/// block: `x[p_{i-1}+1, p_i-1] · y[p'_{i-1}+1, p'_i]`, closed by the two tails.
pub fn injection_phi(x: &Sequence, y: &Sequence, z: &Sequence, t: usize) -> Result<Sequence> {
    x.same_alphabet(y)?;
    x.same_alphabet(z)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    pre(t <= n && z.len() == n - t, "z must have length |x| - t")?;
    let p = leftmost_embedding(x, z)?;
    let pp = leftmost_embedding(y, z)?;
    let (xs, ys) = (x.symbols(), y.symbols());
    let mut out = Vec::with_capacity(n + t);
    let (mut a, mut b) = (0, 0);
    for (&pi, &ppi) in p.iter().zip(&pp) {
        out.extend_from_slice(&xs[a..pi - 1]);
        out.extend_from_slice(&ys[b..ppi]);
        a = pi;
        b = ppi;
    }
    out.extend_from_slice(&xs[a..]);
    out.extend_from_slice(&ys[b..]);
    Ok(Sequence::from_raw(x.q(), out))
}

/// Ranks of every `y ≠ x` of the same length with `B_t(x) ∩ B_t(y) ≠ ∅`,
/// sorted. Found by walking out to a common ball member and back.
pub(crate) fn confusable_ranks(x: &[u8], q: u8, t: usize, kind: BallKind) -> Vec<u64> {
    let back = match kind {
        BallKind::Insertion => BallKind::Deletion,
        BallKind::Deletion => BallKind::Insertion,
    };
    let me = seq::rank(x, q);
    let mut out = Vec::new();
    for_each_ball_member(x, q, t, kind, &mut |z| {
        for_each_ball_member(z, q, t, back, &mut |y| {
            let r = seq::rank(y, q);
            if r != me {
                out.push(r);
            }
        });
    });
    out.sort_unstable();
    out.dedup();
    out
}

/// Balls of radius `t` around every word of `Σ_q^n`, stored as sorted rank
/// lists indexed by the rank of the centre.
pub struct BallTable {
    pub q: u8,
    pub n: usize,
    pub t: usize,
    pub kind: BallKind,
    offsets: Vec<usize>,
    ranks: Vec<u64>,
}

impl BallTable {
    pub fn build(q: u8, n: usize, t: usize, kind: BallKind) -> BallTable {
        let total = seq::word_count(q, n) as usize;
        let mut offsets = Vec::with_capacity(total + 1);
        let mut ranks = Vec::new();
        let mut x = vec![0u8; n];
        offsets.push(0);
        for r in 0..total {
            seq::unrank(r as u64, q, &mut x);
            for_each_ball_member(&x, q, t, kind, &mut |z| ranks.push(seq::rank(z, q)));
            offsets.push(ranks.len());
        }
        BallTable { q, n, t, kind, offsets, ranks }
    }

    pub fn ball(&self, centre: u64) -> &[u64] {
        let c = centre as usize;
        &self.ranks[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn s(q: u8, t: &str) -> Sequence {
        Sequence::parse(q, t).unwrap()
    }

    fn set(q: u8, items: &[&str]) -> SequenceSet {
        items.iter().map(|t| s(q, t)).collect()
    }

    // Oracles: repeated single edits with a set for deduplication.
    fn naive_ins(x: &[u8], q: u8, t: usize) -> BTreeSet<Vec<u8>> {
        let mut cur: BTreeSet<Vec<u8>> = [x.to_vec()].into();
        for _ in 0..t {
            let mut nxt = BTreeSet::new();
            for w in &cur {
                for i in 0..=w.len() {
                    for c in 0..q {
                        let mut v = w.clone();
                        v.insert(i, c);
                        nxt.insert(v);
                    }
                }
            }
            cur = nxt;
        }
        cur
    }

    fn naive_del(x: &[u8], t: usize) -> BTreeSet<Vec<u8>> {
        let mut cur: BTreeSet<Vec<u8>> = [x.to_vec()].into();
        for _ in 0..t {
            let mut nxt = BTreeSet::new();
            for w in &cur {
                for i in 0..w.len() {
                    let mut v = w.clone();
                    v.remove(i);
                    nxt.insert(v);
                }
            }
            cur = nxt;
        }
        cur
    }

    #[test]
    fn examples() {
        assert_eq!(deletion_ball(&s(2, "0101"), 2).unwrap(), set(2, &["00", "01", "10", "11"]));
        assert_eq!(insertion_ball(&s(2, "0"), 1), set(2, &["00", "01", "10"]));
        assert_eq!(levenshtein(&s(2, "01"), &s(2, "10")), 2);
        assert_eq!(levenshtein(&s(2, "00"), &s(2, "11")), 4);
        assert_eq!(
            ball_intersection(&s(2, "01"), &s(2, "10"), 1, BallKind::Insertion).unwrap(),
            set(2, &["010", "101"])
        );
        assert_eq!(
            ball_intersection(&s(2, "00"), &s(2, "11"), 2, BallKind::Insertion).unwrap(),
            set(2, &["0011", "0101", "0110", "1001", "1010", "1100"])
        );
        assert_eq!(leftmost_embedding(&s(2, "1101"), &s(2, "11")).unwrap(), vec![1, 2]);
        assert!(leftmost_embedding(&s(2, "1000"), &s(2, "11")).is_err());
        assert!(deletion_ball(&s(2, "01"), 3).is_err());
        assert_eq!(deletion_ball(&s(2, "01"), 2).unwrap(), set(2, &["-"]));
    }

    #[test]
    fn phi_examples() {
        let (x, y) = (s(2, "01"), s(2, "10"));
        assert_eq!(injection_phi(&x, &y, &s(2, "0"), 1).unwrap(), s(2, "101"));
        assert_eq!(injection_phi(&x, &y, &s(2, "1"), 1).unwrap(), s(2, "010"));
        assert_eq!(injection_phi(&x, &y, &s(2, "-"), 2).unwrap(), s(2, "0110"));
        assert!(injection_phi(&x, &y, &s(2, "00"), 0).is_err());
    }

    #[test]
    fn balls_match_naive_edits() {
        for q in 2..=3u8 {
            for n in 0..=5 {
                for x in Sequence::words(q, n) {
                    for t in 0..=3 {
                        let fast: Vec<Vec<u8>> = insertion_ball(&x, t).into_iter().map(|z| z.into_symbols()).collect();
                        let slow: Vec<Vec<u8>> = naive_ins(x.symbols(), q, t).into_iter().collect();
                        assert_eq!(fast, slow, "I_{t}({x})");
                        if t <= n {
                            let fast: Vec<Vec<u8>> =
                                deletion_ball(&x, t).unwrap().into_iter().map(|z| z.into_symbols()).collect();
                            let slow: Vec<Vec<u8>> = naive_del(x.symbols(), t).into_iter().collect();
                            assert_eq!(fast, slow, "D_{t}({x})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generators_emit_sorted_without_duplicates() {
        let x = s(3, "0120210");
        for kind in [BallKind::Insertion, BallKind::Deletion] {
            let r = ball_ranks(x.symbols(), 3, 2, kind);
            assert!(r.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn lcs_matches_naive() {
        // Oracle: LCS = longest common member of the deletion balls.
        for x in Sequence::words(2, 5) {
            for y in Sequence::words(2, 4) {
                let naive = (0..=4)
                    .find(|&d| {
                        let a = naive_del(x.symbols(), d + 1);
                        naive_del(y.symbols(), d).iter().any(|w| a.contains(w))
                    })
                    .map(|d| 4 - d)
                    .unwrap();
                assert_eq!(lcs_len(&x, &y), naive);
            }
        }
    }

    #[test]
    fn confusable_matches_pairwise() {
        for kind in [BallKind::Insertion, BallKind::Deletion] {
            let n = 5;
            let table = BallTable::build(2, n, 2, kind);
            for x in 0..32u64 {
                let xs = Sequence::from_rank(2, n, x);
                let fast = confusable_ranks(xs.symbols(), 2, 2, kind);
                let slow: Vec<u64> =
                    (0..32u64).filter(|&y| y != x && intersect_count(table.ball(x), table.ball(y)) > 0).collect();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn intersect_helpers() {
        let a = [1, 3, 5, 7];
        let b = [2, 3, 7, 9];
        assert_eq!(intersect_count(&a, &b), 2);
        let mut out = Vec::new();
        intersect_into(&a, &b, &mut out);
        assert_eq!(out, vec![3, 7]);
    }

    #[test]
    fn kind_parse() {
        assert_eq!("ins".parse::<BallKind>().unwrap(), BallKind::Insertion);
        assert!("x".parse::<BallKind>().is_err());
    }
}
