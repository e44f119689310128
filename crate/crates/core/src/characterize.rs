//! Structure of pairs whose insertion balls meet.
//!
//! For a pair stripped to its differing cores `x̃, ỹ ∈ Σ_q^m` (first and last
//! symbols differ), every common double supersequence is obtained by placing
//! two symbols into `x̃` and two into `ỹ` at complementary positions. The six
//! placements with disjoint position pairs are the slots of an
//! [`IntersectionProfile`]; each holds at most one word.

use serde::Serialize;

use crate::error::{pre, Error, Result};
use crate::metric::{self, BallKind};
use crate::seq::{self, interval, le_periodic, Sequence, SequenceSet};

/// Words of length `m+2` that equal `x` after removing positions `l < k`.
pub fn positions_variant(x: &Sequence, l: usize, k: usize) -> Result<SequenceSet> {
    let m = x.len();
    pre(1 <= l && l < k && k <= m + 2, format!("need 1 <= l < k <= {}", m + 2))?;
    let q = x.q();
    let mut out = Vec::with_capacity((q as usize).pow(2));
    for a in 0..q {
        for b in 0..q {
            let mut z = x.symbols().to_vec();
            z.insert(l - 1, a);
            z.insert(k - 1, b);
            out.push(Sequence::from_raw(q, z));
        }
    }
    Ok(out.into_iter().collect())
}

/// Position pairs `(x̃ placement, ỹ placement)` of slot `i ∈ 1..=6`.
pub fn slot_positions(slot: usize, l: usize, k: usize, m: usize) -> ((usize, usize), (usize, usize)) {
    let e = m + 2;
    match slot {
        1 => ((l, k), (1, e)),
        2 => ((l, e), (1, k)),
        3 => ((k, e), (1, l)),
        4 => ((1, e), (l, k)),
        5 => ((1, k), (l, e)),
        6 => ((1, l), (k, e)),
        _ => panic!("slot {slot} out of range"),
    }
}

/// The unique word in `x(px) ∩ y(py)` for disjoint position pairs, if any.
fn variant_meet(x: &[u8], y: &[u8], px: (usize, usize), py: (usize, usize)) -> Option<Vec<u8>> {
    let len = x.len() + 2;
    let mut z = Vec::with_capacity(len);
    let (mut i, mut j) = (0, 0);
    for p in 1..=len {
        let from_x = if p == px.0 || p == px.1 {
            None
        } else {
            i += 1;
            Some(x[i - 1])
        };
        let from_y = if p == py.0 || p == py.1 {
            None
        } else {
            j += 1;
            Some(y[j - 1])
        };
        match (from_x, from_y) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => z.push(a),
            (None, None) => unreachable!("position pairs overlap"),
        }
    }
    Some(z)
}

/// Table of equalities between intervals of `x̃` and `ỹ` that is equivalent
/// to slot `i` being occupied at `(l, k)`. Intervals are 1-based inclusive.
pub fn table_conditions(slot: usize, l: usize, k: usize, m: usize) -> [((usize, usize), (usize, usize)); 3] {
    // Shapes: shift left, aligned, shift right or the mirrored forms.
    let (head_x, head_y) = if slot <= 3 { ((2, l - 1), (1, l - 2)) } else { ((1, l - 2), (2, l - 1)) };
    let mid = match slot {
        3 => ((l + 1, k - 1), (l - 1, k - 3)),
        6 => ((l - 1, k - 3), (l + 1, k - 1)),
        _ => ((l, k - 2), (l, k - 2)),
    };
    let tail = match slot {
        1 | 5 | 6 => ((k - 1, m - 1), (k, m)),
        _ => ((k, m), (k - 1, m - 1)),
    };
    [(head_x, head_y), mid, tail]
}

/// Evaluates [`table_conditions`] on a stripped pair.
pub fn table_row_holds(xc: &Sequence, yc: &Sequence, slot: usize, l: usize, k: usize) -> bool {
    let m = xc.len();
    table_conditions(slot, l, k, m).iter().all(|&((a, b), (c, d))| {
        let xs = interval(xc.symbols(), a, b);
        let ys = interval(yc.symbols(), c, d);
        xs == ys
    })
}

/// Contents of one slot across all `(l, k)` with `1 < l < k < m+2`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Slot {
    /// Distinct words found in the slot.
    pub members: Vec<Sequence>,
    /// Lexicographically smallest `(l, k)` realising a member.
    pub witness: Option<(usize, usize)>,
}

/// Per-slot occupancy for a stripped pair.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionProfile {
    pub x_core: Sequence,
    pub y_core: Sequence,
    pub slots: [Slot; 6],
}

impl IntersectionProfile {
    pub fn occupied(&self, slot: usize) -> bool {
        !self.slots[slot - 1].members.is_empty()
    }

    pub fn size(&self, slot: usize) -> usize {
        self.slots[slot - 1].members.len()
    }

    pub fn total(&self) -> usize {
        self.slots.iter().map(|s| s.members.len()).sum()
    }

    /// Union of all slots, as words of length `m+2`.
    pub fn union(&self) -> SequenceSet {
        self.slots.iter().flat_map(|s| s.members.iter().cloned()).collect()
    }

    /// Number of occupied slots among `1, 2, 4, 5`.
    pub fn outer_count(&self) -> usize {
        [1, 2, 4, 5].iter().map(|&i| self.size(i)).sum()
    }
}

/// Builds the slot profile of a pair with `d_L(x, y) ≥ 4` after stripping
/// the common prefix and suffix.
pub fn classify_pair(x: &Sequence, y: &Sequence) -> Result<IntersectionProfile> {
    x.same_alphabet(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    pre(metric::levenshtein(x, y) >= 4, "pair must be at distance >= 4")?;
    let d = seq::decompose_pair(x, y)?;
    Ok(profile_of_cores(d.x_core, d.y_core))
}

pub(crate) fn profile_of_cores(x_core: Sequence, y_core: Sequence) -> IntersectionProfile {
    let q = x_core.q();
    let m = x_core.len();
    let mut slots: [Slot; 6] = Default::default();
    for l in 2..=m {
        for k in l + 1..=m + 1 {
            for (i, slot) in slots.iter_mut().enumerate() {
                let (px, py) = slot_positions(i + 1, l, k, m);
                if let Some(z) = variant_meet(x_core.symbols(), y_core.symbols(), px, py) {
                    let z = Sequence::from_raw(q, z);
                    if !slot.members.contains(&z) {
                        slot.members.push(z);
                    }
                    slot.witness.get_or_insert((l, k));
                }
            }
        }
    }
    for s in &mut slots {
        s.members.sort();
    }
    IntersectionProfile { x_core, y_core, slots }
}

/// `I_1(x) ∩ I_1(y)` for distinct equal-length words, with the closed forms
/// of its two members when it has two.
#[derive(Clone, Debug, Serialize)]
pub struct SingleInsertion {
    pub common: SequenceSet,
    /// First and last differing positions (1-based).
    pub first_diff: usize,
    pub last_diff: usize,
    /// `x[1,ℓ-1]·y_ℓ·x[ℓ,n]` and `x[1,k]·y_k·x[k+1,n]`, present when
    /// `common` has two members.
    pub closed_forms: Option<[Sequence; 2]>,
}

pub fn single_ins_witnesses(x: &Sequence, y: &Sequence) -> Result<SingleInsertion> {
    pre(x != y, "words must differ")?;
    let common = metric::ball_intersection(x, y, 1, BallKind::Insertion)?;
    let n = x.len();
    let diff: Vec<usize> = (1..=n).filter(|&i| x.at(i) != y.at(i)).collect();
    let (l, k) = (diff[0], *diff.last().unwrap());
    let closed_forms = (common.len() == 2).then(|| {
        let yl = Sequence::from_raw(x.q(), vec![y.at(l)]);
        let yk = Sequence::from_raw(x.q(), vec![y.at(k)]);
        [x.slice(1, l - 1).concat(&yl).concat(&x.slice(l, n)), x.slice(1, k).concat(&yk).concat(&x.slice(k + 1, n))]
    });
    Ok(SingleInsertion { common, first_diff: l, last_diff: k, closed_forms })
}

/// The mirrored closed forms `y[1,k]·x_k·y[k+1,n]` and `y[1,ℓ-1]·x_ℓ·y[ℓ,n]`.
pub fn single_ins_closed_forms_from_y(x: &Sequence, y: &Sequence, l: usize, k: usize) -> [Sequence; 2] {
    let n = x.len();
    let xk = Sequence::from_raw(x.q(), vec![x.at(k)]);
    let xl = Sequence::from_raw(x.q(), vec![x.at(l)]);
    [y.slice(1, k).concat(&xk).concat(&y.slice(k + 1, n)), y.slice(1, l - 1).concat(&xl).concat(&y.slice(l, n))]
}

/// Shape of a stripped pair whose single insertion balls share one word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CharCase {
    /// `{ac, cd}` with `a, c, d` pairwise distinct.
    Short { a: u8, c: u8, d: u8, ac_is_x: bool },
    /// `{acwb, cwbd}` with `a ≠ c`, `b ≠ d`, `acw ≠ wbd`.
    Long { a: u8, b: u8, c: u8, d: u8, w: Sequence, acwb_is_x: bool },
}

/// Matches the two shapes above on stripped cores, trying both orders.
pub fn match_char_lemma(xc: &Sequence, yc: &Sequence) -> Option<CharCase> {
    if xc.len() != yc.len() || xc.len() < 2 {
        return None;
    }
    char_one_way(xc.symbols(), yc.symbols(), xc.q(), true)
        .or_else(|| char_one_way(yc.symbols(), xc.symbols(), xc.q(), false))
}

fn char_one_way(u: &[u8], v: &[u8], q: u8, u_is_x: bool) -> Option<CharCase> {
    let m = u.len();
    if u[1..] != v[..m - 1] {
        return None;
    }
    if m == 2 {
        let (a, c, d) = (u[0], u[1], v[1]);
        return (a != c && c != d && a != d).then_some(CharCase::Short { a, c, d, ac_is_x: u_is_x });
    }
    let (a, c, b, d) = (u[0], u[1], u[m - 1], v[m - 1]);
    let acw = &u[..m - 1];
    let wbd = &v[1..];
    (a != c && b != d && acw != wbd).then(|| CharCase::Long {
        a,
        b,
        c,
        d,
        w: Sequence::from_raw(q, u[2..m - 1].to_vec()),
        acwb_is_x: u_is_x,
    })
}

/// `x̃ = α_t(aa')·w·α_s(bb')`, `ỹ = α_t(a'a)·w·α_s(b'b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingSplit {
    pub a: u8,
    pub a_prime: u8,
    pub b: u8,
    pub b_prime: u8,
    pub t: usize,
    pub s: usize,
    pub w: Sequence,
}

/// Searches prefix length `t` then suffix length `s` (both ascending) for a
/// split into swapped alternating blocks around a shared middle.
pub fn match_claim14(xc: &Sequence, yc: &Sequence) -> Option<AlternatingSplit> {
    let (x, y) = (xc.symbols(), yc.symbols());
    let m = x.len();
    if y.len() != m || m < 2 || x[0] == y[0] {
        return None;
    }
    let (a, ap) = (x[0], y[0]);
    let swapped = |u: &[u8], v: &[u8], p: u8, r: u8| {
        u.iter().zip(v).enumerate().all(|(i, (&c, &d))| {
            let (e, f) = if i % 2 == 0 { (p, r) } else { (r, p) };
            c == e && d == f
        })
    };
    for t in 1..m {
        if !swapped(&x[..t], &y[..t], a, ap) {
            break;
        }
        for s in 1..=m - t {
            let (b, bp) = (x[m - s], y[m - s]);
            if b == bp || !swapped(&x[m - s..], &y[m - s..], b, bp) {
                continue;
            }
            if x[t..m - s] == y[t..m - s] {
                return Some(AlternatingSplit {
                    a,
                    a_prime: ap,
                    b,
                    b_prime: bp,
                    t,
                    s,
                    w: Sequence::from_raw(xc.q(), x[t..m - s].to_vec()),
                });
            }
        }
    }
    None
}

/// Cuts `1 = i_0 ≤ … ≤ i_j = n` (1-based) with `j ≤ k` such that every
/// segment `x[i_{r-1}, i_r]` has a period `≤ t`. Consecutive segments share
/// their boundary position. Returns the shortest cut list found, or `None`.
pub fn periodic_decomposition(x: &Sequence, t: usize, k: usize) -> Result<Option<Vec<usize>>> {
    pre(t >= 1 && k >= 1, "need t >= 1 and k >= 1")?;
    Ok(decompose_periodic(x.symbols(), t, k))
}

pub fn periodic_decomposition_exists(x: &Sequence, t: usize, k: usize) -> Result<bool> {
    Ok(periodic_decomposition(x, t, k)?.is_some())
}

pub(crate) fn decompose_periodic(s: &[u8], t: usize, k: usize) -> Option<Vec<usize>> {
    let n = s.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return Some(vec![1, 1]);
    }
    // best[e] = fewest segments covering positions 1..=e with a cut at e.
    let mut best = vec![usize::MAX; n + 1];
    let mut from = vec![0usize; n + 1];
    best[1] = 0;
    for e in 2..=n {
        for st in 1..e {
            if best[st] != usize::MAX && best[st] + 1 < best[e] && le_periodic(&s[st - 1..e], t) {
                best[e] = best[st] + 1;
                from[e] = st;
            }
        }
    }
    if best[n] > k {
        return None;
    }
    let mut cuts = vec![n];
    let mut e = n;
    while e != 1 {
        e = from[e];
        cuts.push(e);
    }
    cuts.reverse();
    Some(cuts)
}

/// Which alternative of the structural statement was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Some slot among 1, 2, 4, 5 is occupied.
    OuterSlot,
    /// The cores split into swapped alternating blocks.
    Alternating,
    /// `x̃` splits into at most five segments of period at most 4.
    Periodic,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationVerdict {
    pub intersection: usize,
    pub triggered: bool,
    pub branch: Option<Branch>,
}

impl CharacterizationVerdict {
    pub fn holds(&self) -> bool {
        !self.triggered || self.branch.is_some()
    }
}

/// Evaluates the structural statement for threshold `N ∈ 2..=5` on a pair at
/// distance at least 4.
pub fn check_characterization(x: &Sequence, y: &Sequence, n_reads: usize) -> Result<CharacterizationVerdict> {
    pre((2..=5).contains(&n_reads), "threshold must be in 2..=5")?;
    let profile = classify_pair(x, y)?;
    let size = metric::ball_intersection(&profile.x_core, &profile.y_core, 2, BallKind::Insertion)?.len();
    Ok(characterization_on(&profile, size, n_reads))
}

pub(crate) fn characterization_on(p: &IntersectionProfile, size: usize, n_reads: usize) -> CharacterizationVerdict {
    let triggered = size >= n_reads;
    let outer = || (p.outer_count() >= 1).then_some(Branch::OuterSlot);
    let periodic = || decompose_periodic(p.x_core.symbols(), 4, 5).map(|_| Branch::Periodic);
    let alternating = || match_claim14(&p.x_core, &p.y_core).map(|_| Branch::Alternating);
    let branch = if !triggered {
        None
    } else {
        match n_reads {
            2 => outer().or_else(periodic),
            3 => outer(),
            4 => alternating().or_else(periodic),
            _ => periodic(),
        }
    };
    CharacterizationVerdict { intersection: size, triggered, branch }
}

/// Whether the tighter single-common-supersequence bound applies: the cores
/// have the `acwb / cwbd` shape and `I_1(acw) ∩ I_1(wbd) = ∅`.
pub fn ins_case_prime_applies(x: &Sequence, y: &Sequence) -> Result<bool> {
    let d = seq::decompose_pair(x, y)?;
    match match_char_lemma(&d.x_core, &d.y_core) {
        Some(CharCase::Long { acwb_is_x, .. }) => {
            let (u, v) = if acwb_is_x { (&d.x_core, &d.y_core) } else { (&d.y_core, &d.x_core) };
            let m = u.len();
            let acw = &u.symbols()[..m - 1];
            let wbd = &v.symbols()[1..];
            let a = metric::ball_ranks(acw, x.q(), 1, BallKind::Insertion);
            let b = metric::ball_ranks(wbd, x.q(), 1, BallKind::Insertion);
            Ok(metric::intersect_count(&a, &b) == 0)
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u8, t: &str) -> Sequence {
        Sequence::parse(q, t).unwrap()
    }

    #[test]
    fn variant_example() {
        let v = positions_variant(&s(2, "0"), 1, 3).unwrap();
        let want: SequenceSet = ["000", "001", "100", "101"].iter().map(|t| s(2, t)).collect();
        assert_eq!(v, want);
        assert!(positions_variant(&s(2, "0"), 2, 2).is_err());
        assert!(positions_variant(&s(2, "0"), 1, 4).is_err());
    }

    #[test]
    fn profile_all_slots_for_complements() {
        let p = classify_pair(&s(2, "00"), &s(2, "11")).unwrap();
        assert_eq!(p.total(), 6);
        assert!((1..=6).all(|i| p.size(i) == 1));
        assert!(classify_pair(&s(2, "01"), &s(2, "10")).is_err());
    }

    #[test]
    fn profile_matches_brute_force_meet() {
        // Oracle: enumerate both variant sets and intersect.
        for xc in Sequence::words(2, 4) {
            for yc in Sequence::words(2, 4) {
                if xc.at(1) == yc.at(1) || xc.at(4) == yc.at(4) || metric::levenshtein(&xc, &yc) < 4 {
                    continue;
                }
                let p = profile_of_cores(xc.clone(), yc.clone());
                let m = 4;
                for slot in 1..=6 {
                    let mut found = Vec::new();
                    for l in 2..=m {
                        for k in l + 1..=m + 1 {
                            let (px, py) = slot_positions(slot, l, k, m);
                            let a = positions_variant(&xc, px.0, px.1).unwrap();
                            let b = positions_variant(&yc, py.0, py.1).unwrap();
                            found.extend(a.intersection(&b));
                            let occupied = !a.intersection(&b).is_empty();
                            assert_eq!(occupied, table_row_holds(&xc, &yc, slot, l, k), "{xc} {yc} A{slot} {l} {k}");
                        }
                    }
                    let found: SequenceSet = found.into_iter().collect();
                    assert_eq!(found.as_slice(), p.slots[slot - 1].members.as_slice());
                }
            }
        }
    }

    #[test]
    fn single_insertion_examples() {
        let w = single_ins_witnesses(&s(2, "00"), &s(2, "01")).unwrap();
        assert_eq!((w.first_diff, w.last_diff), (2, 2));
        let [z, zp] = w.closed_forms.clone().unwrap();
        assert_eq!(z, s(2, "010"));
        assert_eq!(zp, s(2, "001"));
        assert!(w.common.contains(&z) && w.common.contains(&zp));
        let w = single_ins_witnesses(&s(3, "01"), &s(3, "12")).unwrap();
        assert_eq!(w.common.as_slice(), &[s(3, "012")]);
        assert!(w.closed_forms.is_none());
        assert!(single_ins_witnesses(&s(2, "0"), &s(2, "0")).is_err());
    }

    #[test]
    fn char_examples() {
        assert_eq!(
            match_char_lemma(&s(3, "01"), &s(3, "12")),
            Some(CharCase::Short { a: 0, c: 1, d: 2, ac_is_x: true })
        );
        assert!(matches!(match_char_lemma(&s(3, "12"), &s(3, "01")), Some(CharCase::Short { ac_is_x: false, .. })));
        assert!(match_char_lemma(&s(2, "01"), &s(2, "10")).is_none());
        match match_char_lemma(&s(2, "0110"), &s(2, "1101")) {
            Some(CharCase::Long { a: 0, c: 1, b: 0, d: 1, w, acwb_is_x: true }) => assert_eq!(w, s(2, "1")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn claim14_examples() {
        let w = match_claim14(&s(2, "01"), &s(2, "10")).unwrap();
        assert_eq!((w.t, w.s, w.a, w.a_prime, w.b, w.b_prime), (1, 1, 0, 1, 1, 0));
        let w = match_claim14(&s(2, "0110"), &s(2, "1001")).unwrap();
        assert_eq!((w.t, w.s, w.a, w.a_prime, w.b, w.b_prime), (2, 2, 0, 1, 1, 0));
        assert!(w.w.is_empty());
        let w = match_claim14(&s(3, "0221"), &s(3, "1220")).unwrap();
        assert_eq!((w.t, w.s), (1, 1));
        assert_eq!(w.w, s(3, "22"));
        assert!(match_claim14(&s(2, "0011"), &s(2, "1011")).is_none());
    }

    fn brute_decomposes(x: &[u8], t: usize, k: usize) -> bool {
        // Oracle: every non-decreasing cut tuple 1 = i_0 ≤ … ≤ i_k = n.
        let n = x.len();
        fn rec(x: &[u8], t: usize, start: usize, left: usize) -> bool {
            let n = x.len();
            if left == 0 {
                return start == n;
            }
            (start..=n).any(|e| le_periodic(&x[start - 1..e], t) && rec(x, t, e, left - 1))
        }
        n <= 1 || rec(x, t, 1, k)
    }

    #[test]
    fn decomposition_matches_cut_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..=24);
            let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            for (t, k) in [(1, 3), (2, 3), (4, 5), (3, 2)] {
                let fast = decompose_periodic(&x, t, k);
                assert_eq!(fast.is_some(), brute_decomposes(&x, t, k), "{x:?} {t} {k}");
                if let Some(c) = fast.filter(|_| n > 0) {
                    assert_eq!(c[0], 1);
                    assert_eq!(*c.last().unwrap(), n);
                    assert!(c.len() - 1 <= k);
                    assert!(c.windows(2).all(|w| le_periodic(&x[w[0] - 1..w[1]], t)));
                }
            }
        }
        assert!(periodic_decomposition_exists(&s(2, "0001011101000101"), 4, 5).unwrap());
        assert!(periodic_decomposition(&s(2, "01"), 0, 1).is_err());
    }

    #[test]
    fn short_words_always_decompose() {
        for x in Sequence::words(2, 16).step_by(97) {
            assert!(periodic_decomposition_exists(&x, 4, 5).unwrap());
        }
    }

    #[test]
    fn characterization_example() {
        let v = check_characterization(&s(2, "00"), &s(2, "11"), 5).unwrap();
        assert_eq!(v.intersection, 6);
        assert_eq!(v.branch, Some(Branch::Periodic));
        let v = check_characterization(&s(2, "00"), &s(2, "11"), 3).unwrap();
        assert_eq!(v.branch, Some(Branch::OuterSlot));
        assert!(check_characterization(&s(2, "00"), &s(2, "11"), 6).is_err());
    }
}
