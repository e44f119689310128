//! Largest code whose pairwise ball intersections stay below `N`, by exact
//! maximum independent set on the confusability graph.

use serde::Serialize;

use super::{word, Counter};
use crate::codes::redundancy_of_size;
use crate::error::{pre, Error, Result};
use crate::metric::BallKind;
use crate::seq::{word_count, Sequence, SequenceSet};

#[derive(Clone, Debug, Serialize)]
pub struct RhoSearch {
    pub max_size: u64,
    pub redundancy: f64,
    pub witness: SequenceSet,
}

/// Vertex limit for the exact search.
pub const RHO_VERTEX_LIMIT: u64 = 1 << 12;

type Bits = Vec<u64>;

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn unset(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &v) in b.iter().enumerate() {
        let mut v = v;
        while v != 0 {
            out.push(w * 64 + v.trailing_zeros() as usize);
            v &= v - 1;
        }
    }
    out
}

/// Maximum clique in `adj` by branch and bound with a greedy coloring bound.
struct Clique<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Clique<'_> {
    fn expand(&mut self, mut cand: Bits) {
        // Color classes: each is independent in adj, so a clique takes at
        // most one vertex per class.
        let mut order = Vec::new();
        let mut rest = cand.clone();
        let mut color = 0;
        while rest.iter().any(|&w| w != 0) {
            color += 1;
            let mut avail = rest.clone();
            while let Some(v) = members(&avail).first().copied() {
                unset(&mut rest, v);
                unset(&mut avail, v);
                for (a, n) in avail.iter_mut().zip(&self.adj[v]) {
                    *a &= !n;
                }
                order.push((v, color));
            }
        }
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Bits = cand.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            unset(&mut cand, v);
        }
    }
}

/// Largest `C ⊆ Σ_q^n` with `|B_t(x) ∩ B_t(y)| < n_reads` for all `x ≠ y ∈ C`.
pub fn min_redundancy_search(
    n: usize,
    q: u8,
    n_reads: usize,
    t: usize,
    kind: BallKind,
    budget: u64,
) -> Result<RhoSearch> {
    crate::seq::check_q(q)?;
    pre(n_reads >= 1, "need N >= 1")?;
    pre(kind == BallKind::Insertion || t <= n, "radius exceeds length")?;
    let total = word_count(q, n);
    let limit = budget.min(RHO_VERTEX_LIMIT);
    if total > limit {
        return Err(Error::Budget { what: format!("confusability graph over {q}^{n}"), needed: total, budget: limit });
    }
    let v = total as usize;
    let words = v.div_ceil(64);
    // Complement of the confusability graph: an edge means compatible.
    let mut adj: Vec<Bits> = vec![vec![0; words]; v];
    let mut counter = Counter::new(total);
    for (x, row) in adj.iter_mut().enumerate() {
        counter.fill(&word(q, n, x as u64), q, t, kind);
        for y in 0..v {
            if y != x && (counter.get(y as u64) as usize) < n_reads {
                set(row, y);
            }
        }
    }
    let mut all = vec![0u64; words];
    for i in 0..v {
        set(&mut all, i);
    }
    let mut search = Clique { adj: &adj, best: Vec::new(), current: Vec::new() };
    search.expand(all);
    let mut best = search.best;
    best.sort_unstable();
    debug_assert!(best.iter().all(|&a| best.iter().all(|&b| a == b || has(&adj[a], b))));
    let witness: SequenceSet = best.iter().map(|&r| Sequence::from_rank(q, n, r as u64)).collect();
    let size = best.len() as u64;
    Ok(RhoSearch { max_size: size, redundancy: redundancy_of_size(size, n, q), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{ball_ranks, intersect_count};

    /// Largest valid subset by trying every subset.
    fn brute(n: usize, q: u8, n_reads: usize, t: usize, kind: BallKind) -> u64 {
        let total = word_count(q, n) as usize;
        let balls: Vec<Vec<u64>> = (0..total).map(|r| ball_ranks(&word(q, n, r as u64), q, t, kind)).collect();
        let mut best = 0;
        for mask in 0u32..1 << total {
            let pick: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 1).collect();
            if pick.len() as u64 <= best {
                continue;
            }
            let ok = pick
                .iter()
                .enumerate()
                .all(|(i, &a)| pick[i + 1..].iter().all(|&b| intersect_count(&balls[a], &balls[b]) < n_reads));
            if ok {
                best = pick.len() as u64;
            }
        }
        best
    }

    #[test]
    fn single_deletion_n4_matches_subset_search() {
        let r = min_redundancy_search(4, 2, 1, 1, BallKind::Deletion, 1 << 10).unwrap();
        assert_eq!(r.max_size, 4);
        assert_eq!(r.max_size, brute(4, 2, 1, 1, BallKind::Deletion));
        assert_eq!(r.witness.len(), 4);
    }

    #[test]
    fn small_cases_match_subset_search() {
        for (n, q, nr, t, kind) in
            [(3, 2, 1, 1, BallKind::Insertion), (3, 2, 2, 1, BallKind::Insertion), (2, 3, 1, 1, BallKind::Deletion)]
        {
            let r = min_redundancy_search(n, q, nr, t, kind, 1 << 10).unwrap();
            assert_eq!(r.max_size, brute(n, q, nr, t, kind), "n={n} q={q} N={nr}");
        }
    }

    #[test]
    fn unreachable_threshold_gives_whole_space() {
        let r = min_redundancy_search(3, 2, 1 + 11, 2, BallKind::Insertion, 1 << 10).unwrap();
        assert_eq!(r.max_size, 8);
        assert_eq!(r.redundancy, 0.0);
    }

    #[test]
    fn monotone_in_threshold() {
        let sizes: Vec<u64> = (1..=4)
            .map(|nr| min_redundancy_search(4, 2, nr, 1, BallKind::Insertion, 1 << 10).unwrap().max_size)
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
    }

    #[test]
    fn single_deletion_n5_and_n6() {
        let sizes: Vec<u64> = [5, 6]
            .iter()
            .map(|&n| min_redundancy_search(n, 2, 1, 1, BallKind::Deletion, 1 << 10).unwrap().max_size)
            .collect();
        assert_eq!(sizes, vec![6, 10]);
    }

    #[test]
    fn over_budget() {
        assert!(matches!(min_redundancy_search(13, 2, 1, 1, BallKind::Deletion, 1 << 20), Err(Error::Budget { .. })));
    }
}
