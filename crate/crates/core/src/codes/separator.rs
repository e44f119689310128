//! Colorings of binary words that split apart every pair able to share a
//! double supersequence within a bounded core.
//!
//! The default [`GreedySeparator`] colors `Σ_2^n` in lexicographic order,
//! giving each word the smallest color unused by its earlier neighbours. Two
//! words are neighbours when they differ, their differing core (after
//! stripping the common prefix and suffix) has length at most `span`, and
//! their double insertion balls meet.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{pre, Error, Result};
use crate::metric::{confusable_ranks, BallKind};
use crate::seq::{self, common_affixes};

/// Colors assigned to binary words of one length.
pub trait Separator: Send + Sync {
    fn n(&self) -> usize;
    fn span(&self) -> usize;
    /// Color of a binary word of length [`Separator::n`].
    fn color(&self, row: &[u8]) -> u32;
    /// Number of distinct colors in use.
    fn colors_used(&self) -> u32;
}

/// Hands out separators by `(n, span)`.
pub trait SeparatorSource: Send + Sync {
    fn separator(&self, n: usize, span: usize) -> Result<Arc<dyn Separator>>;
}

pub const DEFAULT_COLOR_BUDGET: u32 = 1 << 12;

pub struct GreedySeparator {
    n: usize,
    span: usize,
    colors: Vec<u32>,
    used: u32,
}

impl GreedySeparator {
    pub fn build(n: usize, span: usize, budget: u32) -> Result<GreedySeparator> {
        pre(n <= 24, "separator length limited to 24")?;
        let total = seq::word_count(2, n) as usize;
        let mut colors = vec![u32::MAX; total];
        let mut used = 0u32;
        let mut x = vec![0u8; n];
        let mut y = vec![0u8; n];
        let mut taken: Vec<bool> = Vec::new();
        for r in 0..total {
            seq::unrank(r as u64, 2, &mut x);
            taken.clear();
            taken.resize(used as usize + 1, false);
            for nb in confusable_ranks(&x, 2, 2, BallKind::Insertion) {
                if nb as usize >= r {
                    break;
                }
                seq::unrank(nb, 2, &mut y);
                let (p, s) = common_affixes(&x, &y);
                if n - p - s <= span {
                    taken[colors[nb as usize] as usize] = true;
                }
            }
            let c = taken.iter().position(|&t| !t).unwrap() as u32;
            if c >= budget {
                return Err(Error::ColorBudget { needed: c as u64 + 1, budget: budget as u64 });
            }
            colors[r] = c;
            used = used.max(c + 1);
        }
        Ok(GreedySeparator { n, span, colors, used })
    }
}

impl Separator for GreedySeparator {
    fn n(&self) -> usize {
        self.n
    }

    fn span(&self) -> usize {
        self.span
    }

    fn color(&self, row: &[u8]) -> u32 {
        debug_assert_eq!(row.len(), self.n);
        self.colors[seq::rank(row, 2) as usize]
    }

    fn colors_used(&self) -> u32 {
        self.used
    }
}

/// Builds greedy separators on demand and keeps them.
pub struct GreedySource {
    budget: u32,
    cache: Mutex<HashMap<(usize, usize), Arc<GreedySeparator>>>,
}

impl GreedySource {
    pub fn new(budget: u32) -> Self {
        GreedySource { budget, cache: Mutex::new(HashMap::new()) }
    }
}

impl Default for GreedySource {
    fn default() -> Self {
        Self::new(DEFAULT_COLOR_BUDGET)
    }
}

impl SeparatorSource for GreedySource {
    fn separator(&self, n: usize, span: usize) -> Result<Arc<dyn Separator>> {
        // A span past n behaves like n.
        let key = (n, span.min(n));
        if let Some(s) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let built = Arc::new(GreedySeparator::build(n, key.1, self.budget)?);
        self.cache.lock().unwrap().insert(key, built.clone());
        Ok(built)
    }
}
