//! Code families built from syndromes, run limits, period restrictions and
//! a separator, plus read coverage and redundancy of explicit codes.
//!
//! A [`CodeFamilySpec`] is a conjunction of [`Constraint`]s. Filters (run
//! bound, period restriction) decide whether a word is admissible at all;
//! every other constraint maps a word to a residue or color, and a code is a
//! single class of the resulting signature.

mod separator;
mod spec;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::metric::{self, BallKind};
use crate::seq::{self, Sequence, SequenceSet};

pub use separator::{GreedySeparator, GreedySource, Separator, SeparatorSource, DEFAULT_COLOR_BUDGET};
pub use spec::{CodeFamilySpec, Constraint, Family};

/// `Σ_i i^k z_i` over 1-based positions.
pub fn vt_syndrome(z: &[i64], k: u32) -> i128 {
    z.iter().enumerate().map(|(i, &v)| (i as i128 + 1).pow(k) * v as i128).sum()
}

/// Fewest consecutive pieces whose nonzero entries share a sign.
pub fn sign_preserving_number(z: &[i64]) -> Result<usize> {
    pre(!z.is_empty(), "sign-preserving number of an empty vector")?;
    let mut pieces = 1;
    let mut sign = 0i64;
    for &v in z {
        let s = v.signum();
        if s != 0 {
            if sign != 0 && s != sign {
                pieces += 1;
            }
            sign = s;
        }
    }
    Ok(pieces)
}

/// Syndromes `VT^k` for `k = 0, 1, …`, each reduced by its modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeVector {
    pub values: Vec<u64>,
    pub moduli: Vec<u64>,
}

pub fn syndrome_vector(z: &[i64], moduli: &[u64]) -> SyndromeVector {
    let values =
        moduli.iter().enumerate().map(|(k, &m)| vt_syndrome(z, k as u32).rem_euclid(m as i128) as u64).collect();
    SyndromeVector { values, moduli: moduli.to_vec() }
}

/// Shared state for membership tests: where separators come from and how
/// many words an enumeration may visit.
#[derive(Clone)]
pub struct CodeEnv {
    pub separators: Arc<dyn SeparatorSource>,
    pub budget: u64,
}

pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

impl Default for CodeEnv {
    fn default() -> Self {
        CodeEnv { separators: Arc::new(GreedySource::default()), budget: DEFAULT_ENUM_BUDGET }
    }
}

fn expect_family(spec: &CodeFamilySpec, allowed: &[Family]) -> Result<()> {
    pre(allowed.contains(&spec.family), format!("spec family {} not in {:?}", spec.family, allowed))
}

pub fn member_n7(x: &Sequence, spec: &CodeFamilySpec) -> Result<bool> {
    expect_family(spec, &[Family::N7])?;
    spec.contains(x, &CodeEnv::default())
}

pub fn member_n3(x: &Sequence, spec: &CodeFamilySpec) -> Result<bool> {
    expect_family(spec, &[Family::N3])?;
    spec.contains(x, &CodeEnv::default())
}

pub fn member_run_bounded(x: &Sequence, spec: &CodeFamilySpec) -> Result<bool> {
    expect_family(spec, &[Family::RunBounded])?;
    spec.contains(x, &CodeEnv::default())
}

pub fn member_aux4(x: &Sequence, spec: &CodeFamilySpec) -> Result<bool> {
    expect_family(spec, &[Family::Aux4])?;
    spec.contains(x, &CodeEnv::default())
}

pub fn member_composite(x: &Sequence, spec: &CodeFamilySpec, env: &CodeEnv) -> Result<bool> {
    expect_family(spec, &[Family::N5, Family::N4, Family::N2])?;
    spec.contains(x, env)
}

/// Color of a binary word under the separator for core length `5·period`.
pub fn separator_color(row: &Sequence, period: usize, env: &CodeEnv) -> Result<u32> {
    pre(row.q() == 2, "separator colors binary rows")?;
    Ok(env.separators.separator(row.len(), 5 * period)?.color(row.symbols()))
}

fn check_budget(spec: &CodeFamilySpec, env: &CodeEnv) -> Result<u64> {
    let total = (spec.q as u64).checked_pow(spec.n as u32).unwrap_or(u64::MAX);
    if total > env.budget {
        return Err(Error::Budget {
            what: format!("enumerating {}^{}", spec.q, spec.n),
            needed: total,
            budget: env.budget,
        });
    }
    Ok(total)
}

/// All members in lexicographic order.
pub fn enumerate_code(spec: &CodeFamilySpec, env: &CodeEnv) -> Result<SequenceSet> {
    let total = check_budget(spec, env)?;
    let eval = spec.evaluator(env)?;
    let want = spec.residues();
    let mut out = Vec::new();
    let mut x = vec![0u8; spec.n];
    for r in 0..total {
        seq::unrank(r, spec.q, &mut x);
        if eval.signature(&x).as_deref() == Some(&want[..]) {
            out.push(Sequence::from_raw(spec.q, x.clone()));
        }
    }
    Ok(out.into_iter().collect())
}

/// Every admissible word grouped by signature; members are ranks in
/// increasing order.
pub fn classes(template: &CodeFamilySpec, env: &CodeEnv) -> Result<BTreeMap<Vec<u64>, Vec<u64>>> {
    let total = check_budget(template, env)?;
    let eval = template.evaluator(env)?;
    let mut out: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    let mut x = vec![0u8; template.n];
    for r in 0..total {
        seq::unrank(r, template.q, &mut x);
        if let Some(sig) = eval.signature(&x) {
            out.entry(sig).or_default().push(r);
        }
    }
    Ok(out)
}

/// The residue tuple with the largest class; ties go to the smallest tuple.
pub fn best_params(family: Family, n: usize, q: u8, env: &CodeEnv) -> Result<CodeFamilySpec> {
    let template = CodeFamilySpec::template(family, n, q)?;
    let classes = classes(&template, env)?;
    let best = classes.iter().max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(a.0)));
    match best {
        Some((sig, _)) => template.with_signature(sig),
        // No admissible word: keep the zero residues, the code is empty.
        None => Ok(template),
    }
}

/// `max_{x≠y∈C} |B_t(x) ∩ B_t(y)|`.
pub fn read_coverage(code: &SequenceSet, t: usize, kind: BallKind) -> Result<usize> {
    pre(code.len() >= 2, "coverage undefined for fewer than two codewords")?;
    let first = &code.as_slice()[0];
    let (q, n) = (first.q(), first.len());
    for x in code {
        x.same_alphabet(first)?;
        if x.len() != n {
            return Err(Error::LengthMismatch(n, x.len()));
        }
    }
    pre(kind == BallKind::Insertion || t <= n, "radius exceeds length")?;
    let ranks: Vec<u64> = code.iter().map(|x| x.rank()).collect();
    Ok(coverage_of_ranks(&ranks, q, n, t, kind).0)
}

/// Coverage of a code given by sorted member ranks, with a pair attaining it.
pub(crate) fn coverage_of_ranks(
    ranks: &[u64],
    q: u8,
    n: usize,
    t: usize,
    kind: BallKind,
) -> (usize, Option<(u64, u64)>) {
    let index: HashMap<u64, usize> = ranks.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut buf = vec![0u8; n];
    let balls: Vec<Vec<u64>> = ranks
        .iter()
        .map(|&r| {
            seq::unrank(r, q, &mut buf);
            metric::ball_ranks(&buf, q, t, kind)
        })
        .collect();
    let mut best = (0, None);
    for (i, &r) in ranks.iter().enumerate() {
        seq::unrank(r, q, &mut buf);
        for y in metric::confusable_ranks(&buf, q, t, kind) {
            if y <= r {
                continue;
            }
            if let Some(&j) = index.get(&y) {
                let c = metric::intersect_count(&balls[i], &balls[j]);
                if c > best.0 {
                    best = (c, Some((r, y)));
                }
            }
        }
    }
    best
}

/// `n·log₂ q − log₂ |C|`.
pub fn redundancy(code: &SequenceSet, n: usize, q: u8) -> Result<f64> {
    pre(!code.is_empty(), "redundancy of an empty code")?;
    Ok(redundancy_of_size(code.len() as u64, n, q))
}

pub fn redundancy_of_size(size: u64, n: usize, q: u8) -> f64 {
    n as f64 * (q as f64).log2() - (size as f64).log2()
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `≥ m`.
pub fn prime_at_least(m: u64) -> u64 {
    (m.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}
