//! Sweeps over stripped pairs: slot profiles, the interval table and the
//! structural statement for 2 to 5 common double supersequences.

use rand::Rng;

use super::{rng_for, word, Counter, SweepConfig, Tally, Witness};
use crate::characterize::{
    characterization_on, classify_pair, match_claim14, profile_of_cores, slot_positions, table_row_holds, Branch,
    IntersectionProfile,
};
use crate::error::{Error, Result};
use crate::metric::{indel, intersect_into, lcs, BallKind, BallTable};
use crate::seq::{word_count, Sequence};

/// Calls `f(x̃, ỹ, |I_2(x̃) ∩ I_2(ỹ)| as ranks)` for every ordered pair of
/// cores of length `m` with differing end symbols at distance at least 4.
fn for_each_core_pair(
    cfg: &SweepConfig,
    tally: &mut Tally,
    mut f: impl FnMut(&[u8], &[u8], &[u64], &mut Tally),
) -> Result<()> {
    for &q in &cfg.q {
        for m in cfg.n_min.max(2)..=cfg.n_max {
            let total = word_count(q, m);
            if total > cfg.budget {
                return Err(Error::Budget {
                    what: format!("core pairs over {q}^{m}"),
                    needed: total,
                    budget: cfg.budget,
                });
            }
            tally.mark(true);
            let table = BallTable::build(q, m, 2, BallKind::Insertion);
            let words: Vec<Vec<u8>> = (0..total).map(|r| word(q, m, r)).collect();
            let mut common = Vec::new();
            for (xr, x) in words.iter().enumerate() {
                for (yr, y) in words.iter().enumerate() {
                    if x[0] == y[0] || x[m - 1] == y[m - 1] || lcs(x, y) + 2 > m {
                        continue;
                    }
                    intersect_into(table.ball(xr as u64), table.ball(yr as u64), &mut common);
                    f(x, y, &common, tally);
                    if tally.done() {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn profile(q: u8, x: &[u8], y: &[u8]) -> IntersectionProfile {
    profile_of_cores(Sequence::from_raw(q, x.to_vec()), Sequence::from_raw(q, y.to_vec()))
}

pub(super) fn classify(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        let sub = SweepConfig { q: vec![q], ..cfg.clone() };
        for_each_core_pair(&sub, tally, |x, y, common, tally| {
            let p = profile(q, x, y);
            let m = x.len();
            let union: Vec<u64> = p.union().iter().map(|s| s.rank()).collect();
            let each_small = (1..=6).all(|i| p.size(i) <= 1);
            let boundary = common.iter().all(|&r| {
                let z = word(q, m + 2, r);
                (z[0] == x[0] || z[0] == y[0]) && (z[m + 1] == x[m - 1] || z[m + 1] == y[m - 1])
            });
            let ok = union == common && each_small && p.total() == common.len() && p.total() <= 6 && boundary;
            tally.check(ok, || {
                Witness::new(
                    q,
                    &[x, y],
                    format!(
                        "m={m}: slots={:?} brute force={} boundary_ok={boundary}",
                        (1..=6).map(|i| p.size(i)).collect::<Vec<_>>(),
                        common.len()
                    ),
                )
            });
            tally.extremal(common.len() as i128, || {
                Witness::new(q, &[x, y], format!("m={m}: |I_2∩I_2|={}", common.len()))
            });
        })?;
        if tally.done() {
            break;
        }
    }
    Ok(())
}

/// Whether some fill of `x̃` at `px` becomes `ỹ` after deleting `py`.
fn slot_nonempty_by_fill(q: u8, x: &[u8], y: &[u8], px: (usize, usize), py: (usize, usize)) -> bool {
    let len = x.len() + 2;
    (0..q).any(|a| {
        (0..q).any(|b| {
            let mut z = x.to_vec();
            z.insert(px.0 - 1, a);
            z.insert(px.1 - 1, b);
            let rest: Vec<u8> = (1..=len).filter(|&p| p != py.0 && p != py.1).map(|p| z[p - 1]).collect();
            rest == y
        })
    })
}

pub(super) fn table1(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        let sub = SweepConfig { q: vec![q], ..cfg.clone() };
        for_each_core_pair(&sub, tally, |x, y, _, tally| {
            let m = x.len();
            let (xs, ys) = (Sequence::from_raw(q, x.to_vec()), Sequence::from_raw(q, y.to_vec()));
            for slot in 1..=6 {
                for l in 2..=m {
                    for k in l + 1..=m + 1 {
                        let (px, py) = slot_positions(slot, l, k, m);
                        let fill = slot_nonempty_by_fill(q, x, y, px, py);
                        let row = table_row_holds(&xs, &ys, slot, l, k);
                        tally.check(fill == row, || {
                            Witness::new(q, &[x, y], format!("m={m} slot={slot} l={l} k={k}: fill={fill} row={row}"))
                        });
                    }
                }
            }
            let p = profile_of_cores(xs.clone(), ys.clone());
            for (i, s) in p.slots.iter().enumerate() {
                if let Some((l, k)) = s.witness {
                    tally.check(table_row_holds(&xs, &ys, i + 1, l, k), || {
                        Witness::new(q, &[x, y], format!("m={m} slot={}: witness row ({l},{k}) fails", i + 1))
                    });
                }
            }
        })?;
        if tally.done() {
            break;
        }
    }
    Ok(())
}

fn alternating(len: usize, a: u8, b: u8) -> impl Iterator<Item = u8> {
    (0..len).map(move |i| if i % 2 == 0 { a } else { b })
}

pub(super) fn claim14(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let mut hits = 0u64;
    for &q in &cfg.q {
        let sub = SweepConfig { q: vec![q], ..cfg.clone() };
        for_each_core_pair(&sub, tally, |x, y, _, tally| {
            let p = profile(q, x, y);
            if !(p.size(1) == 1 && p.size(4) == 1) {
                tally.vacuous += 1;
                return;
            }
            hits += 1;
            let found = match_claim14(&p.x_core, &p.y_core);
            let rebuilt = found.as_ref().map(|s| {
                let xr: Vec<u8> = alternating(s.t, s.a, s.a_prime)
                    .chain(s.w.symbols().iter().copied())
                    .chain(alternating(s.s, s.b, s.b_prime))
                    .collect();
                let yr: Vec<u8> = alternating(s.t, s.a_prime, s.a)
                    .chain(s.w.symbols().iter().copied())
                    .chain(alternating(s.s, s.b_prime, s.b))
                    .collect();
                xr == x && yr == y
            });
            tally.check(rebuilt == Some(true), || {
                Witness::new(q, &[x, y], format!("m={}: split found={} rebuilds={rebuilt:?}", x.len(), found.is_some()))
            });
        })?;
        if tally.done() {
            break;
        }
    }
    tally.note(format!("pairs with slots 1 and 4 occupied: {hits}"));
    Ok(())
}

fn branch_name(b: Option<Branch>) -> &'static str {
    match b {
        Some(Branch::OuterSlot) => "outer_slot",
        Some(Branch::Alternating) => "alternating",
        Some(Branch::Periodic) => "periodic",
        None => "none",
    }
}

fn characterization(cfg: &SweepConfig, tally: &mut Tally, n_reads: usize) -> Result<()> {
    let mut branches = std::collections::BTreeMap::<&str, u64>::new();
    let mut triggered = 0u64;
    for &q in &cfg.q {
        let sub = SweepConfig { q: vec![q], ..cfg.clone() };
        for_each_core_pair(&sub, tally, |x, y, common, tally| {
            let p = profile(q, x, y);
            let v = characterization_on(&p, common.len(), n_reads);
            if !v.triggered {
                tally.vacuous += 1;
                return;
            }
            triggered += 1;
            *branches.entry(branch_name(v.branch)).or_default() += 1;
            tally.check(v.holds(), || {
                Witness::new(q, &[x, y], format!("N={n_reads}: |I_2∩I_2|={} and no branch applies", common.len()))
            });
        })?;
        if tally.done() {
            return Ok(());
        }
    }
    tally.note(format!("exhaustive: triggered={triggered} branches={branches:?}"));
    if let Some((lo, hi)) = cfg.sample_lengths {
        sampled_characterization(cfg, tally, n_reads, lo, hi)?;
    }
    Ok(())
}

/// Concatenation of random segments, each with a random period in `1..=4`.
fn low_period_word(rng: &mut impl Rng, q: u8, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let p = rng.gen_range(1..=4usize);
        let seg = rng.gen_range(2..=8usize).min(len - out.len());
        let base: Vec<u8> = (0..p).map(|_| rng.gen_range(0..q)).collect();
        out.extend((0..seg).map(|i| base[i % p]));
    }
    out
}

/// Samples words of length `lo..=hi`, finds partners sharing at least
/// `n_reads` double supersequences by counting, and checks the statement.
fn sampled_characterization(cfg: &SweepConfig, tally: &mut Tally, n_reads: usize, lo: usize, hi: usize) -> Result<()> {
    if cfg.samples == 0 {
        return Ok(());
    }
    let mut branches = std::collections::BTreeMap::<&str, u64>::new();
    let mut pairs = 0u64;
    for &q in &cfg.q {
        let Some(mut rng) = rng_for(cfg, &[q as u64, lo as u64, hi as u64, n_reads as u64]) else {
            return Err(Error::Budget { what: "sampled characterization".into(), needed: 1, budget: 0 });
        };
        tally.mark(false);
        for _ in 0..cfg.samples {
            let m = rng.gen_range(lo..=hi);
            let x = low_period_word(&mut rng, q, m);
            let mut counter = Counter::new(word_count(q, m));
            counter.fill(&x, q, 2, BallKind::Insertion);
            let mut partners: Vec<u64> = counter
                .touched()
                .iter()
                .copied()
                .filter(|&r| counter.get(r) as usize >= n_reads)
                .filter(|&r| indel(&x, &word(q, m, r)) >= 4)
                .collect();
            for _ in 0..partners.len().min(4) {
                let pick = partners.swap_remove(rng.gen_range(0..partners.len()));
                let y = word(q, m, pick);
                let count = counter.get(pick) as usize;
                let p = classify_pair(&Sequence::from_raw(q, x.clone()), &Sequence::from_raw(q, y.clone()))?;
                let v = characterization_on(&p, count, n_reads);
                pairs += 1;
                *branches.entry(branch_name(v.branch)).or_default() += 1;
                tally.check(p.total() == count && v.holds(), || {
                    Witness::new(
                        q,
                        &[&x, &y],
                        format!(
                            "m={m} N={n_reads}: count={count} slot total={} branch={}",
                            p.total(),
                            branch_name(v.branch)
                        ),
                    )
                });
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    tally.note(format!("sampled lengths {lo}..={hi}: pairs={pairs} branches={branches:?}"));
    Ok(())
}

pub(super) fn characterization_n2(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    characterization(cfg, tally, 2)
}

pub(super) fn characterization_n3(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    characterization(cfg, tally, 3)
}

pub(super) fn characterization_n4(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    characterization(cfg, tally, 4)
}

pub(super) fn characterization_n5(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    characterization(cfg, tally, 5)
}
