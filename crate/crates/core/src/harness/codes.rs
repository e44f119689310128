//! Sweeps over the code families and the syndrome tools behind them.

use super::{word, SweepConfig, Tally, Witness};
use crate::characterize::profile_of_cores;
use crate::codes::{
    classes, coverage_of_ranks, redundancy_of_size, sign_preserving_number, vt_syndrome, CodeEnv, CodeFamilySpec,
    Family, GreedySeparator, Separator,
};
use crate::error::{Error, Result};
use crate::metric::{indel, intersect_count, lcs, BallKind, BallTable};
use crate::seq::{integer_differential_of, le_periodic, period_restricted, word_count, Sequence};

/// Largest `n ≤ cfg.n_max` with `q^n` inside the budget.
fn largest_feasible(cfg: &SweepConfig, q: u8) -> Option<usize> {
    (cfg.n_min.max(1)..=cfg.n_max).rev().find(|&n| word_count(q, n) <= cfg.budget)
}

fn env(cfg: &SweepConfig) -> CodeEnv {
    CodeEnv { budget: cfg.budget, ..CodeEnv::default() }
}

fn family_coverage(cfg: &SweepConfig, tally: &mut Tally, family: Family) -> Result<()> {
    let reads = family.design_reads().expect("family has a read count");
    let env = env(cfg);
    for &q in &cfg.q {
        let Some(n_hi) = largest_feasible(cfg, q) else {
            if q == 2 {
                return Err(Error::Budget {
                    what: format!("{family} over 2^{}", cfg.n_min),
                    needed: word_count(2, cfg.n_min),
                    budget: cfg.budget,
                });
            }
            tally.note(format!("q={q}: no length fits the budget"));
            continue;
        };
        tally.mark(true);
        for n in cfg.n_min.max(1)..=n_hi {
            let template = CodeFamilySpec::template(family, n, q)?;
            let all = classes(&template, &env)?;
            let mut worst = (0usize, 0usize);
            let mut largest = 0usize;
            for members in all.values() {
                largest = largest.max(members.len());
                if members.len() < 2 {
                    tally.vacuous += 1;
                    continue;
                }
                let (ins, ins_pair) = coverage_of_ranks(members, q, n, 2, BallKind::Insertion);
                let (del, del_pair) =
                    if n >= 2 { coverage_of_ranks(members, q, n, 2, BallKind::Deletion) } else { (0, None) };
                worst = (worst.0.max(ins), worst.1.max(del));
                let pair = |p: Option<(u64, u64)>| p.map(|(a, b)| (word(q, n, a), word(q, n, b)));
                let ok = ins < reads && del <= ins;
                tally.check(ok, || {
                    let d = format!("n={n}: nu(I_2)={ins} nu(D_2)={del} design reads={reads}");
                    match pair(if ins >= reads { ins_pair } else { del_pair }) {
                        Some((a, b)) => Witness::new(q, &[&a, &b], d),
                        None => Witness::new(q, &[], d),
                    }
                });
                tally.extremal(ins as i128, || match pair(ins_pair) {
                    Some((a, b)) => Witness::new(q, &[&a, &b], format!("n={n}: nu(I_2)={ins}")),
                    None => Witness::new(q, &[], format!("n={n}: nu(I_2)={ins}")),
                });
                if tally.done() {
                    return Ok(());
                }
            }
            let red = if largest > 0 { redundancy_of_size(largest as u64, n, q) } else { f64::INFINITY };
            tally.note(format!(
                "q={q} n={n}: classes={} largest={largest} redundancy={red:.3} nu(I_2)<={} nu(D_2)<={} P={:?} clamped={}",
                all.len(),
                worst.0,
                worst.1,
                template.period,
                template.clamped
            ));
        }
    }
    Ok(())
}

pub(super) fn codes_n7(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    family_coverage(cfg, tally, Family::N7)
}

pub(super) fn codes_n5(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    family_coverage(cfg, tally, Family::N5)
}

pub(super) fn codes_n4(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    family_coverage(cfg, tally, Family::N4)
}

pub(super) fn codes_n3(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    family_coverage(cfg, tally, Family::N3)
}

pub(super) fn codes_n2(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    family_coverage(cfg, tally, Family::N2)
}

fn check_total(cfg: &SweepConfig, q: u8, n: usize) -> Result<u64> {
    let total = word_count(q, n);
    if total > cfg.budget {
        return Err(Error::Budget { what: format!("sweep over {q}^{n}"), needed: total, budget: cfg.budget });
    }
    Ok(total)
}

pub(super) fn single_insertion(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let env = env(cfg);
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            check_total(cfg, q, n)?;
            tally.mark(true);
            let all = classes(&CodeFamilySpec::template(Family::N7, n, q)?, &env)?;
            for (sig, members) in &all {
                let (nu, pair) = coverage_of_ranks(members, q, n, 1, BallKind::Insertion);
                tally.check(nu == 0, || {
                    let (a, b) = pair.map(|(a, b)| (word(q, n, a), word(q, n, b))).unwrap_or_default();
                    Witness::new(q, &[&a, &b], format!("n={n} class {sig:?}: nu(I_1)={nu}"))
                });
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn n3_slots(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let env = env(cfg);
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            check_total(cfg, q, n)?;
            tally.mark(true);
            let all = classes(&CodeFamilySpec::template(Family::N3, n, q)?, &env)?;
            for members in all.values() {
                for (i, &a) in members.iter().enumerate() {
                    let x = word(q, n, a);
                    for &b in &members[i + 1..] {
                        let y = word(q, n, b);
                        let d = indel(&x, &y);
                        let outer = if d >= 4 {
                            let (p, s) = crate::seq::common_affixes(&x, &y);
                            profile_of_cores(
                                Sequence::from_raw(q, x[p..n - s].to_vec()),
                                Sequence::from_raw(q, y[p..n - s].to_vec()),
                            )
                            .outer_count()
                        } else {
                            0
                        };
                        tally.check(d >= 4 && outer == 0, || {
                            Witness::new(q, &[&x, &y], format!("n={n}: d_L={d} slots 1,2,4,5 occupied={outer}"))
                        });
                        if tally.done() {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn diff_of(x: &[u8], y: &[u8], q: u8) -> Vec<i64> {
    let (gx, gy) = (integer_differential_of(x, q), integer_differential_of(y, q));
    gx.iter().zip(&gy).map(|(a, b)| a - b).collect()
}

fn power_sum(n: usize, k: u32) -> i128 {
    (1..=n as i128).map(|i| i.pow(k)).sum()
}

pub(super) fn partition(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let total = check_total(cfg, q, n)?;
            tally.mark(true);
            let words: Vec<Vec<u8>> = (0..total).map(|r| word(q, n, r)).collect();
            let mut applied = [0u64; 2];
            for x in &words {
                for y in &words {
                    // Cuts for m = 1 (none) and m = 2 (one inner cut).
                    let cuts = std::iter::once(None).chain((1..n).map(Some));
                    for cut in cuts {
                        let blocks: Vec<(usize, usize)> = match cut {
                            None => vec![(0, n)],
                            Some(c) => vec![(0, c), (c, n)],
                        };
                        let confusable = blocks.iter().all(|&(a, b)| lcs(&x[a..b], &y[a..b]) + 1 >= b - a);
                        if !confusable {
                            continue;
                        }
                        let m = blocks.len();
                        applied[m - 1] += 1;
                        let z = diff_of(x, y, q);
                        let sigma = sign_preserving_number(&z)?;
                        let vt_ok = (0..4u32)
                            .all(|k| vt_syndrome(&z, k).abs() <= q as i128 * m as i128 * power_sum(n, k) - m as i128);
                        tally.check(sigma <= m && vt_ok, || {
                            Witness::new(q, &[x, y], format!("n={n} m={m} cut={cut:?}: sigma={sigma} vt_ok={vt_ok}"))
                        });
                        if tally.done() {
                            return Ok(());
                        }
                    }
                }
            }
            tally.note(format!("q={q} n={n}: confusable splits m=1: {} m=2: {}", applied[0], applied[1]));
        }
    }
    Ok(())
}

pub(super) fn x_eq_y(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let total = check_total(cfg, q, n)?;
            tally.mark(true);
            for a in 0..total {
                let x = word(q, n, a);
                for b in a + 1..total {
                    let y = word(q, n, b);
                    let z = diff_of(&x, &y, q);
                    let sigma = sign_preserving_number(&z)?;
                    for m in 1..=4usize {
                        let hyp = sigma <= m && (0..m as u32).all(|k| vt_syndrome(&z, k) == 0);
                        tally.check(!hyp, || {
                            Witness::new(
                                q,
                                &[&x, &y],
                                format!("n={n} m={m}: sigma={sigma} and VT^0..VT^{} vanish", m - 1),
                            )
                        });
                    }
                    if tally.done() {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn ceil_log2(n: usize) -> usize {
    (n.max(1) as u64).next_power_of_two().trailing_zeros() as usize
}

/// `x` has no window of length `l + 1` with a period at most `t`, by direct scan.
fn period_restricted_naive(x: &[u8], t: usize, l: usize) -> bool {
    x.len() <= l || x.windows(l + 1).all(|w| !le_periodic(w, t))
}

pub(super) fn period_density(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let total = check_total(cfg, q, n)?;
            tally.mark(true);
            for &t in cfg.t.iter().filter(|&&t| t >= 1) {
                let p = ceil_log2(n) + t + 1;
                let mut count = 0u64;
                let mut agree = true;
                for r in 0..total {
                    let x = word(q, n, r);
                    let fast = period_restricted(&x, t, p);
                    agree &= fast == period_restricted_naive(&x, t, p);
                    count += fast as u64;
                }
                tally.check(agree && 2 * count >= total, || {
                    Witness::new(q, &[], format!("n={n} t={t} P={p}: |R|={count} of {total} scan_agrees={agree}"))
                });
                tally.note(format!("q={q} n={n} t={t} P={p}: |R|={count}/{total}"));
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Every `y` obtained from `x` by swapping two alternating blocks
/// `α_{t1}(ab) → α_{t1}(ba)` and `α_{t2}(cd) → α_{t2}(dc)` in order, with the
/// tail after the second block of length at least `min_tail`.
fn swapped_partners(x: &[u8], q: u8, min_tail: usize, f: &mut impl FnMut(&[u8], usize)) {
    let n = x.len();
    // Other symbol of each alternating block starting at i of length len.
    let block = |i: usize, len: usize| -> Option<Option<u8>> {
        if len == 1 {
            return Some(None);
        }
        let (a, b) = (x[i], x[i + 1]);
        (a != b && (i..i + len).all(|j| x[j] == if (j - i) % 2 == 0 { a } else { b })).then_some(Some(b))
    };
    let others = |a: u8, fixed: Option<u8>| -> Vec<u8> {
        match fixed {
            Some(b) => vec![b],
            None => (0..q).filter(|&b| b != a).collect(),
        }
    };
    let mut y = x.to_vec();
    for i in 0..n {
        for t1 in 1..=n - i {
            let Some(f1) = block(i, t1) else { break };
            for j in i + t1..n {
                for t2 in 1..=n - j {
                    if n - j - t2 < min_tail {
                        break;
                    }
                    let Some(f2) = block(j, t2) else { break };
                    for b1 in others(x[i], f1) {
                        for b2 in others(x[j], f2) {
                            let (a1, a2) = (x[i], x[j]);
                            for k in 0..t1 {
                                y[i + k] = if k % 2 == 0 { b1 } else { a1 };
                            }
                            for k in 0..t2 {
                                y[j + k] = if k % 2 == 0 { b2 } else { a2 };
                            }
                            f(&y, n - j - t2);
                            y[i..i + t1].copy_from_slice(&x[i..i + t1]);
                            y[j..j + t2].copy_from_slice(&x[j..j + t2]);
                        }
                    }
                }
            }
        }
    }
}

pub(super) fn aux4(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let env = env(cfg);
    for &q in &cfg.q {
        for n in cfg.n_min.max(2)..=cfg.n_max {
            let total = check_total(cfg, q, n)?;
            tally.mark(true);
            let spec = CodeFamilySpec::template(Family::Aux4, n, q)?;
            let l = (spec.period.expect("aux family has P") - 1) / 3;
            let eval = spec.evaluator(&env)?;
            let sigs: Vec<Vec<u64>> = (0..total).map(|r| eval.signature(&word(q, n, r)).expect("no filters")).collect();
            let admissible: Vec<bool> = (0..total).map(|r| period_restricted(&word(q, n, r), 2, l)).collect();
            let mut tail_empty = 0u64;
            for r in 0..total {
                if !admissible[r as usize] {
                    continue;
                }
                let x = word(q, n, r);
                swapped_partners(&x, q, 0, &mut |y, tail| {
                    let yr = crate::seq::rank(y, q) as usize;
                    let collide = admissible[yr] && sigs[yr] == sigs[r as usize];
                    if tail == 0 {
                        tail_empty += collide as u64;
                        return;
                    }
                    tally.check(!collide, || {
                        Witness::new(q, &[&x, y], format!("n={n} l={l}: same auxiliary signature"))
                    });
                });
                if tally.done() {
                    return Ok(());
                }
            }
            tally.note(format!("q={q} n={n} l={l}: colliding pairs with empty tail={tail_empty}"));
        }
    }
    Ok(())
}

pub(super) fn separator(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for n in cfg.n_min.max(1)..=cfg.n_max {
        let total = check_total(cfg, 2, n)?;
        tally.mark(true);
        let table = BallTable::build(2, n, 2, BallKind::Insertion);
        let words: Vec<Vec<u8>> = (0..total).map(|r| word(2, n, r)).collect();
        let mut spans = vec![2, 5, n];
        spans.sort_unstable();
        spans.dedup();
        for span in spans.into_iter().filter(|&s| s <= n) {
            let sep = GreedySeparator::build(n, span, 1 << 16)?;
            for a in 0..total as usize {
                for b in a + 1..total as usize {
                    let (p, s) = crate::seq::common_affixes(&words[a], &words[b]);
                    if n - p - s > span || sep.color(&words[a]) != sep.color(&words[b]) {
                        tally.pass(1);
                        continue;
                    }
                    let c = intersect_count(table.ball(a as u64), table.ball(b as u64));
                    tally.check(c == 0, || {
                        Witness::new(
                            2,
                            &[&words[a], &words[b]],
                            format!("n={n} span={span}: same color, |I_2∩I_2|={c}"),
                        )
                    });
                }
            }
            tally.note(format!("n={n} span={span}: colors={}", sep.colors_used()));
            if tally.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapped_partners_cover_single_symbol_blocks() {
        let mut seen = Vec::new();
        swapped_partners(&[0, 0, 0], 2, 1, &mut |y, tail| seen.push((y.to_vec(), tail)));
        assert_eq!(seen, vec![(vec![1, 1, 0], 1)]);
    }

    #[test]
    fn swapped_partners_swap_alternating_blocks() {
        let mut seen = Vec::new();
        swapped_partners(&[0, 1, 0, 1, 1], 2, 1, &mut |y, _| seen.push(y.to_vec()));
        // Blocks 01 then 0 with tail 1... among others.
        assert!(seen.contains(&vec![1, 0, 1, 1, 1]));
        assert!(seen.iter().all(|y| y[4] == 1));
    }

    #[test]
    fn naive_period_scan_agrees() {
        for r in 0..1u64 << 10 {
            let x = word(2, 10, r);
            for t in 1..=3 {
                assert_eq!(period_restricted(&x, t, 4), period_restricted_naive(&x, t, 4));
            }
        }
    }
}
