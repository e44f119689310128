//! Sweeps over balls, their intersections and the counting formulas.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{centres, run_centres, word, Counter, SweepConfig, Tally, Witness};
use crate::characterize::{ins_case_prime_applies, match_char_lemma, CharCase};
use crate::counting::{
    binom, del_pair_bound, delta, delta_prime, ins_case_threshold, ins_case_window_int, insertion_ball_size, n_plus,
    n_plus_or_zero, run_bound, run_bounded_size, run_bounded_threshold,
};
use crate::error::{Error, Result};
use crate::metric::{
    ball_ranks, for_each_ball_member, for_each_subsequence, indel, injection_phi, intersect_count, intersect_into,
    subseq, BallKind, BallTable,
};
use crate::seq::{self, common_affixes, runs_of, word_count, Sequence};

fn big(v: &BigInt) -> i128 {
    v.to_i128().expect("count fits i128")
}

/// Ball built one edit at a time with a set, for cross-checking the
/// generators on short words.
pub(crate) fn naive_ball(x: &[u8], q: u8, t: usize, kind: BallKind) -> BTreeSet<Vec<u8>> {
    let mut cur: BTreeSet<Vec<u8>> = BTreeSet::from([x.to_vec()]);
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for w in &cur {
            match kind {
                BallKind::Deletion => {
                    for i in 0..w.len() {
                        let mut v = w.clone();
                        v.remove(i);
                        next.insert(v);
                    }
                }
                BallKind::Insertion => {
                    for i in 0..=w.len() {
                        for c in 0..q {
                            let mut v = w.clone();
                            v.insert(i, c);
                            next.insert(v);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

fn ball_size(x: &[u8], q: u8, t: usize, kind: BallKind) -> usize {
    let mut count = 0;
    for_each_ball_member(x, q, t, kind, &mut |_| count += 1);
    count
}

pub(super) fn connection(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1 && t <= n) {
                let c = centres(cfg, q, n, tally)?;
                let init = || (Counter::new(c.total), Counter::new(c.total), Vec::new());
                run_centres(cfg, &c, tally, init, |(dc, ic, common), xr, tally| {
                    let x = word(q, n, xr);
                    dc.fill(&x, q, t, BallKind::Deletion);
                    ic.fill(&x, q, t, BallKind::Insertion);
                    let dx = ball_ranks(&x, q, t, BallKind::Deletion);
                    let xs = Sequence::from_raw(q, x.clone());
                    let mut nontrivial = 0;
                    for &yr in dc.touched() {
                        if !c.partner(xr, yr) {
                            continue;
                        }
                        nontrivial += 1;
                        let y = word(q, n, yr);
                        let dy = ball_ranks(&y, q, t, BallKind::Deletion);
                        intersect_into(&dx, &dy, common);
                        let (d, i) = (dc.get(yr) as usize, ic.get(yr) as usize);
                        let ys = Sequence::from_raw(q, y.clone());
                        let mut landed = true;
                        let mut images = Vec::with_capacity(common.len());
                        for &zr in common.iter() {
                            let z = Sequence::from_rank(q, n - t, zr);
                            let img = injection_phi(&xs, &ys, &z, t).expect("z is a common subsequence");
                            landed &= img.len() == n + t && subseq(&x, img.symbols()) && subseq(&y, img.symbols());
                            images.push(img.rank());
                        }
                        images.sort_unstable();
                        images.dedup();
                        let ok = d == common.len() && d <= i && landed && images.len() == d;
                        tally.check(ok, || {
                            Witness::new(
                                q,
                                &[&x, &y],
                                format!(
                                    "n={n} t={t}: |D∩D|={d} |I∩I|={i} distinct images={} landed={landed}",
                                    images.len()
                                ),
                            )
                        });
                        tally.extremal(d as i128, || {
                            Witness::new(q, &[&x, &y], format!("n={n} t={t}: |D∩D|={d} |I∩I|={i}"))
                        });
                        if tally.done() {
                            return;
                        }
                    }
                    tally.pass(c.partner_count(xr) - nontrivial);
                });
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn del_run(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1 && t <= n) {
                let c = centres(cfg, q, n, tally)?;
                run_centres(
                    cfg,
                    &c,
                    tally,
                    || (),
                    |_, xr, tally| {
                        let x = word(q, n, xr);
                        let size = ball_size(&x, q, t, BallKind::Deletion);
                        let oracle_ok = n > 7 || naive_ball(&x, q, t, BallKind::Deletion).len() == size;
                        let r = runs_of(&x);
                        let bound = big(&binom((r + t - 1) as i64, t as i64));
                        tally.check(oracle_ok && size as i128 <= bound, || {
                            Witness::new(
                                q,
                                &[&x],
                                format!("n={n} t={t} r={r}: |D_t|={size} bound={bound} oracle_ok={oracle_ok}"),
                            )
                        });
                        if size as i128 == bound {
                            tally.extremal(size as i128, || {
                                Witness::new(q, &[&x], format!("n={n} t={t} r={r}: |D_t|={size} equals the bound"))
                            });
                        }
                    },
                );
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Union over `t1 + t2 ≤ t` of `D_{t1}(u) ∘ (D_s(x̃) ∩ D_s(ỹ)) ∘ D_{t2}(v)`,
/// `s = t - t1 - t2`, as ranks of length `n - t`.
fn split_union(u: &[u8], xc: &[u8], yc: &[u8], v: &[u8], q: u8, t: usize) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let subs = |w: &[u8], k: usize| {
        let mut all = Vec::new();
        if k <= w.len() {
            for_each_subsequence(w, q, w.len() - k, &mut |s| all.push(s.to_vec()));
        }
        all
    };
    for t1 in 0..=t {
        for t2 in 0..=t - t1 {
            let s = t - t1 - t2;
            if s > xc.len() {
                continue;
            }
            let mid: Vec<u64> = {
                let a = ball_ranks(xc, q, s, BallKind::Deletion);
                let b = ball_ranks(yc, q, s, BallKind::Deletion);
                let mut m = Vec::new();
                intersect_into(&a, &b, &mut m);
                m
            };
            let (us, vs) = (subs(u, t1), subs(v, t2));
            let mid_len = xc.len() - s;
            for a in &us {
                for &m in &mid {
                    for b in &vs {
                        let mut w = a.clone();
                        w.extend(super::word(q, mid_len, m));
                        w.extend_from_slice(b);
                        out.insert(seq::rank(&w, q));
                    }
                }
            }
        }
    }
    out
}

pub(super) fn del_intersect(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1 && t <= n) {
                let c = centres(cfg, q, n, tally)?;
                run_centres(
                    cfg,
                    &c,
                    tally,
                    || (),
                    |_, xr, tally| {
                        let x = word(q, n, xr);
                        let dx = ball_ranks(&x, q, t, BallKind::Deletion);
                        for yr in 0..c.total {
                            if !c.partner(xr, yr) {
                                continue;
                            }
                            let y = word(q, n, yr);
                            let dy = ball_ranks(&y, q, t, BallKind::Deletion);
                            let mut lhs = Vec::new();
                            intersect_into(&dx, &dy, &mut lhs);
                            let (p, s) = common_affixes(&x, &y);
                            // Every split of the common prefix and suffix, not only the maximal one.
                            for a in 0..=p {
                                for b in 0..=s {
                                    let rhs = split_union(&x[..a], &x[a..n - b], &y[a..n - b], &x[n - b..], q, t);
                                    let ok = rhs.iter().copied().eq(lhs.iter().copied());
                                    tally.check(ok, || {
                                        Witness::new(
                                            q,
                                            &[&x, &y],
                                            format!(
                                                "n={n} t={t} |u|={a} |v|={b}: |lhs|={} |rhs|={}",
                                                lhs.len(),
                                                rhs.len()
                                            ),
                                        )
                                    });
                                    if tally.done() {
                                        return;
                                    }
                                }
                            }
                        }
                    },
                );
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn del_int_run(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let mut first_nondegenerate: Option<Witness> = None;
    let mut corrected_violations = 0u64;
    let mut attained_t2 = false;
    let mut saw_t2 = false;
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1 && t <= n) {
                saw_t2 |= t == 2 && n >= 2;
                let c = centres(cfg, q, n, tally)?;
                let before = tally.violations;
                let mut nondeg: Option<Witness> = None;
                let mut corrected = 0u64;
                let mut attained: Option<Witness> = None;
                // Sequential: the extra bookkeeping is cheap next to the counting.
                let mut dc = Counter::new(c.total);
                for i in 0..c.len() {
                    if tally.done() {
                        break;
                    }
                    let xr = c.get(i);
                    let x = word(q, n, xr);
                    dc.fill(&x, q, t, BallKind::Deletion);
                    let rx = runs_of(&x) as i64;
                    let mut nontrivial = 0;
                    for &yr in dc.touched() {
                        if !c.partner(xr, yr) {
                            continue;
                        }
                        nontrivial += 1;
                        let y = word(q, n, yr);
                        let ry = runs_of(&y) as i64;
                        let d = dc.get(yr) as i128;
                        let bound = big(&del_pair_bound(rx, ry, t as i64));
                        let detail = || format!("n={n} t={t} r=({rx},{ry}): |D∩D|={d} bound={bound}");
                        tally.check(d <= bound, || Witness::new(q, &[&x, &y], detail()));
                        if d > bound && n > t && nondeg.is_none() {
                            nondeg = Some(Witness::new(q, &[&x, &y], detail()));
                        }
                        let fixed =
                            big(&(binom(rx + t as i64 - 2, t as i64 - 1) + binom(ry + t as i64 - 2, t as i64 - 1)));
                        if d > fixed {
                            corrected += 1;
                        }
                        if t == 2 && d == bound && bound > 0 && attained.is_none() {
                            attained =
                                Some(Witness::new(q, &[&x, &y], format!("n={n} t=2 attains the bound: {}", detail())));
                        }
                    }
                    tally.pass(c.partner_count(xr) - nontrivial);
                }
                let found = tally.violations - before;
                if found > 0 {
                    tally.note(format!("q={q} n={n} t={t}: {found} violating pairs"));
                }
                if first_nondegenerate.is_none() {
                    first_nondegenerate = nondeg;
                }
                corrected_violations += corrected;
                if let Some(w) = attained {
                    if !attained_t2 {
                        attained_t2 = true;
                        tally.extremal(2, || w);
                    }
                }
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    if let Some(w) = first_nondegenerate {
        tally.note(format!("first violation with n > t: {w}"));
    }
    tally.note(format!("pairs exceeding C(r(x)+t-2,t-1)+C(r(y)+t-2,t-1): {corrected_violations}"));
    if saw_t2 {
        tally.check(attained_t2, || Witness::new(0, &[], "no pair attains the bound at t=2"));
    }
    Ok(())
}

pub(super) fn del_case(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(2)..=cfg.n_max {
            let total = word_count(q, n);
            if total > cfg.budget {
                return Err(Error::Budget {
                    what: format!("run-bounded code over {q}^{n}"),
                    needed: total,
                    budget: cfg.budget,
                });
            }
            tally.mark(true);
            let r = run_bound(n as u64, q as u32) as usize;
            let code: Vec<u64> = (0..total).filter(|&x| runs_of(&word(q, n, x)) <= r).collect();
            let formula = big(&run_bounded_size(n as i64, r as i64, q as u32));
            let floor = (total / q as u64) as i128;
            tally.check(code.len() as i128 == formula && formula >= floor, || {
                Witness::new(q, &[], format!("n={n} r={r}: |C|={} formula={formula} q^(n-1)={floor}", code.len()))
            });
            let red = crate::codes::redundancy_of_size(code.len() as u64, n, q);
            tally.note(format!("q={q} n={n}: r={r} |C|={} redundancy={red:.4}", code.len()));
            for &t in cfg.t.iter().filter(|&&t| t >= 1 && t < n) {
                let threshold = big(&run_bounded_threshold(n as u64, t as i64, q as u32));
                let (nu, pair) = deletion_coverage(&code, q, n, t);
                let pair_words = pair.map(|(a, b)| (word(q, n, a), word(q, n, b)));
                let ws = |p: &Option<(Vec<u8>, Vec<u8>)>, d: String| match p {
                    Some((a, b)) => Witness::new(q, &[a, b], d),
                    None => Witness::new(q, &[], d),
                };
                tally.check((nu as i128) <= threshold, || {
                    ws(&pair_words, format!("n={n} t={t}: nu={nu} threshold={threshold}"))
                });
                tally.extremal(nu as i128, || {
                    ws(&pair_words, format!("n={n} t={t}: nu(C;D_t)={nu} threshold={threshold}"))
                });
                tally.note(format!("q={q} n={n} t={t}: nu(C;D_t)={nu} <= {threshold}"));
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// `max_{x≠y} |D_t(x) ∩ D_t(y)|` over a code given by sorted ranks, using an
/// index from each subsequence to the codewords containing it.
fn deletion_coverage(code: &[u64], q: u8, n: usize, t: usize) -> (usize, Option<(u64, u64)>) {
    let space = word_count(q, n - t) as usize;
    let mut start = vec![0u32; space + 1];
    let mut balls: Vec<Vec<u64>> = Vec::with_capacity(code.len());
    for &x in code {
        let b = ball_ranks(&word(q, n, x), q, t, BallKind::Deletion);
        for &z in &b {
            start[z as usize + 1] += 1;
        }
        balls.push(b);
    }
    for i in 0..space {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut members = vec![0u32; *start.last().unwrap() as usize];
    for (i, b) in balls.iter().enumerate() {
        for &z in b {
            members[fill[z as usize] as usize] = i as u32;
            fill[z as usize] += 1;
        }
    }
    let mut counts = vec![0u32; code.len()];
    let mut touched = Vec::new();
    let mut best = (0usize, None);
    for (i, b) in balls.iter().enumerate() {
        for &z in b {
            let list = &members[start[z as usize] as usize..start[z as usize + 1] as usize];
            // Lists are increasing in codeword index; only later codewords.
            let from = list.partition_point(|&j| j as usize <= i);
            for &j in &list[from..] {
                if counts[j as usize] == 0 {
                    touched.push(j);
                }
                counts[j as usize] += 1;
            }
        }
        touched.sort_unstable();
        for &j in &touched {
            let c = counts[j as usize] as usize;
            if c > best.0 {
                best = (c, Some((code[i], code[j as usize])));
            }
            counts[j as usize] = 0;
        }
        touched.clear();
    }
    best
}

pub(super) fn ins_ball_size(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for q in 2..=5u32 {
        for n in 1..=50i64 {
            for t in 1..=6i64 {
                let lhs = insertion_ball_size(n, t, q);
                let rhs = insertion_ball_size(n - 1, t, q) + (q as i64 - 1) * insertion_ball_size(n, t - 1, q);
                tally.check(lhs == rhs, || Witness::new(q as u8, &[], format!("recurrence fails at n={n} t={t}")));
            }
        }
    }
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in &cfg.t {
                let formula = big(&insertion_ball_size(n as i64, t as i64, q as u32));
                let c = centres(cfg, q, n, tally)?;
                run_centres(
                    cfg,
                    &c,
                    tally,
                    || (),
                    |_, xr, tally| {
                        let x = word(q, n, xr);
                        let size = ball_size(&x, q, t, BallKind::Insertion);
                        let oracle_ok = n + t > 8 || naive_ball(&x, q, t, BallKind::Insertion).len() == size;
                        tally.check(size as i128 == formula && oracle_ok, || {
                            Witness::new(
                                q,
                                &[&x],
                                format!("n={n} t={t}: |I_t|={size} formula={formula} oracle_ok={oracle_ok}"),
                            )
                        });
                    },
                );
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn n_plus_max(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for q in 2..=5u32 {
        for n in 1..=24i64 {
            for t in 1..=6i64 {
                for k in 1..=t {
                    for l in 1..=k {
                        let lhs = n_plus_or_zero(n, t, k, l, q);
                        let rhs =
                            n_plus_or_zero(n - 1, t, k, l, q) + (q as i64 - 1) * n_plus_or_zero(n, t - 1, k - 1, l, q);
                        tally.check(lhs == rhs, || {
                            Witness::new(q as u8, &[], format!("recurrence fails at n={n} t={t} k={k} l={l}"))
                        });
                    }
                }
            }
        }
    }
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1) {
                for k in 1..=t {
                    let a = n + t - k;
                    let (xs_total, ys_total) = (word_count(q, a), word_count(q, n));
                    if xs_total.max(ys_total) > cfg.budget {
                        return Err(Error::Budget {
                            what: format!("pairs over {q}^{a} x {q}^{n}"),
                            needed: xs_total,
                            budget: cfg.budget,
                        });
                    }
                    tally.mark(true);
                    let xs: Vec<Vec<u8>> = (0..xs_total).map(|r| word(q, a, r)).collect();
                    // best[l]: largest count with its pair; feasible[l]: some pair meets the distance.
                    let mut best: Vec<(i128, u64, u64)> = vec![(-1, 0, 0); k + 1];
                    let mut feasible = vec![false; k + 1];
                    let mut counter = Counter::new(xs_total);
                    for yr in 0..ys_total {
                        let y = word(q, n, yr);
                        counter.clear();
                        for_each_ball_member(&y, q, t, BallKind::Insertion, &mut |z| {
                            for_each_ball_member(z, q, k, BallKind::Deletion, &mut |x| counter.add(seq::rank(x, q)));
                        });
                        for (xr, x) in xs.iter().enumerate() {
                            let d = indel(x, &y);
                            let cnt = counter.get(xr as u64) as i128;
                            for l in 1..=k {
                                if d + k >= t + 2 * l {
                                    feasible[l] = true;
                                    if cnt > best[l].0 {
                                        best[l] = (cnt, xr as u64, yr);
                                    }
                                }
                            }
                        }
                    }
                    for l in 1..=k {
                        if !feasible[l] {
                            tally.vacuous += 1;
                            tally.note(format!(
                                "q={q} n={n} t={t} k={k} l={l}: no pair at distance >= {}",
                                t - k + 2 * l
                            ));
                            continue;
                        }
                        let formula = big(&n_plus(n as i64, t as i64, k as i64, l as i64, q as u32)?);
                        let (v, xr, yr) = best[l];
                        let (x, y) = (&xs[xr as usize], word(q, n, yr));
                        tally.check(v == formula, || {
                            Witness::new(q, &[x, &y], format!("n={n} t={t} k={k} l={l}: max={v} formula={formula}"))
                        });
                        tally
                            .extremal(v, || Witness::new(q, &[x, &y], format!("n={n} t={t} k={k} l={l}: attains {v}")));
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

fn ins_hypothesis(n: i64, t: i64, q: u32) -> bool {
    let lhs = insertion_ball_size(n + 1, t - 1, q);
    let a = delta(n, t, q) - n_plus_or_zero(n + 1, t - 1, t - 1, 1, q);
    let b = n_plus_or_zero(n, t, t, 2, q);
    lhs > a.max(b)
}

fn ins_case_sweep(cfg: &SweepConfig, tally: &mut Tally, prime: bool) -> Result<()> {
    if !prime {
        for &q in &cfg.q {
            for &t in cfg.t.iter().filter(|&&t| t >= 2) {
                for n in cfg.n_min.max(2)..=cfg.n_max {
                    let (ni, ti, qq) = (n as i64, t as i64, q as u32);
                    let lhs = delta(ni, ti, qq);
                    let rhs = delta(ni - 1, ti, qq) + (qq as i64 - 1) * delta(ni, ti - 1, qq);
                    tally.check(lhs == rhs, || {
                        Witness::new(q, &[], format!("Δ recurrence fails at n={n} t={t}: {lhs} vs {rhs}"))
                    });
                }
            }
        }
    }
    for &q in &cfg.q {
        for &t in cfg.t.iter().filter(|&&t| t >= 2) {
            if !prime {
                match ins_case_threshold(t as i64, q as u32, 10_000) {
                    Ok(th) => tally.note(format!("q={q} t={t}: threshold n={} window={:?}", th.n, th.window)),
                    Err(e) => tally.note(format!("q={q} t={t}: {e}")),
                }
            }
            for n in cfg.n_min.max(2)..=cfg.n_max {
                let (ni, ti) = (n as i64, t as i64);
                let bound = big(&if prime { delta_prime(ni, ti, q as u32) } else { delta(ni, ti, q as u32) });
                let window = if !prime && ins_hypothesis(ni, ti, q as u32) {
                    let w = ins_case_window_int(ni, ti, q as u32).map(|(lo, hi)| (big(&lo), big(&hi)));
                    match &w {
                        Some((lo, hi)) => {
                            tally.note(format!("q={q} t={t} n={n}: equivalence checked for N in [{lo},{hi}]"))
                        }
                        None => tally.note(format!("q={q} t={t} n={n}: hypothesis holds, window empty")),
                    }
                    w
                } else {
                    None
                };
                let c = centres(cfg, q, n, tally)?;
                let init = || (Counter::new(c.total), Counter::new(c.total));
                run_centres(cfg, &c, tally, init, |(c1, ct), xr, tally| {
                    let x = word(q, n, xr);
                    c1.fill(&x, q, 1, BallKind::Insertion);
                    let bx = ball_ranks(&x, q, t, BallKind::Insertion);
                    let b1x = ball_ranks(&x, q, 1, BallKind::Insertion);
                    for &yr in c1.touched() {
                        if !c.partner(xr, yr) || c1.get(yr) != 1 {
                            continue;
                        }
                        let y = word(q, n, yr);
                        if prime
                            && !ins_case_prime_applies(
                                &Sequence::from_raw(q, x.clone()),
                                &Sequence::from_raw(q, y.clone()),
                            )
                            .unwrap_or(false)
                        {
                            continue;
                        }
                        let mut z = Vec::new();
                        intersect_into(&b1x, &ball_ranks(&y, q, 1, BallKind::Insertion), &mut z);
                        let z = word(q, n + 1, z[0]);
                        let mut s = Vec::new();
                        intersect_into(&bx, &ball_ranks(&y, q, t, BallKind::Insertion), &mut s);
                        let excess = s.iter().filter(|&&w| !subseq(&z, &word(q, n + t, w))).count() as i128;
                        tally.check(excess <= bound, || {
                            Witness::new(q, &[&x, &y], format!("n={n} t={t}: excess={excess} bound={bound}"))
                        });
                        tally.extremal(excess, || {
                            Witness::new(q, &[&x, &y], format!("n={n} t={t}: excess={excess} bound={bound}"))
                        });
                        if tally.done() {
                            return;
                        }
                    }
                    if let Some((lo, hi)) = window {
                        ct.fill(&x, q, t, BallKind::Insertion);
                        let mut nontrivial = 0;
                        for &yr in ct.touched() {
                            if !c.partner(xr, yr) {
                                continue;
                            }
                            nontrivial += 1;
                            let (one, big_t) = (c1.get(yr), ct.get(yr) as i128);
                            let ok = if one <= 1 { big_t < lo } else { big_t >= hi };
                            tally.check(ok, || {
                                let y = word(q, n, yr);
                                Witness::new(
                                    q,
                                    &[&x, &y],
                                    format!("n={n} t={t}: |I_1∩I_1|={one} |I_t∩I_t|={big_t} window=[{lo},{hi}]"),
                                )
                            });
                        }
                        tally.pass(c.partner_count(xr) - nontrivial);
                    }
                });
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn ins_case(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    ins_case_sweep(cfg, tally, false)
}

pub(super) fn ins_case_prime(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    ins_case_sweep(cfg, tally, true)
}

/// Inserts `c` before 1-based position `p` of `w`.
fn insert_at(w: &[u8], p: usize, c: u8) -> Vec<u8> {
    let mut v = w[..p - 1].to_vec();
    v.push(c);
    v.extend_from_slice(&w[p - 1..]);
    v
}

pub(super) fn position(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let c = centres(cfg, q, n, tally)?;
            run_centres(
                cfg,
                &c,
                tally,
                || Counter::new(c.total),
                |c1, xr, tally| {
                    let x = word(q, n, xr);
                    c1.fill(&x, q, 1, BallKind::Insertion);
                    let b1x = ball_ranks(&x, q, 1, BallKind::Insertion);
                    let mut nontrivial = 0;
                    for &yr in c1.touched() {
                        if !c.partner(xr, yr) {
                            continue;
                        }
                        nontrivial += 1;
                        let y = word(q, n, yr);
                        let cnt = c1.get(yr);
                        let mut ok = cnt <= 2;
                        if cnt == 2 {
                            let mut common = Vec::new();
                            intersect_into(&b1x, &ball_ranks(&y, q, 1, BallKind::Insertion), &mut common);
                            let diff: Vec<usize> = (1..=n).filter(|&i| x[i - 1] != y[i - 1]).collect();
                            let (l, k) = (diff[0], *diff.last().unwrap());
                            // x[1,l-1] y_l x[l,n] and x[1,k] y_k x[k+1,n], with their y-side forms.
                            let z = insert_at(&x, l, y[l - 1]);
                            let z_from_y = insert_at(&y, k + 1, x[k - 1]);
                            let zp = insert_at(&x, k + 1, y[k - 1]);
                            let zp_from_y = insert_at(&y, l, x[l - 1]);
                            let mut forms = vec![seq::rank(&z, q), seq::rank(&zp, q)];
                            forms.sort_unstable();
                            ok = z == z_from_y && zp == zp_from_y && forms == common;
                        }
                        tally.check(ok, || Witness::new(q, &[&x, &y], format!("n={n}: |I_1∩I_1|={cnt}")));
                        if tally.done() {
                            return;
                        }
                    }
                    tally.pass(c.partner_count(xr) - nontrivial);
                },
            );
            if tally.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

pub(super) fn char_shape(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let mut shapes = [0u64; 2];
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let c = centres(cfg, q, n, tally)?;
            let mut seen = [0u64; 2];
            let mut c1 = Counter::new(c.total);
            for i in 0..c.len() {
                let xr = c.get(i);
                let x = word(q, n, xr);
                c1.fill(&x, q, 1, BallKind::Insertion);
                for &yr in c1.touched() {
                    if !c.partner(xr, yr) || c1.get(yr) != 1 {
                        continue;
                    }
                    let y = word(q, n, yr);
                    let (p, s) = common_affixes(&x, &y);
                    let (xc, yc) = (&x[p..n - s], &y[p..n - s]);
                    let found =
                        match_char_lemma(&Sequence::from_raw(q, xc.to_vec()), &Sequence::from_raw(q, yc.to_vec()));
                    let ok = match &found {
                        Some(CharCase::Short { a, c, d, ac_is_x }) => {
                            seen[0] += 1;
                            let (u, v) = if *ac_is_x { (xc, yc) } else { (yc, xc) };
                            a != c && c != d && a != d && u == [*a, *c] && v == [*c, *d]
                        }
                        Some(CharCase::Long { a, b, c, d, w, acwb_is_x }) => {
                            seen[1] += 1;
                            let (u, v) = if *acwb_is_x { (xc, yc) } else { (yc, xc) };
                            let acwb: Vec<u8> = [*a, *c].iter().chain(w.symbols()).chain([b]).copied().collect();
                            let cwbd: Vec<u8> = [*c].iter().chain(w.symbols()).chain([b, d]).copied().collect();
                            let acw = &acwb[..acwb.len() - 1];
                            let wbd = &cwbd[1..];
                            a != c && b != d && acw != wbd && u == acwb.as_slice() && v == cwbd.as_slice()
                        }
                        None => false,
                    };
                    tally.check(ok, || Witness::new(q, &[&x, &y], format!("n={n}: cores do not match either shape")));
                    if tally.done() {
                        return Ok(());
                    }
                }
            }
            tally.mark(c.exhaustive());
            shapes[0] += seen[0];
            shapes[1] += seen[1];
        }
    }
    tally.note(format!("short shape pairs={} long shape pairs={}", shapes[0], shapes[1]));
    Ok(())
}

pub(super) fn levenshtein(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            let total = word_count(q, n);
            if total > cfg.budget {
                return Err(Error::Budget { what: format!("pairs over {q}^{n}"), needed: total, budget: cfg.budget });
            }
            tally.mark(true);
            let tables: Vec<(BallTable, BallTable)> = (0..=n)
                .map(|t| {
                    (BallTable::build(q, n, t, BallKind::Deletion), BallTable::build(q, n, t, BallKind::Insertion))
                })
                .collect();
            for xr in 0..total {
                let x = word(q, n, xr);
                for yr in xr + 1..total {
                    let y = word(q, n, yr);
                    let d = indel(&x, &y);
                    let meet = |which: usize| {
                        (0..=n).find(|&t| {
                            let (a, b) =
                                if which == 0 { (&tables[t].0, &tables[t].0) } else { (&tables[t].1, &tables[t].1) };
                            intersect_count(a.ball(xr), b.ball(yr)) > 0
                        })
                    };
                    let (td, ti) = (meet(0), meet(1));
                    let ok = td.map(|t| 2 * t) == Some(d) && ti.map(|t| 2 * t) == Some(d);
                    tally.check(ok, || {
                        Witness::new(
                            q,
                            &[&x, &y],
                            format!("n={n}: d_L={d} deletion radius={td:?} insertion radius={ti:?}"),
                        )
                    });
                    if tally.done() {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn jcta(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    for &q in &cfg.q {
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for &t in cfg.t.iter().filter(|&&t| t >= 1) {
                let caps: Vec<i128> = (0..=t)
                    .map(|l| {
                        if l == 0 {
                            0
                        } else {
                            big(&n_plus_or_zero(n as i64, t as i64, t as i64, l as i64, q as u32))
                        }
                    })
                    .collect();
                let c = centres(cfg, q, n, tally)?;
                let init = || (Counter::new(c.total), Counter::new(c.total));
                run_centres(cfg, &c, tally, init, |(dc, ic), xr, tally| {
                    let x = word(q, n, xr);
                    ic.fill(&x, q, t, BallKind::Insertion);
                    if t <= n {
                        dc.fill(&x, q, t, BallKind::Deletion);
                    } else {
                        dc.clear();
                    }
                    let mut nontrivial = 0;
                    for &yr in ic.touched() {
                        if !c.partner(xr, yr) {
                            continue;
                        }
                        nontrivial += 1;
                        let y = word(q, n, yr);
                        let d = indel(&x, &y);
                        let (dd, ii) = (dc.get(yr) as i128, ic.get(yr) as i128);
                        for l in (1..=t).filter(|&l| d >= 2 * l) {
                            tally.check(dd <= ii && ii <= caps[l], || {
                                Witness::new(
                                    q,
                                    &[&x, &y],
                                    format!("n={n} t={t} l={l}: |D∩D|={dd} |I∩I|={ii} cap={}", caps[l]),
                                )
                            });
                        }
                        if tally.done() {
                            return;
                        }
                    }
                    tally.pass(c.partner_count(xr) - nontrivial);
                });
                if tally.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_ball_sizes() {
        assert_eq!(naive_ball(&[0, 0], 2, 2, BallKind::Insertion).len(), 11);
        assert_eq!(naive_ball(&[0, 1, 1], 2, 1, BallKind::Deletion).len(), 2);
    }

    #[test]
    fn deletion_coverage_matches_pairwise() {
        let (q, n, t) = (2u8, 6usize, 2usize);
        let code: Vec<u64> = (0..word_count(q, n)).filter(|r| r % 3 != 1).collect();
        let balls: Vec<Vec<u64>> = code.iter().map(|&r| ball_ranks(&word(q, n, r), q, t, BallKind::Deletion)).collect();
        let mut want = 0;
        for i in 0..code.len() {
            for j in i + 1..code.len() {
                want = want.max(intersect_count(&balls[i], &balls[j]));
            }
        }
        assert_eq!(deletion_coverage(&code, q, n, t).0, want);
    }

    #[test]
    fn split_union_on_stripped_pair() {
        // x = 0 10 1, y = 0 01 1 with u = 0, v = 1.
        let got = split_union(&[0], &[1, 0], &[0, 1], &[1], 2, 1);
        let want: BTreeSet<u64> = ball_ranks(&[0, 1, 0, 1], 2, 1, BallKind::Deletion)
            .into_iter()
            .filter(|r| ball_ranks(&[0, 0, 1, 1], 2, 1, BallKind::Deletion).contains(r))
            .collect();
        assert_eq!(got, want);
    }
}
