//! Decoding a codeword from reads in its ball, and the end-to-end sweep.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use super::{rng_for, SweepConfig, Tally, Witness};
use crate::codes::{best_params, coverage_of_ranks, enumerate_code, CodeEnv, Family};
use crate::counting::binom;
use crate::error::{pre, Error, Result};
use crate::metric::{ball_ranks, subseq, BallKind};
use crate::seq::{word_count, Sequence, SequenceSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decoded {
    Unique(Sequence),
    /// Several codewords explain every read; sorted.
    Ambiguous(Vec<Sequence>),
}

/// Index from ball members to the codewords whose ball holds them.
pub struct Decoder {
    q: u8,
    n: usize,
    t: usize,
    kind: BallKind,
    code: Vec<Sequence>,
    index: HashMap<u64, Vec<u32>>,
}

impl Decoder {
    pub fn new(code: &SequenceSet, t: usize, kind: BallKind) -> Result<Decoder> {
        pre(!code.is_empty(), "decoder needs a nonempty code")?;
        let first = &code.as_slice()[0];
        let (q, n) = (first.q(), first.len());
        pre(kind == BallKind::Insertion || t <= n, "radius exceeds length")?;
        let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
        for (i, x) in code.iter().enumerate() {
            x.same_alphabet(first)?;
            if x.len() != n {
                return Err(Error::LengthMismatch(n, x.len()));
            }
            for r in ball_ranks(x.symbols(), q, t, kind) {
                index.entry(r).or_default().push(i as u32);
            }
        }
        Ok(Decoder { q, n, t, kind, code: code.iter().cloned().collect(), index })
    }

    pub fn read_len(&self) -> usize {
        self.kind.member_len(self.n, self.t)
    }

    /// Codewords whose ball contains every read.
    pub fn candidates(&self, reads: &[Sequence]) -> Result<Vec<&Sequence>> {
        pre(!reads.is_empty(), "no reads")?;
        let len = self.read_len();
        let mut cand: Option<Vec<u32>> = None;
        for r in reads {
            if r.q() != self.q {
                return Err(Error::AlphabetMismatch(self.q, r.q()));
            }
            if r.len() != len {
                return Err(Error::LengthMismatch(len, r.len()));
            }
            let hits = self.index.get(&r.rank()).map(Vec::as_slice).unwrap_or(&[]);
            cand = Some(match cand {
                None => hits.to_vec(),
                Some(c) => c.into_iter().filter(|i| hits.binary_search(i).is_ok()).collect(),
            });
            if cand.as_ref().is_some_and(|c| c.is_empty()) {
                break;
            }
        }
        Ok(cand.unwrap_or_default().into_iter().map(|i| &self.code[i as usize]).collect())
    }

    pub fn decode(&self, reads: &[Sequence]) -> Result<Decoded> {
        let c = self.candidates(reads)?;
        match c.len() {
            0 => Err(Error::Inconsistent),
            1 => Ok(Decoded::Unique(c[0].clone())),
            _ => Ok(Decoded::Ambiguous(c.into_iter().cloned().collect())),
        }
    }
}

/// One-shot decode; builds the index each call.
pub fn reconstruct(reads: &[Sequence], code: &SequenceSet, t: usize, kind: BallKind) -> Result<Decoded> {
    Decoder::new(code, t, kind)?.decode(reads)
}

/// Calls `f` on every `k`-subset of `0..len` in lexicographic order.
fn for_each_subset(len: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    if k > len {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + len - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn contains_all(x: &[u8], reads: &[Sequence], kind: BallKind) -> bool {
    reads.iter().all(|r| match kind {
        BallKind::Insertion => subseq(x, r.symbols()),
        BallKind::Deletion => subseq(r.symbols(), x),
    })
}

pub(super) fn verify_reconstruction(cfg: &SweepConfig, tally: &mut Tally) -> Result<()> {
    let env = CodeEnv { budget: cfg.budget, ..CodeEnv::default() };
    let t = cfg.t.first().copied().unwrap_or(2);
    let plan = [
        (Family::N7, BallKind::Insertion),
        (Family::N5, BallKind::Insertion),
        (Family::N4, BallKind::Insertion),
        (Family::N3, BallKind::Insertion),
        (Family::N2, BallKind::Insertion),
        (Family::RunBounded, BallKind::Deletion),
    ];
    for &q in &cfg.q {
        for n in cfg.n_min.max(t + 1)..=cfg.n_max {
            if word_count(q, n) > cfg.budget {
                tally.note(format!("q={q} n={n}: over budget, skipped"));
                continue;
            }
            for (family, kind) in plan {
                let spec = best_params(family, n, q, &env)?;
                let code = enumerate_code(&spec, &env)?;
                if code.is_empty() {
                    tally.vacuous += 1;
                    continue;
                }
                let ranks: Vec<u64> = code.iter().map(|x| x.rank()).collect();
                let nu = coverage_of_ranks(&ranks, q, n, t, kind).0;
                let dec = Decoder::new(&code, t, kind)?;
                let k = nu + 1;
                let mut rng = rng_for(cfg, &[q as u64, n as u64, family as u64]);
                let mut trials = 0u64;
                let mut exhaustive_all = true;
                for x in code.iter() {
                    let ball: Vec<Sequence> = ball_ranks(x.symbols(), q, t, kind)
                        .into_iter()
                        .map(|r| Sequence::from_rank(q, kind.member_len(n, t), r))
                        .collect();
                    if ball.len() < k {
                        // No set of k distinct reads exists.
                        tally.vacuous += 1;
                        continue;
                    }
                    let subsets = binom(ball.len() as i64, k as i64).to_u64().unwrap_or(u64::MAX);
                    let exhaustive = subsets.saturating_mul(code.len() as u64) <= cfg.trials;
                    let run = |pick: &[usize], tally: &mut Tally| {
                        let reads: Vec<Sequence> = pick.iter().map(|&i| ball[i].clone()).collect();
                        let got = dec.decode(&reads);
                        let ok =
                            matches!(&got, Ok(Decoded::Unique(z)) if z == x) && contains_all(x.symbols(), &reads, kind);
                        tally.check(ok, || {
                            Witness::new(
                                q,
                                &[x.symbols()],
                                format!("{family} n={n} nu={nu}: {} reads gave {got:?}", reads.len()),
                            )
                        });
                    };
                    if exhaustive {
                        for_each_subset(ball.len(), k, &mut |pick| {
                            run(pick, tally);
                            trials += 1;
                            !tally.done()
                        });
                    } else {
                        exhaustive_all = false;
                        let Some(rng) = rng.as_mut() else {
                            return Err(Error::Budget {
                                what: format!("{family} read subsets"),
                                needed: subsets,
                                budget: cfg.trials,
                            });
                        };
                        for _ in 0..cfg.samples.max(1) {
                            let pick = sample(rng, ball.len(), k).into_vec();
                            run(&pick, tally);
                            trials += 1;
                        }
                    }
                    if tally.done() {
                        return Ok(());
                    }
                }
                tally.mark(exhaustive_all);
                if let Some(rng) = rng.as_mut() {
                    mixed_trials(&dec, &code, q, n, t, kind, k, cfg.samples, rng, tally);
                }
                tally.note(format!("{family} q={q} n={n}: |C|={} nu={nu} trials={trials}", code.len()));
            }
        }
    }
    Ok(())
}

/// Reads drawn from the balls of two codewords: a unique answer must
/// explain every read, and no answer at all must mean no codeword does.
#[allow(clippy::too_many_arguments)]
fn mixed_trials(
    dec: &Decoder,
    code: &SequenceSet,
    q: u8,
    n: usize,
    t: usize,
    kind: BallKind,
    k: usize,
    samples: usize,
    rng: &mut impl Rng,
    tally: &mut Tally,
) {
    if code.len() < 2 {
        return;
    }
    let len = kind.member_len(n, t);
    for _ in 0..samples {
        let a = &code.as_slice()[rng.gen_range(0..code.len())];
        let b = &code.as_slice()[rng.gen_range(0..code.len())];
        let pool: Vec<u64> =
            ball_ranks(a.symbols(), q, t, kind).into_iter().chain(ball_ranks(b.symbols(), q, t, kind)).collect();
        let mut reads: Vec<Sequence> = sample(rng, pool.len(), k.min(pool.len()))
            .into_iter()
            .map(|i| Sequence::from_rank(q, len, pool[i]))
            .collect();
        reads.sort();
        reads.dedup();
        let explaining: Vec<&Sequence> = code.iter().filter(|c| contains_all(c.symbols(), &reads, kind)).collect();
        let ok = match dec.decode(&reads) {
            Ok(Decoded::Unique(z)) => explaining.len() == 1 && explaining[0] == &z,
            Ok(Decoded::Ambiguous(v)) => v.len() == explaining.len() && v.iter().zip(&explaining).all(|(p, q)| p == *q),
            Err(Error::Inconsistent) => explaining.is_empty(),
            Err(_) => false,
        };
        tally.check(ok, || {
            Witness::new(q, &[a.symbols(), b.symbols()], format!("n={n}: decoder disagrees with a scan on mixed reads"))
        });
    }
}
