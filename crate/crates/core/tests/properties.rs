use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use recon_core::characterize::classify_pair;
use recon_core::counting::{binom, insertion_ball_size, run_bounded_size};
use recon_core::harness::{emit_table, parse_words, write_words, Decoded, Decoder, Format, SweepConfig, TableKind};
use recon_core::metric::{
    ball_intersection, deletion_ball, injection_phi, insertion_ball, is_subsequence, lcs_len, levenshtein,
};
use recon_core::seq::{decompose_pair, in_period_restricted, is_t_le_periodic, runs};
use recon_core::{BallKind, Sequence, SequenceSet};

fn word(q: u8, lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0..q, lens).prop_map(move |s| Sequence::new(q, s).unwrap())
}

fn any_word(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Sequence> {
    (2u8..=4).prop_flat_map(move |q| word(q, lens.clone()))
}

fn pair(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Sequence, Sequence)> {
    (2u8..=3, lens).prop_flat_map(|(q, n)| (word(q, n..=n), word(q, n..=n)))
}

/// Subsequence test written out with an explicit DP table.
fn embeds(z: &[u8], x: &[u8]) -> bool {
    let mut best = vec![vec![0usize; x.len() + 1]; z.len() + 1];
    for i in 1..=z.len() {
        for j in 1..=x.len() {
            best[i][j] = if z[i - 1] == x[j - 1] { best[i - 1][j - 1] + 1 } else { best[i - 1][j].max(best[i][j - 1]) };
        }
    }
    best[z.len()][x.len()] == z.len()
}

fn all_words(q: u8, n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..(q as u64).pow(n as u32)).map(move |mut r| {
        let mut v = vec![0; n];
        for s in v.iter_mut().rev() {
            *s = (r % q as u64) as u8;
            r /= q as u64;
        }
        v
    })
}

/// Every word of length `n+t` that holds `x` as a subsequence.
fn scan_insertion_ball(x: &Sequence, t: usize) -> BTreeSet<Vec<u8>> {
    all_words(x.q(), x.len() + t).filter(|y| embeds(x.symbols(), y)).collect()
}

/// Every word of length `n-t` that is a subsequence of `x`.
fn scan_deletion_ball(x: &Sequence, t: usize) -> BTreeSet<Vec<u8>> {
    all_words(x.q(), x.len() - t).filter(|z| embeds(z, x.symbols())).collect()
}

fn as_set(s: &SequenceSet) -> BTreeSet<Vec<u8>> {
    s.iter().map(|w| w.symbols().to_vec()).collect()
}

fn count(v: num_bigint::BigInt) -> usize {
    v.to_usize().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn rank_round_trips(x in any_word(0..=12)) {
        prop_assert_eq!(Sequence::from_rank(x.q(), x.len(), x.rank()), x);
    }

    #[test]
    fn word_files_round_trip(words in prop::collection::vec(word(3, 0..=6), 0..6)) {
        let mut buf = Vec::new();
        write_words(&mut buf, 3, &words).unwrap();
        let back = parse_words(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.q, 3);
        prop_assert_eq!(back.words, words);
    }

    #[test]
    fn insertion_ball_matches_scan_and_size_law(x in any_word(0..=5), t in 0usize..=2) {
        let b = insertion_ball(&x, t);
        prop_assert_eq!(as_set(&b), scan_insertion_ball(&x, t));
        prop_assert_eq!(b.len(), count(insertion_ball_size(x.len() as i64, t as i64, x.q() as u32)));
    }

    #[test]
    fn deletion_ball_matches_scan_and_run_bound(x in any_word(1..=7), t in 0usize..=3) {
        prop_assume!(t <= x.len());
        let b = deletion_ball(&x, t).unwrap();
        prop_assert_eq!(as_set(&b), scan_deletion_ball(&x, t));
        let r = runs(&x) as i64;
        prop_assert!(b.len() <= count(binom(r + t as i64 - 1, t as i64)));
    }

    #[test]
    fn ball_size_recurrence(q in 2u32..=5, n in 1i64..=40, t in 1i64..=6) {
        prop_assert_eq!(
            insertion_ball_size(n, t, q),
            insertion_ball_size(n - 1, t, q) + (q - 1) * insertion_ball_size(n, t - 1, q)
        );
    }

    #[test]
    fn deletion_overlap_injects_into_insertion_overlap((x, y) in pair(1..=6), t in 1usize..=2) {
        prop_assume!(x != y && t <= x.len());
        let dd = ball_intersection(&x, &y, t, BallKind::Deletion).unwrap();
        let ii = ball_intersection(&x, &y, t, BallKind::Insertion).unwrap();
        let mut images = BTreeSet::new();
        for z in &dd {
            let w = injection_phi(&x, &y, z, t).unwrap();
            prop_assert!(ii.contains(&w), "image {:?} of {:?} not common", w, z);
            images.insert(w);
        }
        prop_assert_eq!(images.len(), dd.len());
        prop_assert!(dd.len() <= ii.len());
    }

    #[test]
    fn overlaps_are_empty_together((x, y) in pair(1..=6), t in 1usize..=3) {
        prop_assume!(t <= x.len());
        let dd = ball_intersection(&x, &y, t, BallKind::Deletion).unwrap();
        let ii = ball_intersection(&x, &y, t, BallKind::Insertion).unwrap();
        prop_assert_eq!(dd.is_empty(), ii.is_empty());
        prop_assert_eq!(dd.is_empty(), lcs_len(&x, &y) + t < x.len());
    }

    #[test]
    fn levenshtein_is_a_metric(x in word(2, 0..=7), y in word(2, 0..=7), z in word(2, 0..=7)) {
        let d = levenshtein(&x, &y);
        prop_assert_eq!(d, levenshtein(&y, &x));
        prop_assert_eq!(d == 0, x == y);
        prop_assert_eq!(d, x.len() + y.len() - 2 * lcs_len(&x, &y));
        prop_assert!(levenshtein(&x, &z) <= d + levenshtein(&y, &z));
    }

    #[test]
    fn subsequence_agrees_with_dp(z in word(3, 0..=5), x in word(3, 0..=8)) {
        prop_assert_eq!(is_subsequence(&z, &x), embeds(z.symbols(), x.symbols()));
    }

    #[test]
    fn decomposition_rebuilds_both_words((x, y) in pair(0..=8)) {
        let d = decompose_pair(&x, &y).unwrap();
        prop_assert_eq!(d.prefix.concat(&d.x_core).concat(&d.suffix), x.clone());
        prop_assert_eq!(d.prefix.concat(&d.y_core).concat(&d.suffix), y.clone());
        if x != y {
            prop_assert_ne!(d.x_core.at(1), d.y_core.at(1));
            prop_assert_ne!(d.x_core.at(d.x_core.len()), d.y_core.at(d.y_core.len()));
        }
    }

    #[test]
    fn slot_profile_counts_the_double_insertion_overlap((x, y) in pair(4..=7)) {
        prop_assume!(levenshtein(&x, &y) >= 4);
        let p = classify_pair(&x, &y).unwrap();
        let d = decompose_pair(&x, &y).unwrap();
        let common = ball_intersection(&d.x_core, &d.y_core, 2, BallKind::Insertion).unwrap();
        prop_assert_eq!(p.total(), common.len());
        prop_assert_eq!(p.union(), common);
        for slot in 1..=6 {
            prop_assert!(p.size(slot) <= 1);
        }
    }

    #[test]
    fn period_restriction_matches_window_scan(x in word(2, 0..=10), t in 1usize..=3, extra in 0usize..=4) {
        let l = t + extra;
        let scan = x.len() < l + 1
            || (1..=x.len() - l).all(|i| !is_t_le_periodic(&x.slice(i, i + l), t).unwrap());
        prop_assert_eq!(in_period_restricted(&x, t, l).unwrap(), scan);
    }

    #[test]
    fn decoder_never_names_a_wrong_codeword(
        code in prop::collection::btree_set(word(2, 5..=5), 1..8),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 1..5),
        kind in prop_oneof![Just(BallKind::Insertion), Just(BallKind::Deletion)],
    ) {
        let code: SequenceSet = code.into_iter().collect();
        let dec = Decoder::new(&code, 1, kind).unwrap();
        let reads: Vec<Sequence> = picks
            .iter()
            .map(|(c, r)| {
                let x = c.get(code.as_slice());
                let ball: Vec<Sequence> = recon_core::metric::ball(x, 1, kind).unwrap().iter().cloned().collect();
                r.get(&ball).clone()
            })
            .collect();
        let holds = |x: &Sequence| reads.iter().all(|r| match kind {
            BallKind::Insertion => embeds(x.symbols(), r.symbols()),
            BallKind::Deletion => embeds(r.symbols(), x.symbols()),
        });
        let explaining: Vec<&Sequence> = code.iter().filter(|x| holds(x)).collect();
        match dec.decode(&reads) {
            Ok(Decoded::Unique(x)) => prop_assert_eq!(explaining, vec![&x]),
            Ok(Decoded::Ambiguous(v)) => prop_assert_eq!(explaining, v.iter().collect::<Vec<_>>()),
            Err(_) => prop_assert!(explaining.is_empty()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn run_bounded_size_matches_count(q in 2u8..=3, n in 1usize..=8, r in 1usize..=8) {
        let scan = all_words(q, n).filter(|w| runs(&Sequence::new(q, w.clone()).unwrap()) <= r).count();
        prop_assert_eq!(count(run_bounded_size(n as i64, r as i64, q as u32)), scan);
    }

    #[test]
    fn tables_repeat_byte_for_byte(n_max in 3usize..=6, csv in any::<bool>()) {
        let cfg = SweepConfig { q: vec![2], n_min: 1, n_max, t: vec![1, 2], budget: 1 << 8, ..SweepConfig::default() };
        let format = if csv { Format::Csv } else { Format::Jsonl };
        let run = |kind| {
            let mut buf = Vec::new();
            emit_table(kind, &cfg, format, &mut buf).unwrap();
            buf
        };
        for kind in [TableKind::Counts, TableKind::Coverage] {
            prop_assert_eq!(run(kind), run(kind));
        }
    }
}
