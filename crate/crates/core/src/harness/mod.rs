//! Verification sweeps, reconstruction from reads, and table output.
//!
//! Every sweep is exhaustive while `q^n` fits the enumeration budget. Past
//! it, sweeps that can work from sampled centres draw them from a seeded
//! generator and label the record as sampled; the rest stop with a budget
//! error.

mod balls;
mod codes;
mod io;
mod reconstruct;
mod rho;
mod structure;
mod table;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::metric::{for_each_ball_member, BallKind};
use crate::seq::{self, format_symbols};

pub use io::{parse_words, read_words, write_words, WordFile};
pub use reconstruct::{reconstruct, Decoded, Decoder};
pub use rho::{min_redundancy_search, RhoSearch};
pub use table::{emit_table, TableKind, TABLE_SCHEMA};

/// Output encoding for records and tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "json" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Unknown { kind: "format", name: s.into() }),
        }
    }
}

/// Parameters of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q: Vec<u8>,
    pub n_min: usize,
    pub n_max: usize,
    pub t: Vec<usize>,
    pub kinds: Vec<BallKind>,
    /// Ids for [`verify_selected`].
    pub theorems: Vec<String>,
    pub threads: usize,
    /// Largest `q^n` enumerated exhaustively.
    pub budget: u64,
    /// Seed for sampled centres; without one, sweeps past the budget fail.
    pub seed: Option<u64>,
    /// Sampled centres per `(q, n)` when past the budget.
    pub samples: usize,
    /// Lengths of the seeded extension used by the structural sweeps.
    pub sample_lengths: Option<(usize, usize)>,
    /// Largest number of read subsets decoded exhaustively per code.
    pub trials: u64,
    /// Stop at the first violation.
    pub fail_fast: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q: vec![2],
            n_min: 1,
            n_max: 6,
            t: vec![1, 2],
            kinds: vec![BallKind::Insertion],
            theorems: Vec::new(),
            threads: 1,
            budget: crate::codes::DEFAULT_ENUM_BUDGET,
            seed: None,
            samples: 0,
            sample_lengths: None,
            trials: 200_000,
            fail_fast: true,
            out: None,
            format: Format::Jsonl,
        }
    }
}

impl SweepConfig {
    fn grid(q: &[u8], n_min: usize, n_max: usize, t: &[usize]) -> SweepConfig {
        SweepConfig { q: q.to_vec(), n_min, n_max, t: t.to_vec(), ..Default::default() }
    }

    /// The declared grid of a registered check.
    pub fn for_theorem(id: &str) -> Result<SweepConfig> {
        Ok((lookup(id)?.grid)())
    }

    pub fn validate(&self) -> Result<()> {
        pre(!self.q.is_empty(), "no alphabet sizes given")?;
        for &q in &self.q {
            seq::check_q(q)?;
        }
        pre(self.threads >= 1, "need at least one thread")?;
        let t_max = self.t.iter().copied().max().unwrap_or(0);
        for &q in &self.q {
            let bits = (self.n_max + t_max) as f64 * (q as f64).log2();
            pre(bits < 63.0, format!("words of length {} over q={q} do not fit a rank", self.n_max + t_max))?;
        }
        Ok(())
    }

    fn params(&self) -> BTreeMap<String, String> {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("q".into(), list(&self.q.iter().map(|&q| q as usize).collect::<Vec<_>>()));
        m.insert("n".into(), format!("{}..={}", self.n_min, self.n_max));
        m.insert("t".into(), list(&self.t));
        m.insert("budget".into(), self.budget.to_string());
        if let Some(s) = self.seed {
            m.insert("seed".into(), s.to_string());
            m.insert("samples".into(), self.samples.to_string());
        }
        if let Some((a, b)) = self.sample_lengths {
            m.insert("sample_lengths".into(), format!("{a}..={b}"));
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
    /// Exhaustive on part of the grid, sampled on the rest.
    Mixed,
}

/// A pair (or single word) singled out by a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub q: u8,
    pub words: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub(crate) fn new(q: u8, words: &[&[u8]], detail: impl Into<String>) -> Witness {
        Witness { q, words: words.iter().map(|w| format_symbols(w)).collect(), detail: detail.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} ({}) {}", self.q, self.words.join(", "), self.detail)
    }
}

/// Outcome of one sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
    pub mode: Mode,
    pub checked: u64,
    /// Cases whose hypothesis cannot be met on the grid.
    pub vacuous: u64,
    pub violations: u64,
    /// First violation found, in sweep order.
    pub witness: Option<Witness>,
    /// Case attaining the extreme value the sweep tracks.
    pub extremal: Option<Witness>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl VerdictRecord {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} {}: {:?} checked={} violations={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.theorem,
            self.mode,
            self.checked,
            self.violations
        );
        if self.vacuous > 0 {
            s.push_str(&format!(" vacuous={}", self.vacuous));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        if let Some(w) = &self.extremal {
            s.push_str(&format!(" extremal: {w}"));
        }
        s
    }
}

pub const VERDICT_SCHEMA: &str = "recon-verdict v1";

const VERDICT_COLUMNS: [&str; 10] =
    ["theorem", "mode", "checked", "vacuous", "violations", "witness", "extremal", "wall_ms", "params", "notes"];

/// Writes records with a schema line first.
pub fn write_verdicts(records: &[VerdictRecord], format: Format, out: &mut dyn std::io::Write) -> Result<()> {
    match format {
        Format::Jsonl => {
            writeln!(out, "{}", serde_json::json!({ "schema": VERDICT_SCHEMA }))?;
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string()))?)?;
            }
        }
        Format::Csv => {
            writeln!(out, "# {VERDICT_SCHEMA}")?;
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(VERDICT_COLUMNS).map_err(csv_err)?;
            for r in records {
                let wit = |w: &Option<Witness>| w.as_ref().map(|w| w.to_string()).unwrap_or_default();
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                w.write_record([
                    r.theorem.clone(),
                    format!("{:?}", r.mode).to_lowercase(),
                    r.checked.to_string(),
                    r.vacuous.to_string(),
                    r.violations.to_string(),
                    wit(&r.witness),
                    wit(&r.extremal),
                    r.wall_ms.to_string(),
                    params.join(" "),
                    r.notes.join("; "),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Running totals of a sweep.
pub(crate) struct Tally {
    fail_fast: bool,
    pub checked: u64,
    pub vacuous: u64,
    pub violations: u64,
    witness: Option<Witness>,
    extremal: Option<(i128, Witness)>,
    notes: Vec<String>,
    exhaustive: bool,
    sampled: bool,
}

impl Tally {
    pub(crate) fn new(fail_fast: bool) -> Tally {
        Tally {
            fail_fast,
            checked: 0,
            vacuous: 0,
            violations: 0,
            witness: None,
            extremal: None,
            notes: Vec::new(),
            exhaustive: false,
            sampled: false,
        }
    }

    fn child(&self) -> Tally {
        Tally::new(self.fail_fast)
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub(crate) fn pass(&mut self, count: u64) {
        self.checked += count;
    }

    /// Keeps the first case with the strictly largest value.
    pub(crate) fn extremal(&mut self, value: i128, witness: impl FnOnce() -> Witness) {
        if self.extremal.as_ref().map_or(true, |(v, _)| value > *v) {
            self.extremal = Some((value, witness()));
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// True once a violation has been seen under fail-fast.
    pub(crate) fn done(&self) -> bool {
        self.fail_fast && self.violations > 0
    }

    pub(crate) fn mark(&mut self, exhaustive: bool) {
        if exhaustive {
            self.exhaustive = true;
        } else {
            self.sampled = true;
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.vacuous += other.vacuous;
        self.violations += other.violations;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        if let Some((v, w)) = other.extremal {
            self.extremal(v, || w);
        }
        self.notes.extend(other.notes);
        self.exhaustive |= other.exhaustive;
        self.sampled |= other.sampled;
    }

    fn finish(self, theorem: &str, cfg: &SweepConfig, start: Instant) -> VerdictRecord {
        let mode = match (self.exhaustive, self.sampled) {
            (_, false) => Mode::Exhaustive,
            (false, true) => Mode::Sampled,
            (true, true) => Mode::Mixed,
        };
        VerdictRecord {
            theorem: theorem.to_string(),
            params: cfg.params(),
            mode,
            checked: self.checked,
            vacuous: self.vacuous,
            violations: self.violations,
            witness: self.witness,
            extremal: self.extremal.map(|(_, w)| w),
            notes: self.notes,
            wall_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Centres of a sweep over `Σ_q^n`.
pub(crate) struct Centres {
    pub total: u64,
    sampled: Option<Vec<u64>>,
}

impl Centres {
    pub(crate) fn exhaustive(&self) -> bool {
        self.sampled.is_none()
    }

    fn len(&self) -> u64 {
        self.sampled.as_ref().map_or(self.total, |v| v.len() as u64)
    }

    fn get(&self, i: u64) -> u64 {
        self.sampled.as_ref().map_or(i, |v| v[i as usize])
    }

    /// Whether `y` is a partner of centre `x` not already covered from the
    /// other side: `y > x` when exhaustive, `y ≠ x` when sampled.
    pub(crate) fn partner(&self, x: u64, y: u64) -> bool {
        if self.exhaustive() {
            y > x
        } else {
            y != x
        }
    }

    /// Number of partners of `x`.
    pub(crate) fn partner_count(&self, x: u64) -> u64 {
        if self.exhaustive() {
            self.total - 1 - x
        } else {
            self.total - 1
        }
    }
}

fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |acc, &p| (acc ^ p).wrapping_mul(0x1000_0000_01b3).rotate_left(17))
}

pub(crate) fn rng_for(cfg: &SweepConfig, parts: &[u64]) -> Option<ChaCha8Rng> {
    cfg.seed.map(|s| ChaCha8Rng::seed_from_u64(mix_seed(s, parts)))
}

/// Exhaustive centres when `q^n` fits the budget, seeded samples otherwise.
pub(crate) fn centres(cfg: &SweepConfig, q: u8, n: usize, tally: &mut Tally) -> Result<Centres> {
    let total = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total <= cfg.budget {
        tally.mark(true);
        return Ok(Centres { total, sampled: None });
    }
    match rng_for(cfg, &[q as u64, n as u64]) {
        Some(mut rng) if cfg.samples > 0 => {
            let mut v: Vec<u64> = (0..cfg.samples).map(|_| rng.gen_range(0..total)).collect();
            v.sort_unstable();
            v.dedup();
            tally.mark(false);
            tally.note(format!("q={q} n={n}: {} sampled centres", v.len()));
            Ok(Centres { total, sampled: Some(v) })
        }
        _ => Err(Error::Budget { what: format!("sweep over {q}^{n}"), needed: total, budget: cfg.budget }),
    }
}

/// Runs `body` on every centre, sharded over `cfg.threads` with shards
/// merged in centre order.
pub(crate) fn run_centres<S>(
    cfg: &SweepConfig,
    centres: &Centres,
    tally: &mut Tally,
    init: impl Fn() -> S + Sync,
    body: impl Fn(&mut S, u64, &mut Tally) + Sync,
) {
    let len = centres.len();
    if cfg.threads <= 1 || len < 64 {
        let mut state = init();
        for i in 0..len {
            if tally.done() {
                return;
            }
            body(&mut state, centres.get(i), tally);
        }
        return;
    }
    use rayon::prelude::*;
    let shards = (cfg.threads as u64 * 4).min(len);
    let step = len.div_ceil(shards);
    let run_shard = |s: u64| {
        let mut t = tally.child();
        let mut state = init();
        for i in s * step..((s + 1) * step).min(len) {
            if t.done() {
                break;
            }
            body(&mut state, centres.get(i), &mut t);
        }
        t
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build();
    let parts: Vec<Tally> = match pool {
        Ok(pool) => pool.install(|| (0..shards).into_par_iter().map(run_shard).collect()),
        Err(_) => (0..shards).map(run_shard).collect(),
    };
    for p in parts {
        if tally.done() {
            break;
        }
        tally.merge(p);
    }
}

/// Multiset counter over word ranks, dense for small spaces.
pub(crate) struct Counter {
    dense: Vec<u32>,
    sparse: HashMap<u64, u32>,
    touched: Vec<u64>,
}

const DENSE_LIMIT: u64 = 1 << 22;

impl Counter {
    pub(crate) fn new(space: u64) -> Counter {
        let dense = if space <= DENSE_LIMIT { vec![0; space as usize] } else { Vec::new() };
        Counter { dense, sparse: HashMap::new(), touched: Vec::new() }
    }

    pub(crate) fn clear(&mut self) {
        if self.dense.is_empty() {
            self.sparse.clear();
        } else {
            for &r in &self.touched {
                self.dense[r as usize] = 0;
            }
        }
        self.touched.clear();
    }

    pub(crate) fn add(&mut self, r: u64) {
        let c = if self.dense.is_empty() { self.sparse.entry(r).or_insert(0) } else { &mut self.dense[r as usize] };
        if *c == 0 {
            self.touched.push(r);
        }
        *c += 1;
    }

    pub(crate) fn get(&self, r: u64) -> u32 {
        if self.dense.is_empty() {
            self.sparse.get(&r).copied().unwrap_or(0)
        } else {
            self.dense.get(r as usize).copied().unwrap_or(0)
        }
    }

    /// Sorts the touched list; call after a run of [`Counter::add`].
    pub(crate) fn finish(&mut self) {
        self.touched.sort_unstable();
    }

    /// Ranks with a nonzero count, sorted once [`Counter::finish`] ran.
    pub(crate) fn touched(&self) -> &[u64] {
        &self.touched
    }

    /// Resets, then counts `|B_t(x) ∩ B_t(y)|` for every `y` (including `x`)
    /// by walking out to each ball member and back.
    pub(crate) fn fill(&mut self, x: &[u8], q: u8, t: usize, kind: BallKind) {
        self.clear();
        let back = match kind {
            BallKind::Insertion => BallKind::Deletion,
            BallKind::Deletion => BallKind::Insertion,
        };
        for_each_ball_member(x, q, t, kind, &mut |z| {
            for_each_ball_member(z, q, t, back, &mut |y| self.add(seq::rank(y, q)));
        });
        self.finish();
    }
}

pub(crate) fn word(q: u8, n: usize, r: u64) -> Vec<u8> {
    let mut v = vec![0; n];
    seq::unrank(r, q, &mut v);
    v
}

type Check = fn(&SweepConfig, &mut Tally) -> Result<()>;

pub(crate) struct Entry {
    pub id: &'static str,
    pub about: &'static str,
    check: Check,
    grid: fn() -> SweepConfig,
}

fn with(f: impl FnOnce(&mut SweepConfig), base: SweepConfig) -> SweepConfig {
    let mut c = base;
    f(&mut c);
    c
}

pub(crate) static REGISTRY: &[Entry] = &[
    Entry {
        id: "connection",
        about: "|D_t(x)∩D_t(y)| <= |I_t(x)∩I_t(y)| with an injective map between them",
        check: balls::connection,
        grid: || SweepConfig::grid(&[2, 3], 1, 7, &[1, 2]),
    },
    Entry {
        id: "del_run",
        about: "|D_t(x)| <= C(r(x)+t-1, t)",
        check: balls::del_run,
        grid: || SweepConfig::grid(&[2, 3], 1, 8, &[1, 2, 3]),
    },
    Entry {
        id: "del_intersect",
        about: "deletion-ball intersections split over a common prefix and suffix",
        check: balls::del_intersect,
        grid: || SweepConfig::grid(&[2], 1, 7, &[1, 2]),
    },
    Entry {
        id: "del_int_run",
        about: "|D_t(x)∩D_t(y)| <= C(r(x)+t-3, t-1) + C(r(y)+t-3, t-1)",
        check: balls::del_int_run,
        grid: || SweepConfig::grid(&[2, 3], 1, 7, &[1, 2, 3]),
    },
    Entry {
        id: "del_case",
        about: "run-bounded code: size and deletion read coverage",
        check: balls::del_case,
        grid: || SweepConfig::grid(&[2, 3], 4, 10, &[2, 3]),
    },
    Entry {
        id: "ins_ball_size",
        about: "insertion ball size law and its recurrence",
        check: balls::ins_ball_size,
        grid: || SweepConfig::grid(&[2, 3], 1, 7, &[1, 2, 3]),
    },
    Entry {
        id: "n_plus_max",
        about: "closed form equals the brute-force maximum intersection under a distance constraint",
        check: balls::n_plus_max,
        grid: || SweepConfig::grid(&[2, 3], 1, 5, &[1, 2, 3]),
    },
    Entry {
        id: "ins_case",
        about: "pairs with one common single supersequence: excess over I_{t-1}(z) <= Delta; read-count equivalence",
        check: balls::ins_case,
        grid: || SweepConfig::grid(&[2, 3], 2, 6, &[2, 3]),
    },
    Entry {
        id: "ins_case_prime",
        about: "the tighter Delta' bound on its hypothesis subset",
        check: balls::ins_case_prime,
        grid: || SweepConfig::grid(&[2, 3], 2, 6, &[2, 3]),
    },
    Entry {
        id: "position",
        about: "|I_1(x)∩I_1(y)| <= 2 and the closed forms of the two common words",
        check: balls::position,
        grid: || SweepConfig::grid(&[2, 3, 4], 1, 7, &[1]),
    },
    Entry {
        id: "char",
        about: "pairs with exactly one common single supersequence have the {ac,cd} or {acwb,cwbd} shape",
        check: balls::char_shape,
        grid: || SweepConfig::grid(&[2, 3], 1, 6, &[1]),
    },
    Entry {
        id: "classify",
        about: "slot profile equals the brute-force double-insertion intersection, each slot at most one word",
        check: structure::classify,
        grid: || SweepConfig::grid(&[2, 3], 2, 6, &[2]),
    },
    Entry {
        id: "table1",
        about: "slot occupancy at (l, k) is equivalent to the interval equalities of its table row",
        check: structure::table1,
        grid: || SweepConfig::grid(&[2, 3], 2, 6, &[2]),
    },
    Entry {
        id: "claim14",
        about: "slots 1 and 4 both occupied forces the swapped alternating split",
        check: structure::claim14,
        grid: || SweepConfig::grid(&[2, 3], 2, 6, &[2]),
    },
    Entry {
        id: "characterization_N2",
        about: "structure of pairs with at least 2 common double supersequences",
        check: structure::characterization_n2,
        grid: structure_grid,
    },
    Entry {
        id: "characterization_N3",
        about: "structure of pairs with at least 3 common double supersequences",
        check: structure::characterization_n3,
        grid: structure_grid,
    },
    Entry {
        id: "characterization_N4",
        about: "structure of pairs with at least 4 common double supersequences",
        check: structure::characterization_n4,
        grid: structure_grid,
    },
    Entry {
        id: "characterization_N5",
        about: "structure of pairs with at least 5 common double supersequences",
        check: structure::characterization_n5,
        grid: structure_grid,
    },
    Entry {
        id: "codes_N7",
        about: "nu(C; I_2) <= 6 and nu(C; D_2) <= nu(C; I_2) on every class",
        check: codes::codes_n7,
        grid: codes_grid,
    },
    Entry {
        id: "codes_N5",
        about: "nu(C; I_2) <= 4 and nu(C; D_2) <= nu(C; I_2) on every class",
        check: codes::codes_n5,
        grid: codes_grid,
    },
    Entry {
        id: "codes_N4",
        about: "nu(C; I_2) <= 3 and nu(C; D_2) <= nu(C; I_2) on every class",
        check: codes::codes_n4,
        grid: codes_grid,
    },
    Entry {
        id: "codes_N3",
        about: "nu(C; I_2) <= 2 and nu(C; D_2) <= nu(C; I_2) on every class",
        check: codes::codes_n3,
        grid: codes_grid,
    },
    Entry {
        id: "codes_N2",
        about: "nu(C; I_2) <= 1 and nu(C; D_2) <= nu(C; I_2) on every class",
        check: codes::codes_n2,
        grid: codes_grid,
    },
    Entry {
        id: "partition",
        about: "blockwise single-deletion confusable pairs have small sign changes and VT differences",
        check: codes::partition,
        grid: || SweepConfig::grid(&[2, 3], 1, 6, &[1, 2]),
    },
    Entry {
        id: "x_eq_y",
        about: "few sign changes and vanishing VT differences force x = y",
        check: codes::x_eq_y,
        grid: || SweepConfig::grid(&[2, 3], 1, 6, &[1, 2]),
    },
    Entry {
        id: "period_density",
        about: "at least half of all words avoid long windows of small period",
        check: codes::period_density,
        grid: || SweepConfig::grid(&[2], 1, 14, &[1, 2, 3, 4]),
    },
    Entry {
        id: "single_insertion",
        about: "every class of the accumulated-differential VT code corrects one insertion",
        check: codes::single_insertion,
        grid: || SweepConfig::grid(&[2, 3], 1, 7, &[1]),
    },
    Entry {
        id: "n3_slots",
        about: "two-syndrome classes keep distance 4 and leave slots 1, 2, 4, 5 empty",
        check: codes::n3_slots,
        grid: || SweepConfig::grid(&[2, 3], 2, 7, &[2]),
    },
    Entry {
        id: "aux4",
        about: "the auxiliary code separates double swapped alternating patterns",
        check: codes::aux4,
        grid: || SweepConfig::grid(&[2, 3], 2, 8, &[2]),
    },
    Entry {
        id: "separator",
        about: "equal separator colors with a short core imply disjoint double insertion balls",
        check: codes::separator,
        grid: || SweepConfig::grid(&[2], 1, 10, &[2]),
    },
    Entry {
        id: "levenshtein",
        about: "smallest meeting radius of deletion and insertion balls equals half the distance",
        check: balls::levenshtein,
        grid: || SweepConfig::grid(&[2], 1, 7, &[1]),
    },
    Entry {
        id: "jcta",
        about: "|D_t∩D_t| <= |I_t∩I_t| <= N+(n,t,t,l) for pairs at distance >= 2l",
        check: balls::jcta,
        grid: || SweepConfig::grid(&[2], 1, 6, &[1, 2, 3]),
    },
    Entry {
        id: "reconstruct",
        about: "nu+1 distinct reads decode every codeword of each constructed code",
        check: reconstruct::verify_reconstruction,
        grid: || {
            with(
                |c| {
                    c.seed = Some(1);
                    c.samples = 40;
                    c.budget = 1 << 8;
                },
                SweepConfig::grid(&[2, 3], 4, 8, &[2]),
            )
        },
    },
];

fn structure_grid() -> SweepConfig {
    with(
        |c| {
            c.seed = Some(1);
            c.samples = 120;
            c.sample_lengths = Some((17, 24));
        },
        SweepConfig::grid(&[2, 3], 2, 6, &[2]),
    )
}

fn codes_grid() -> SweepConfig {
    with(|c| c.budget = 1 << 12, SweepConfig::grid(&[2, 3], 2, 12, &[2]))
}

fn lookup(id: &str) -> Result<&'static Entry> {
    REGISTRY
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Unknown { kind: "theorem id", name: id.into() })
}

/// Registered ids with a one-line description.
pub fn registry() -> Vec<(&'static str, &'static str)> {
    REGISTRY.iter().map(|e| (e.id, e.about)).collect()
}

/// Runs one registered check.
pub fn verify(id: &str, cfg: &SweepConfig) -> Result<VerdictRecord> {
    let entry = lookup(id)?;
    cfg.validate()?;
    let start = Instant::now();
    let mut tally = Tally::new(cfg.fail_fast);
    (entry.check)(cfg, &mut tally)?;
    Ok(tally.finish(entry.id, cfg, start))
}

/// Runs every id in `cfg.theorems` (all of them when empty), each on `cfg`.
pub fn verify_selected(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    let ids: Vec<&str> = if cfg.theorems.is_empty() {
        REGISTRY.iter().map(|e| e.id).collect()
    } else {
        cfg.theorems.iter().map(|s| s.as_str()).collect()
    };
    ids.into_iter().map(|id| verify(id, cfg)).collect()
}
