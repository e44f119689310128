//! `recon`: run verification sweeps, build codes, emit tables and decode
//! reads from the command line.
//!
//! Exit status is 0 when every check passes, 1 on a violation and 2 on a
//! usage, input or budget error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use recon_core::codes::{
    best_params, enumerate_code, read_coverage, redundancy_of_size, CodeEnv, CodeFamilySpec, Family,
};
use recon_core::harness::{
    emit_table, min_redundancy_search, read_words, reconstruct, registry, verify, write_verdicts, write_words, Decoded,
    Format, SweepConfig, TableKind,
};
use recon_core::BallKind;

#[derive(Parser)]
#[command(name = "recon", version, about = "Reconstruction codes for insertions and deletions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List registered checks.
    List,
    /// Run registered checks; `all` runs every one on its own grid.
    Verify {
        /// Check ids, or `all`.
        #[arg(required = true)]
        ids: Vec<String>,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Keep going after the first violation.
        #[arg(long)]
        keep_going: bool,
    },
    /// Enumerate a code or measure its read coverage.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Emit a table of counts, coverage or redundancy.
    Table {
        /// counts, coverage or redundancy.
        kind: TableKind,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Largest code whose pairwise ball intersections stay below N.
    Rho {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        #[arg(long = "N", alias = "reads")]
        reads: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "deletion")]
        kind: BallKind,
        #[arg(long, default_value_t = 1 << 12)]
        budget: u64,
    },
    /// Decode the codeword whose ball holds every read.
    Reconstruct {
        #[arg(long)]
        code_file: PathBuf,
        #[arg(long)]
        reads_file: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value = "insertion")]
        kind: BallKind,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Print every codeword.
    Enumerate(CodeArgs),
    /// Print size, redundancy and read coverage.
    Coverage {
        #[command(flatten)]
        code: CodeArgs,
        /// Radii to measure; both ball kinds are reported for each.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        t: Vec<usize>,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// RunBounded, N7, N5, N4, N3, N2, Aux4, Separator or PeriodRestricted.
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    q: u8,
    /// JSON file holding a full code specification.
    #[arg(long, conflicts_with = "best")]
    params: Option<PathBuf>,
    /// Pick the residues with the largest class.
    #[arg(long)]
    best: bool,
    #[arg(long, default_value_t = recon_core::codes::DEFAULT_ENUM_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u8>>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<usize>>,
    /// Largest q^n enumerated exhaustively.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for sampling past the budget.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Largest number of read subsets decoded exhaustively per code.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// jsonl or csv.
    #[arg(long, default_value = "jsonl")]
    format: Format,
}

impl SweepArgs {
    fn apply(&self, mut c: SweepConfig) -> SweepConfig {
        if let Some(q) = &self.q {
            c.q = q.clone();
        }
        if let Some(v) = self.n_min {
            c.n_min = v;
        }
        if let Some(v) = self.n_max {
            c.n_max = v;
        }
        if let Some(t) = &self.t {
            c.t = t.clone();
        }
        if let Some(v) = self.budget {
            c.budget = v;
        }
        if let Some(v) = self.threads {
            c.threads = v;
        }
        if self.seed.is_some() {
            c.seed = self.seed;
        }
        if let Some(v) = self.samples {
            c.samples = v;
        }
        if let Some(v) = self.trials {
            c.trials = v;
        }
        c.out = self.out.clone();
        c.format = self.format;
        c
    }
}

fn output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn load_spec(a: &CodeArgs, env: &CodeEnv) -> anyhow::Result<CodeFamilySpec> {
    if let Some(p) = &a.params {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let spec: CodeFamilySpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
        if spec.family != a.family {
            bail!("{} holds a {} spec, not {}", p.display(), spec.family, a.family);
        }
        spec.validate()?;
        return Ok(spec);
    }
    let Some(n) = a.n else { bail!("--n is required without --params") };
    Ok(if a.best { best_params(a.family, n, a.q, env)? } else { CodeFamilySpec::template(a.family, n, a.q)? })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::List => {
            let mut out = io::stdout().lock();
            for (id, about) in registry() {
                writeln!(out, "{id:<20} {about}")?;
            }
        }
        Cmd::Verify { ids, sweep, keep_going } => {
            let ids: Vec<String> = if ids.iter().any(|i| i == "all") {
                registry().into_iter().map(|(id, _)| id.to_string()).collect()
            } else {
                ids
            };
            let mut records = Vec::new();
            let mut ok = true;
            for id in &ids {
                let mut cfg = sweep.apply(SweepConfig::for_theorem(id)?);
                cfg.fail_fast = !keep_going;
                let r = verify(id, &cfg)?;
                eprintln!("{} ({} ms)", r.summary(), r.wall_ms);
                for n in &r.notes {
                    eprintln!("  {n}");
                }
                ok &= r.passed();
                records.push(r);
            }
            let mut out = output(sweep.out.as_ref())?;
            write_verdicts(&records, sweep.format, &mut out)?;
            out.flush()?;
            return Ok(ok);
        }
        Cmd::Code(CodeCmd::Enumerate(a)) => {
            let env = CodeEnv { budget: a.budget, ..CodeEnv::default() };
            let spec = load_spec(&a, &env)?;
            let code = enumerate_code(&spec, &env)?;
            let mut out = output(a.out.as_ref())?;
            write_words(&mut out, spec.q, &code)?;
            out.flush()?;
        }
        Cmd::Code(CodeCmd::Coverage { code: a, t }) => {
            let env = CodeEnv { budget: a.budget, ..CodeEnv::default() };
            let spec = load_spec(&a, &env)?;
            let code = enumerate_code(&spec, &env)?;
            let size = code.len() as u64;
            let mut out = output(a.out.as_ref())?;
            writeln!(out, "family={} n={} q={} size={size}", spec.family, spec.n, spec.q)?;
            if size > 0 {
                writeln!(out, "redundancy={:.4}", redundancy_of_size(size, spec.n, spec.q))?;
            }
            if size >= 2 {
                for t in t {
                    let ins = read_coverage(&code, t, BallKind::Insertion)?;
                    let del =
                        if t <= spec.n { read_coverage(&code, t, BallKind::Deletion)?.to_string() } else { "-".into() };
                    writeln!(out, "t={t} nu_ins={ins} nu_del={del}")?;
                }
            }
            out.flush()?;
        }
        Cmd::Table { kind, sweep } => {
            let cfg = sweep.apply(SweepConfig::default());
            cfg.validate()?;
            let mut out = output(sweep.out.as_ref())?;
            emit_table(kind, &cfg, sweep.format, &mut out)?;
            out.flush()?;
        }
        Cmd::Rho { n, q, reads, t, kind, budget } => {
            let r = min_redundancy_search(n, q, reads, t, kind, budget)?;
            let mut out = io::stdout().lock();
            writeln!(out, "max_size={} redundancy={:.4}", r.max_size, r.redundancy)?;
            write_words(&mut out, q, &r.witness)?;
        }
        Cmd::Reconstruct { code_file, reads_file, t, kind } => {
            let code = read_words(&code_file).with_context(|| format!("reading {}", code_file.display()))?;
            let reads = read_words(&reads_file).with_context(|| format!("reading {}", reads_file.display()))?;
            if code.q != reads.q {
                bail!("code has q={} but reads have q={}", code.q, reads.q);
            }
            let mut out = io::stdout().lock();
            match reconstruct(&reads.words, &code.to_set(), t, kind)? {
                Decoded::Unique(x) => {
                    writeln!(out, "unique")?;
                    write_words(&mut out, code.q, [&x])?;
                }
                Decoded::Ambiguous(v) => {
                    writeln!(out, "ambiguous {}", v.len())?;
                    write_words(&mut out, code.q, &v)?;
                }
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
