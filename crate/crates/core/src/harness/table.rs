//! Deterministic tables of formula values and code statistics.

use std::io::Write;
use std::str::FromStr;

use serde_json::Value;

use super::{Format, SweepConfig};
use crate::codes::{best_params, coverage_of_ranks, enumerate_code, redundancy_of_size, CodeEnv, Family};
use crate::counting::{delta, delta_prime, insertion_ball_size, n_plus_or_zero, run_bounded_threshold};
use crate::error::{Error, Result};
use crate::metric::{for_each_ball_member, BallKind};
use crate::seq::word_count;

pub const TABLE_SCHEMA: &str = "recon-table v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Ball sizes and intersection bounds per `(q, n, t)`.
    Counts,
    /// Read coverage of each family's largest class.
    Coverage,
    /// Size and redundancy of each family's largest class.
    Redundancy,
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "counts" => Ok(TableKind::Counts),
            "coverage" => Ok(TableKind::Coverage),
            "redundancy" => Ok(TableKind::Redundancy),
            _ => Err(Error::Unknown { kind: "table kind", name: s.into() }),
        }
    }
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Counts => "counts",
            TableKind::Coverage => "coverage",
            TableKind::Redundancy => "redundancy",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            TableKind::Counts => {
                &["q", "n", "t", "ball_size", "enumerated", "n_plus_l1", "delta", "delta_prime", "run_threshold"]
            }
            TableKind::Coverage => {
                &["family", "n", "q", "N", "size", "redundancy", "nu_ins2", "nu_del2", "P", "clamped"]
            }
            TableKind::Redundancy => &["family", "n", "q", "N", "size", "redundancy", "P", "clamped"],
        }
    }
}

const FAMILIES: [Family; 6] = [Family::RunBounded, Family::N7, Family::N5, Family::N4, Family::N3, Family::N2];

fn rows(kind: TableKind, cfg: &SweepConfig) -> Result<Vec<Vec<Value>>> {
    let mut out = Vec::new();
    let num = |v: String| Value::String(v);
    match kind {
        TableKind::Counts => {
            for &q in &cfg.q {
                for n in cfg.n_min..=cfg.n_max {
                    for &t in &cfg.t {
                        let (ni, ti, qq) = (n as i64, t as i64, q as u32);
                        let mut count = 0u64;
                        for_each_ball_member(&vec![0; n], q, t, BallKind::Insertion, &mut |_| count += 1);
                        out.push(vec![
                            q.into(),
                            n.into(),
                            t.into(),
                            num(insertion_ball_size(ni, ti, qq).to_string()),
                            count.into(),
                            num(n_plus_or_zero(ni, ti, ti, 1, qq).to_string()),
                            num(delta(ni, ti, qq).to_string()),
                            num(delta_prime(ni, ti, qq).to_string()),
                            num(run_bounded_threshold(n as u64, ti, qq).to_string()),
                        ]);
                    }
                }
            }
        }
        TableKind::Coverage | TableKind::Redundancy => {
            let env = CodeEnv { budget: cfg.budget, ..CodeEnv::default() };
            for &q in &cfg.q {
                for n in cfg.n_min.max(3)..=cfg.n_max {
                    if word_count(q, n) > cfg.budget {
                        continue;
                    }
                    for family in FAMILIES {
                        let spec = best_params(family, n, q, &env)?;
                        let code = enumerate_code(&spec, &env)?;
                        let size = code.len() as u64;
                        let red =
                            if size > 0 { format!("{:.4}", redundancy_of_size(size, n, q)) } else { "inf".into() };
                        let reads = family.design_reads().map_or(Value::Null, Value::from);
                        let mut row: Vec<Value> =
                            vec![family.name().into(), n.into(), q.into(), reads, size.into(), num(red)];
                        if kind == TableKind::Coverage {
                            let ranks: Vec<u64> = code.iter().map(|x| x.rank()).collect();
                            row.push(coverage_of_ranks(&ranks, q, n, 2, BallKind::Insertion).0.into());
                            row.push(coverage_of_ranks(&ranks, q, n, 2, BallKind::Deletion).0.into());
                        }
                        row.push(spec.period.map_or(Value::Null, Value::from));
                        row.push(spec.clamped.into());
                        out.push(row);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes the table with a schema line first; returns the row count.
pub fn emit_table(kind: TableKind, cfg: &SweepConfig, format: Format, out: &mut dyn Write) -> Result<usize> {
    let rows = rows(kind, cfg)?;
    let cols = kind.columns();
    match format {
        Format::Jsonl => {
            writeln!(out, "{}", serde_json::json!({ "schema": TABLE_SCHEMA, "table": kind.name(), "columns": cols }))?;
            for r in &rows {
                // Column order is kept by writing the object by hand.
                let fields: Vec<String> =
                    cols.iter().zip(r).map(|(c, v)| format!("{}:{}", Value::from(*c), v)).collect();
                writeln!(out, "{{{}}}", fields.join(","))?;
            }
        }
        Format::Csv => {
            writeln!(out, "# {TABLE_SCHEMA} {}", kind.name())?;
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(cols).map_err(csv_err)?;
            for r in &rows {
                w.write_record(r.iter().map(cell)).map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: &[u8], n_min: usize, n_max: usize, t: &[usize]) -> SweepConfig {
        SweepConfig { q: q.to_vec(), n_min, n_max, t: t.to_vec(), budget: 1 << 8, ..SweepConfig::default() }
    }

    #[test]
    fn counts_row_for_q2_n5_t2() {
        let mut buf = Vec::new();
        emit_table(TableKind::Counts, &cfg(&[2], 5, 5, &[2]), Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(2).unwrap();
        assert!(row.starts_with("2,5,2,29,29,"), "{row}");
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        let rows = emit_table(TableKind::Coverage, &cfg(&[2], 5, 4, &[2]), Format::Csv, &mut buf).unwrap();
        assert_eq!(rows, 0);
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }

    #[test]
    fn coverage_rows_are_ordered_and_repeatable() {
        let c = cfg(&[2], 5, 6, &[2]);
        let run = || {
            let mut buf = Vec::new();
            emit_table(TableKind::Coverage, &c, Format::Jsonl, &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = run();
        assert_eq!(a, run());
        for line in a.lines().skip(1) {
            let v: Value = serde_json::from_str(line).unwrap();
            assert!(v["nu_del2"].as_u64().unwrap() <= v["nu_ins2"].as_u64().unwrap(), "{line}");
        }
    }
}
