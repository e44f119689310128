use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{prime_at_least, CodeEnv, Separator};
use crate::counting::run_bound;
use crate::error::{pre, Error, Result};
use crate::seq::{self, check_q, integer_differential_of, period_restricted, row_count, runs_of};

/// Named code families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    RunBounded,
    N7,
    N5,
    N4,
    N3,
    N2,
    Aux4,
    Separator,
    PeriodRestricted,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::RunBounded,
        Family::N7,
        Family::N5,
        Family::N4,
        Family::N3,
        Family::N2,
        Family::Aux4,
        Family::Separator,
        Family::PeriodRestricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RunBounded => "RunBounded",
            Family::N7 => "N7",
            Family::N5 => "N5",
            Family::N4 => "N4",
            Family::N3 => "N3",
            Family::N2 => "N2",
            Family::Aux4 => "Aux4",
            Family::Separator => "Separator",
            Family::PeriodRestricted => "PeriodRestricted",
        }
    }

    /// Number of reads the family is designed for on the double insertion
    /// channel, where that applies.
    pub fn design_reads(self) -> Option<usize> {
        match self {
            Family::N7 => Some(7),
            Family::N5 => Some(5),
            Family::N4 => Some(4),
            Family::N3 => Some(3),
            Family::N2 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown { kind: "code family", name: s.into() })
    }
}

/// One condition of a code family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// At most `max_runs` runs.
    RunBound { max_runs: usize },
    /// No window of length `max_len + 1` with a period `≤ t`.
    PeriodRestricted { t: usize, max_len: usize },
    /// `VT^order(g(x)) ≡ residue (mod modulus)` on the accumulated
    /// differential word.
    DiffSyndrome { order: u32, modulus: u64, residue: u64 },
    /// `Σ x_i ≡ residue (mod modulus)`.
    SymbolSum { modulus: u64, residue: u64 },
    /// `Σ i² x_i ≡ residue (mod modulus)`.
    SquareSyndrome { modulus: u64, residue: u64 },
    /// `Σ x_{2i-1} ≡ residue (mod modulus)`.
    OddSum { modulus: u64, residue: u64 },
    /// Separator color of each binary row, for cores up to `span`.
    RowColors { span: usize, colors: Vec<u32> },
}

impl Constraint {
    fn is_filter(&self) -> bool {
        matches!(self, Constraint::RunBound { .. } | Constraint::PeriodRestricted { .. })
    }

    fn tag(&self) -> &'static str {
        match self {
            Constraint::RunBound { .. } => "run_bound",
            Constraint::PeriodRestricted { .. } => "period_restricted",
            Constraint::DiffSyndrome { .. } => "diff_syndrome",
            Constraint::SymbolSum { .. } => "symbol_sum",
            Constraint::SquareSyndrome { .. } => "square_syndrome",
            Constraint::OddSum { .. } => "odd_sum",
            Constraint::RowColors { .. } => "row_colors",
        }
    }
}

/// A code family instance: alphabet, length and its constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeFamilySpec {
    pub family: Family,
    pub n: usize,
    pub q: u8,
    /// Period parameter `P` where the family has one.
    pub period: Option<usize>,
    /// Whether `P` was reduced because it exceeded the length.
    pub clamped: bool,
    pub constraints: Vec<Constraint>,
}

/// `⌈log_q n + log_q log_q n⌉`, with the inner term dropped when `log_q n ≤ 0`
/// and the result floored at 0.
fn ceil_log_loglog(n: usize, q: u8) -> usize {
    let a = (n as f64).ln() / (q as f64).ln();
    let b = if a > 0.0 { a.ln() / (q as f64).ln() } else { 0.0 };
    ((a + b) - 1e-9).ceil().max(0.0) as usize
}

fn ceil_log2(n: usize) -> usize {
    (n.max(1) as u64).next_power_of_two().trailing_zeros() as usize
}

/// Period length `(P-1)/3` for the five- and four-read families, clamped to
/// `n`. Returns `(P, clamped)`.
fn log_period(n: usize, q: u8) -> (usize, bool) {
    let l = ceil_log_loglog(n, q) + 1;
    if l > n {
        (3 * n + 1, true)
    } else {
        (3 * l + 1, false)
    }
}

/// `P = ⌈log₂ n⌉ + 5` for the two-read family, clamped to `n`.
fn binary_period(n: usize) -> (usize, bool) {
    let p = ceil_log2(n) + 5;
    if p > n {
        (n, true)
    } else {
        (p, false)
    }
}

fn n7_parts(n: usize, q: u8) -> Vec<Constraint> {
    vec![Constraint::DiffSyndrome { order: 0, modulus: q as u64 * n as u64, residue: 0 }]
}

fn n3_parts(n: usize, q: u8) -> Vec<Constraint> {
    let n = n as u64;
    let sums = [n, n * (n + 1) / 2];
    (0..2)
        .map(|k| Constraint::DiffSyndrome { order: k as u32, modulus: 2 * q as u64 * sums[k] - 1, residue: 0 })
        .collect()
}

fn aux_parts(n: usize, q: u8, p_big: usize) -> Vec<Constraint> {
    let l = (p_big - 1) / 3;
    vec![
        Constraint::SymbolSum { modulus: 2 * q as u64 - 1, residue: 0 },
        Constraint::SquareSyndrome { modulus: prime_at_least(4 * n as u64), residue: 0 },
        Constraint::OddSum { modulus: (q as u64 - 1) * l as u64 + 1, residue: 0 },
    ]
}

fn sep_part(q: u8, period: usize) -> Constraint {
    Constraint::RowColors { span: 5 * period, colors: vec![0; row_count(q) as usize] }
}

impl CodeFamilySpec {
    /// The family at `(n, q)` with default moduli and period, and every
    /// residue and color set to 0.
    pub fn template(family: Family, n: usize, q: u8) -> Result<CodeFamilySpec> {
        check_q(q)?;
        pre(n >= 1, "code length must be positive")?;
        let mut period = None;
        let mut clamped = false;
        let constraints = match family {
            Family::RunBounded => vec![Constraint::RunBound { max_runs: run_bound(n as u64, q as u32) as usize }],
            Family::N7 => n7_parts(n, q),
            Family::N3 => n3_parts(n, q),
            Family::Aux4 | Family::N5 | Family::N4 => {
                let (p, c) = log_period(n, q);
                period = Some(p);
                clamped = c;
                let l = (p - 1) / 3;
                let mut v = Vec::new();
                if family != Family::Aux4 {
                    v.extend(n7_parts(n, q));
                    v.push(sep_part(q, l));
                    v.push(Constraint::PeriodRestricted { t: 4, max_len: l });
                }
                if family != Family::N5 {
                    v.extend(aux_parts(n, q, p));
                }
                v
            }
            Family::N2 | Family::Separator | Family::PeriodRestricted => {
                let (p, c) = binary_period(n);
                period = Some(p);
                clamped = c;
                match family {
                    Family::N2 => {
                        let mut v = n3_parts(n, q);
                        v.push(sep_part(q, p));
                        v.push(Constraint::PeriodRestricted { t: 4, max_len: p });
                        v
                    }
                    Family::Separator => vec![sep_part(q, p)],
                    _ => vec![Constraint::PeriodRestricted { t: 4, max_len: p }],
                }
            }
        };
        let spec = CodeFamilySpec { family, n, q, period, clamped, constraints };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        pre(self.n >= 1, "code length must be positive")?;
        for c in &self.constraints {
            match *c {
                Constraint::DiffSyndrome { modulus, residue, .. }
                | Constraint::SymbolSum { modulus, residue }
                | Constraint::SquareSyndrome { modulus, residue }
                | Constraint::OddSum { modulus, residue } => {
                    pre(modulus >= 1 && residue < modulus, format!("residue {residue} outside modulus {modulus}"))?;
                }
                Constraint::RowColors { ref colors, .. } => {
                    pre(colors.len() == row_count(self.q) as usize, "one color per binary row")?;
                }
                Constraint::PeriodRestricted { t, .. } => pre(t >= 1, "period bound must be positive")?,
                Constraint::RunBound { .. } => {}
            }
        }
        if let Some(Constraint::SquareSyndrome { modulus, .. }) =
            self.constraints.iter().find(|c| matches!(c, Constraint::SquareSyndrome { .. }))
        {
            pre(
                super::is_prime(*modulus) && *modulus >= 4 * self.n as u64,
                "square syndrome modulus must be a prime >= 4n",
            )?;
        }
        if matches!(self.family, Family::Aux4 | Family::N4 | Family::N5) {
            let p = self.period.ok_or_else(|| Error::Precondition("family needs P".into()))?;
            pre(p % 3 == 1, format!("P incompatible: {p} is not 1 mod 3"))?;
        }
        Ok(())
    }

    /// Residues and colors in constraint order.
    pub fn residues(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for c in &self.constraints {
            match c {
                Constraint::DiffSyndrome { residue, .. }
                | Constraint::SymbolSum { residue, .. }
                | Constraint::SquareSyndrome { residue, .. }
                | Constraint::OddSum { residue, .. } => out.push(*residue),
                Constraint::RowColors { colors, .. } => out.extend(colors.iter().map(|&c| c as u64)),
                _ => {}
            }
        }
        out
    }

    /// Moduli of the residue constraints, in order.
    pub fn moduli(&self) -> Vec<u64> {
        self.constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::DiffSyndrome { modulus, .. }
                | Constraint::SymbolSum { modulus, .. }
                | Constraint::SquareSyndrome { modulus, .. }
                | Constraint::OddSum { modulus, .. } => Some(*modulus),
                _ => None,
            })
            .collect()
    }

    pub fn prime(&self) -> Option<u64> {
        self.constraints.iter().find_map(|c| match c {
            Constraint::SquareSyndrome { modulus, .. } => Some(*modulus),
            _ => None,
        })
    }

    /// Copy with residues and colors replaced, in [`Self::residues`] order.
    pub fn with_signature(&self, sig: &[u64]) -> Result<CodeFamilySpec> {
        let mut out = self.clone();
        let mut it = sig.iter().copied();
        let mut next = || it.next().ok_or_else(|| Error::Precondition("signature too short".into()));
        for c in &mut out.constraints {
            match c {
                Constraint::DiffSyndrome { residue, .. }
                | Constraint::SymbolSum { residue, .. }
                | Constraint::SquareSyndrome { residue, .. }
                | Constraint::OddSum { residue, .. } => *residue = next()?,
                Constraint::RowColors { colors, .. } => {
                    for v in colors.iter_mut() {
                        *v = next()? as u32;
                    }
                }
                _ => {}
            }
        }
        pre(it.next().is_none(), "signature too long")?;
        out.validate()?;
        Ok(out)
    }

    pub fn contains(&self, x: &seq::Sequence, env: &CodeEnv) -> Result<bool> {
        pre(x.q() == self.q && x.len() == self.n, format!("word {x} is not in {}^{}", self.q, self.n))?;
        let eval = self.evaluator(env)?;
        Ok(eval.signature(x.symbols()).as_deref() == Some(&self.residues()[..]))
    }

    /// Constituent families of a composite, each carrying its constraints.
    pub fn constituents(&self) -> Vec<CodeFamilySpec> {
        let part = |family: Family, keep: &dyn Fn(&Constraint) -> bool| CodeFamilySpec {
            family,
            n: self.n,
            q: self.q,
            period: self.period,
            clamped: self.clamped,
            constraints: self.constraints.iter().filter(|c| keep(c)).cloned().collect(),
        };
        let diff = |c: &Constraint| matches!(c, Constraint::DiffSyndrome { .. });
        let sep = |c: &Constraint| matches!(c, Constraint::RowColors { .. });
        let per = |c: &Constraint| matches!(c, Constraint::PeriodRestricted { .. });
        let aux = |c: &Constraint| {
            matches!(c, Constraint::SymbolSum { .. } | Constraint::SquareSyndrome { .. } | Constraint::OddSum { .. })
        };
        match self.family {
            Family::N5 => {
                vec![part(Family::N7, &diff), part(Family::Separator, &sep), part(Family::PeriodRestricted, &per)]
            }
            Family::N4 => vec![part(Family::N5, &|c| !aux(c)), part(Family::Aux4, &aux)],
            Family::N2 => {
                vec![part(Family::N3, &diff), part(Family::Separator, &sep), part(Family::PeriodRestricted, &per)]
            }
            _ => vec![self.clone()],
        }
    }

    pub(crate) fn evaluator(&self, env: &CodeEnv) -> Result<Evaluator> {
        let mut seps = Vec::new();
        for c in &self.constraints {
            if let Constraint::RowColors { span, .. } = c {
                seps.push(env.separators.separator(self.n, *span)?);
            }
        }
        Ok(Evaluator { q: self.q, constraints: self.constraints.clone(), seps })
    }
}

/// A spec with its separators resolved, ready for tight loops.
pub(crate) struct Evaluator {
    q: u8,
    constraints: Vec<Constraint>,
    seps: Vec<Arc<dyn Separator>>,
}

impl Evaluator {
    /// Residues and colors of `x`, or `None` if a filter rejects it.
    pub(crate) fn signature(&self, x: &[u8]) -> Option<Vec<u64>> {
        for c in self.constraints.iter().filter(|c| c.is_filter()) {
            let ok = match *c {
                Constraint::RunBound { max_runs } => runs_of(x) <= max_runs,
                Constraint::PeriodRestricted { t, max_len } => period_restricted(x, t, max_len),
                _ => true,
            };
            if !ok {
                return None;
            }
        }
        let mut g: Option<Vec<i64>> = None;
        let mut out = Vec::new();
        let mut sep = self.seps.iter();
        let mut row = vec![0u8; x.len()];
        for c in &self.constraints {
            match *c {
                Constraint::DiffSyndrome { order, modulus, .. } => {
                    let g = g.get_or_insert_with(|| integer_differential_of(x, self.q));
                    out.push(super::vt_syndrome(g, order).rem_euclid(modulus as i128) as u64);
                }
                Constraint::SymbolSum { modulus, .. } => {
                    out.push(x.iter().map(|&c| c as u64).sum::<u64>() % modulus);
                }
                Constraint::SquareSyndrome { modulus, .. } => {
                    let v: u128 = x.iter().enumerate().map(|(i, &c)| ((i as u128 + 1).pow(2)) * c as u128).sum();
                    out.push((v % modulus as u128) as u64);
                }
                Constraint::OddSum { modulus, .. } => {
                    out.push(x.iter().step_by(2).map(|&c| c as u64).sum::<u64>() % modulus);
                }
                Constraint::RowColors { .. } => {
                    let s = sep.next().expect("one separator per row constraint");
                    for i in 0..row_count(self.q) {
                        for (r, &c) in row.iter_mut().zip(x) {
                            *r = (c >> i) & 1;
                        }
                        out.push(s.color(&row) as u64);
                    }
                }
                Constraint::RunBound { .. } | Constraint::PeriodRestricted { .. } => {}
            }
        }
        Some(out)
    }
}

// Text form: one `key=value` per line; each constraint is a line
// `constraint=<tag> key=value ...`.

impl fmt::Display for CodeFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family={}", self.family)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "q={}", self.q)?;
        if let Some(p) = self.period {
            writeln!(f, "P={p}")?;
        }
        writeln!(f, "clamped={}", self.clamped)?;
        for c in &self.constraints {
            write!(f, "constraint={}", c.tag())?;
            match c {
                Constraint::RunBound { max_runs } => write!(f, " max_runs={max_runs}")?,
                Constraint::PeriodRestricted { t, max_len } => write!(f, " t={t} max_len={max_len}")?,
                Constraint::DiffSyndrome { order, modulus, residue } => {
                    write!(f, " order={order} modulus={modulus} residue={residue}")?
                }
                Constraint::SymbolSum { modulus, residue }
                | Constraint::SquareSyndrome { modulus, residue }
                | Constraint::OddSum { modulus, residue } => write!(f, " modulus={modulus} residue={residue}")?,
                Constraint::RowColors { span, colors } => {
                    let cs: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
                    write!(f, " span={span} colors={}", cs.join(","))?
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
}

fn parse_constraint(text: &str) -> Result<Constraint> {
    let mut words = text.split_whitespace();
    let tag = words.next().ok_or_else(|| Error::Parse("empty constraint".into()))?;
    let mut kv = std::collections::HashMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {w:?}")))?;
        kv.insert(k, v);
    }
    let get = |k: &str| kv.get(k).copied().ok_or_else(|| Error::Parse(format!("{tag}: missing {k}")));
    let num = |k: &str| -> Result<u64> { parse_num(k, get(k)?) };
    Ok(match tag {
        "run_bound" => Constraint::RunBound { max_runs: num("max_runs")? as usize },
        "period_restricted" => {
            Constraint::PeriodRestricted { t: num("t")? as usize, max_len: num("max_len")? as usize }
        }
        "diff_syndrome" => {
            Constraint::DiffSyndrome { order: num("order")? as u32, modulus: num("modulus")?, residue: num("residue")? }
        }
        "symbol_sum" => Constraint::SymbolSum { modulus: num("modulus")?, residue: num("residue")? },
        "square_syndrome" => Constraint::SquareSyndrome { modulus: num("modulus")?, residue: num("residue")? },
        "odd_sum" => Constraint::OddSum { modulus: num("modulus")?, residue: num("residue")? },
        "row_colors" => Constraint::RowColors {
            span: num("span")? as usize,
            colors: get("colors")?.split(',').map(|c| parse_num("colors", c)).collect::<Result<Vec<u32>>>()?,
        },
        _ => return Err(Error::Unknown { kind: "constraint", name: tag.into() }),
    })
}

impl FromStr for CodeFamilySpec {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let (mut family, mut n, mut q, mut period, mut clamped) = (None, None, None, None, false);
        let mut constraints = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            match k.trim() {
                "family" => family = Some(v.trim().parse::<Family>()?),
                "n" => n = Some(parse_num::<usize>("n", v.trim())?),
                "q" => q = Some(parse_num::<u8>("q", v.trim())?),
                "P" => period = Some(parse_num::<usize>("P", v.trim())?),
                "clamped" => clamped = parse_num::<bool>("clamped", v.trim())?,
                "constraint" => constraints.push(parse_constraint(v)?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let spec = CodeFamilySpec {
            family: family.ok_or_else(|| Error::Parse("missing family".into()))?,
            n: n.ok_or_else(|| Error::Parse("missing n".into()))?,
            q: q.ok_or_else(|| Error::Parse("missing q".into()))?,
            period,
            clamped,
            constraints,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(12), 4);
        assert_eq!(ceil_log2(16), 4);
        // log2 12 + log2 log2 12 = 3.585 + 1.842 -> 6.
        assert_eq!(ceil_log_loglog(12, 2), 6);
        assert_eq!(ceil_log_loglog(4, 2), 3);
        assert_eq!(ceil_log_loglog(1, 2), 0);
        assert_eq!(log_period(12, 2), (22, false));
        assert_eq!(log_period(3, 2), (10, true));
        assert_eq!(binary_period(12), (9, false));
        assert_eq!(binary_period(6), (6, true));
        for n in 1..200 {
            for q in 2..=5 {
                assert_eq!(log_period(n, q).0 % 3, 1);
            }
        }
    }

    #[test]
    fn round_trip() {
        for fam in Family::ALL {
            let spec = CodeFamilySpec::template(fam, 9, 3).unwrap();
            let text = spec.to_string();
            let back: CodeFamilySpec = text.parse().unwrap();
            assert_eq!(back, spec, "{text}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!("family=N7\nn=4".parse::<CodeFamilySpec>().is_err());
        assert!("family=N9\nn=4\nq=2".parse::<CodeFamilySpec>().is_err());
        let bad = "family=N7\nn=4\nq=2\nconstraint=diff_syndrome order=0 modulus=8 residue=9";
        assert!(bad.parse::<CodeFamilySpec>().is_err());
        let bad_p = "family=Aux4\nn=4\nq=2\nP=9\nconstraint=symbol_sum modulus=3 residue=0";
        assert!(matches!(bad_p.parse::<CodeFamilySpec>(), Err(Error::Precondition(m)) if m.contains("P incompatible")));
    }

    #[test]
    fn signature_round_trip() {
        let t = CodeFamilySpec::template(Family::N2, 8, 3).unwrap();
        let sig: Vec<u64> = vec![3, 5, 1, 2];
        let s = t.with_signature(&sig).unwrap();
        assert_eq!(s.residues(), sig);
        assert!(t.with_signature(&[1]).is_err());
    }
}
