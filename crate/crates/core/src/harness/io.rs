//! Word files: a `q=<int>` header, then one word per line.
//!
//! Blank lines and lines starting with `#` are skipped; `-` is the empty
//! word.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::{format_symbols, Sequence, SequenceSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFile {
    pub q: u8,
    /// Words in file order.
    pub words: Vec<Sequence>,
}

impl WordFile {
    pub fn to_set(&self) -> SequenceSet {
        self.words.iter().cloned().collect()
    }
}

pub fn parse_words(text: &str) -> Result<WordFile> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, head) = lines.next().ok_or_else(|| Error::Parse("missing q=<int> header".into()))?;
    let q: u8 = head
        .strip_prefix("q=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header {head:?}, want q=<int>")))?;
    let words = lines
        .map(|(no, l)| Sequence::parse(q, l).map_err(|e| Error::Parse(format!("line {no}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WordFile { q, words })
}

pub fn read_words(path: &Path) -> Result<WordFile> {
    parse_words(&std::fs::read_to_string(path)?)
}

pub fn write_words<'a>(out: &mut dyn Write, q: u8, words: impl IntoIterator<Item = &'a Sequence>) -> Result<()> {
    writeln!(out, "q={q}")?;
    for w in words {
        if w.is_empty() {
            writeln!(out, "-")?;
        } else {
            writeln!(out, "{}", format_symbols(w.symbols()))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# code\nq=3\n012\n-\n\n210\n";
        let f = parse_words(text).unwrap();
        assert_eq!(f.q, 3);
        assert_eq!(f.words.len(), 3);
        assert!(f.words[1].is_empty());
        let mut buf = Vec::new();
        write_words(&mut buf, f.q, &f.words).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "q=3\n012\n-\n210\n");
    }

    #[test]
    fn errors() {
        assert!(parse_words("").is_err());
        assert!(parse_words("q=x\n01").is_err());
        let e = parse_words("q=2\n01\n012\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }
}
