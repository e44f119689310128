use std::fmt;

/// Errors raised by the core library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet size {0} out of range (2..=36)")]
    Alphabet(u32),
    #[error("symbol {symbol} not in alphabet of size {q}")]
    Symbol { symbol: u32, q: u8 },
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u8, u8),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {what} needs {needed}, budget {budget}")]
    Budget { what: String, needed: u64, budget: u64 },
    #[error("separator needs {needed} colors, budget {budget}")]
    ColorBudget { needed: u64, budget: u64 },
    #[error("reads inconsistent with code")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(ok: bool, msg: impl fmt::Display) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg.to_string()))
    }
}
