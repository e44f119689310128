//! Sequence reconstruction from multiple reads over insertion and deletion
//! channels.
//!
//! The crate is split the same way the problem is:
//!
//! * [`seq`] words over a q-ary alphabet and the small transforms on them
//!   (runs, periodicity, differential sequences, binary rows);
//! * [`metric`] insertion and deletion balls, their intersections and the
//!   Levenshtein distance;
//! * [`counting`] exact closed forms for ball sizes and intersection bounds;
//! * [`characterize`] structural classification of pairs whose double
//!   insertion balls meet;
//! * [`codes`] syndrome and run-bounded code families, read coverage and
//!   redundancy;
//! * [`harness`] exhaustive and sampled verification sweeps, reconstruction
//!   and table output.

pub mod characterize;
pub mod codes;
pub mod counting;
mod error;
pub mod harness;
pub mod metric;
pub mod seq;

pub use error::{Error, Result};
pub use metric::BallKind;
pub use seq::{Sequence, SequenceSet};
