//! Shared inputs for the criterion benches.

use recon_core::Sequence;

/// A fixed pseudo-random word, reproducible across runs.
pub fn fixture(q: u8, n: usize, seed: u64) -> Sequence {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let symbols = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % q as u64) as u8
        })
        .collect();
    Sequence::new(q, symbols).expect("symbols are reduced mod q")
}
