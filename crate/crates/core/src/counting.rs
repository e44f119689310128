//! Exact closed forms: insertion ball sizes, the maximum intersection of two
//! insertion balls under a distance constraint, and the bounds built from them.
//!
//! Every value is an arbitrary-precision integer. Binomials with a negative or
//! out-of-range argument are 0, which lets the recurrences run to their
//! boundaries without special cases.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{pre, Error, Result};

/// `C(n, k)`; 0 when `n < 0`, `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn pow(base: u32, e: i64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `|I_t(x)|` for any `x ∈ Σ_q^n`: `Σ_{i≤t} C(n+t, i)(q-1)^i`; 0 for `t < 0`.
pub fn insertion_ball_size(n: i64, t: i64, q: u32) -> BigInt {
    (0..=t).map(|i| binom(n + t, i) * pow(q - 1, i)).sum()
}

/// Largest `|I_k(x) ∩ I_t(y)|` over `x ∈ Σ_q^{n+t-k}`, `y ∈ Σ_q^n` with
/// `d_L(x, y) ≥ t - k + 2ℓ`. Requires `t ≥ k ≥ ℓ ≥ 1`.
pub fn n_plus(n: i64, t: i64, k: i64, l: i64, q: u32) -> Result<BigInt> {
    pre(t >= k && k >= l && l >= 1, format!("need t >= k >= l >= 1, got t={t} k={k} l={l}"))?;
    pre(n >= 0 && q >= 2, "need n >= 0, q >= 2")?;
    Ok(n_plus_or_zero(n, t, k, l, q))
}

/// [`n_plus`] extended by 0 outside `t ≥ k ≥ ℓ ≥ 1` and for `n < 0`.
pub fn n_plus_or_zero(n: i64, t: i64, k: i64, l: i64, q: u32) -> BigInt {
    if !(t >= k && k >= l && l >= 1) || n < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for j in l..=k {
        let a = binom(t - k + 2 * j, j);
        for i in 0..=k - j {
            let term = &a * binom(t + j - i, t - k + 2 * j) * binom(n + t, i) * pow(q - 1, i);
            if (k + j - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// Bound on `|I_t(x) ∩ I_t(y) \ I_{t-1}(z)|` when `I_1(x) ∩ I_1(y) = {z}`.
/// 0 for `t < 2`.
pub fn delta(n: i64, t: i64, q: u32) -> BigInt {
    delta_with(n, t, q, 1)
}

/// The same bound for pairs whose stripped cores are not of the alternating
/// `acwb / cwbd` shape with `acw` periodic; the leading term uses `ℓ = 2`.
pub fn delta_prime(n: i64, t: i64, q: u32) -> BigInt {
    delta_with(n, t, q, 2)
}

fn delta_with(n: i64, t: i64, q: u32, l: i64) -> BigInt {
    if t < 2 {
        return BigInt::zero();
    }
    let q2 = BigInt::from(q) - 2;
    let q1 = BigInt::from(q) - 1;
    n_plus_or_zero(n - 1, t - 1, t - 1, l, q)
        + 2 * &q2 * n_plus_or_zero(n - 1, t - 1, t - 2, 1, q)
        + &q2 * &q2 * n_plus_or_zero(n, t - 2, t - 2, 1, q)
        - &q1 * &q1 * insertion_ball_size(n + 1, t - 3, q)
}

/// `C(r(x)+t-3, t-1) + C(r(y)+t-3, t-1)`.
pub fn del_pair_bound(rx: i64, ry: i64, t: i64) -> BigInt {
    binom(rx + t - 3, t - 1) + binom(ry + t - 3, t - 1)
}

/// Largest run count allowed in the run-bounded code: `⌊(q-1)(n-1)/q⌋ + 1`.
pub fn run_bound(n: u64, q: u32) -> u64 {
    (q as u64 - 1) * n.saturating_sub(1) / q as u64 + 1
}

/// `2·C(r+t-3, t-1)` with `r` from [`run_bound`]: the number of reads past
/// which the run-bounded code reconstructs from `t`-deletion reads.
pub fn run_bounded_threshold(n: u64, t: i64, q: u32) -> BigInt {
    2 * binom(run_bound(n, q) as i64 + t - 3, t - 1)
}

/// `|{x ∈ Σ_q^n : r(x) ≤ r}| = q Σ_{i<r} C(n-1, i)(q-1)^i`.
pub fn run_bounded_size(n: i64, r: i64, q: u32) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    BigInt::from(q) * (0..r).map(|i| binom(n - 1, i) * pow(q - 1, i)).sum::<BigInt>()
}

/// Outcome of the search for the length from which the single-insertion
/// code condition transfers to `t` insertions.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InsertionThreshold {
    pub n: u64,
    /// Admissible read counts `N`; `None` when the window is empty.
    pub window: Option<(String, String)>,
}

/// Smallest `n ≥ 2` with
/// `I_q(n+1, t-1) > max{Δ_q(n,t) - N⁺(n+1,t-1,t-1,1), N⁺(n,t,t,2)}`,
/// together with the read-count window at that length.
pub fn ins_case_threshold(t: i64, q: u32, cap: u64) -> Result<InsertionThreshold> {
    pre(t >= 2 && q >= 2, "need t >= 2, q >= 2")?;
    for n in 2..=cap {
        let ni = n as i64;
        let lhs = insertion_ball_size(ni + 1, t - 1, q);
        let a = delta(ni, t, q) - n_plus_or_zero(ni + 1, t - 1, t - 1, 1, q);
        let b = n_plus_or_zero(ni, t, t, 2, q);
        if lhs > a.clone().max(b) {
            return Ok(InsertionThreshold { n, window: ins_case_window(ni, t, q) });
        }
    }
    Err(Error::Budget { what: "insertion threshold search".into(), needed: cap + 1, budget: cap })
}

/// `[I(n+1,t-1) + Δ(n,t) + 1, 2I(n+1,t-1) - N⁺(n+1,t-1,t-1,1)]`, or `None`
/// when empty.
pub fn ins_case_window(n: i64, t: i64, q: u32) -> Option<(String, String)> {
    let (lo, hi) = ins_case_window_int(n, t, q)?;
    Some((lo.to_string(), hi.to_string()))
}

pub(crate) fn ins_case_window_int(n: i64, t: i64, q: u32) -> Option<(BigInt, BigInt)> {
    let i = insertion_ball_size(n + 1, t - 1, q);
    let lo = &i + delta(n, t, q) + 1;
    let hi = 2 * &i - n_plus_or_zero(n + 1, t - 1, t - 1, 1, q);
    (lo <= hi).then_some((lo, hi))
}

/// Lossy conversion for table output and comparisons with machine counts.
pub fn to_u64(v: &BigInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_edges() {
        assert_eq!(binom(5, 2), b(10));
        assert_eq!(binom(-1, 0), b(0));
        assert_eq!(binom(3, 4), b(0));
        assert_eq!(binom(3, -1), b(0));
        assert_eq!(binom(0, 0), b(1));
        // Pascal's rule as an independent check.
        for n in 1..40 {
            for k in 1..n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn ball_size_examples() {
        assert_eq!(insertion_ball_size(2, 2, 2), b(11));
        assert_eq!(insertion_ball_size(1, 1, 2), b(3));
        assert_eq!(insertion_ball_size(5, 2, 2), b(29));
        assert_eq!(insertion_ball_size(5, -1, 2), b(0));
        assert_eq!(insertion_ball_size(5, 0, 3), b(1));
    }

    #[test]
    fn ball_size_recurrence() {
        for q in 2..=5 {
            for n in 1..=50 {
                for t in 1..=6 {
                    assert_eq!(
                        insertion_ball_size(n, t, q),
                        insertion_ball_size(n - 1, t, q) + (q as i64 - 1) * insertion_ball_size(n, t - 1, q),
                        "q={q} n={n} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn n_plus_examples() {
        for n in 2..20 {
            assert_eq!(n_plus(n, 1, 1, 1, 2).unwrap(), b(2));
            assert_eq!(n_plus(n, 1, 1, 1, 3).unwrap(), b(2));
        }
        assert!(n_plus(4, 1, 2, 1, 2).is_err());
        assert!(n_plus(4, 2, 2, 0, 2).is_err());
        assert_eq!(n_plus(4, 2, 2, 2, 2).unwrap(), b(6));
    }

    #[test]
    fn n_plus_recurrence() {
        for q in 2..=5 {
            for n in 1..=24 {
                for t in 1..=6 {
                    for k in 1..=t {
                        for l in 1..=k {
                            assert_eq!(
                                n_plus_or_zero(n, t, k, l, q),
                                n_plus_or_zero(n - 1, t, k, l, q)
                                    + (q as i64 - 1) * n_plus_or_zero(n, t - 1, k - 1, l, q),
                                "q={q} n={n} t={t} k={k} l={l}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn delta_values() {
        for n in 3..30 {
            assert_eq!(delta(n, 2, 2), b(2));
            assert_eq!(delta(n, 2, 5), b(2));
            assert_eq!(delta(n, 3, 2), b(2 * n + 1));
            assert_eq!(delta(n, 3, 3), b(4 * n + 8));
            assert_eq!(delta_prime(n, 3, 2), b(5));
            assert_eq!(delta_prime(n, 3, 3), b(10));
        }
        assert_eq!(delta(5, 1, 2), b(0));
    }

    #[test]
    fn delta_recurrence() {
        for q in 2..=5 {
            for n in 3..=20 {
                for t in 2..=6 {
                    assert_eq!(
                        delta(n, t, q),
                        delta(n - 1, t, q) + (q as i64 - 1) * delta(n, t - 1, q),
                        "q={q} n={n} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn run_bounds() {
        assert_eq!(del_pair_bound(1, 1, 2), b(0));
        assert_eq!(del_pair_bound(4, 4, 2), b(6));
        assert_eq!(run_bounded_threshold(9, 2, 2), b(8));
        assert_eq!(run_bounded_threshold(9, 1, 2), b(2));
        assert_eq!(run_bound(5, 2), 3);
        assert_eq!(run_bounded_size(5, 3, 2), b(22));
        assert_eq!(run_bounded_size(9, 5, 2), b(326));
    }

    #[test]
    fn run_bounded_size_counts() {
        for q in 2..=3u8 {
            for n in 1..=7usize {
                for r in 1..=n {
                    let count = crate::seq::Sequence::words(q, n).filter(|x| crate::seq::runs(x) <= r).count();
                    assert_eq!(run_bounded_size(n as i64, r as i64, q as u32), b(count as i64));
                }
            }
        }
    }

    #[test]
    fn threshold_t2() {
        let th = ins_case_threshold(2, 2, 1000).unwrap();
        assert_eq!(th.n, 4);
        assert_eq!(th.window, Some(("10".into(), "12".into())));
        assert!(ins_case_threshold(1, 2, 10).is_err());
    }
}
