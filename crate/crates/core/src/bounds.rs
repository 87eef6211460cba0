//! Counting bounds for codes that correct `t` errors.
//!
//! Every decision is made in exact integer arithmetic; only
//! [`rate_bound`] returns a float.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Returned by the `*_max_k` functions when no `k >= 0` is admissible.
pub const NO_CODE: i64 = -1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("rate bound argument {0} outside [0, 1/2)")]
    Domain(f64),
    #[error("degeneracy count l = {l} outside 0..={max} for n = {n}")]
    DegeneracyOutOfRange { n: usize, l: usize, max: usize },
    #[error("n must be at least {min}, got {n}")]
    TooFewQubits { n: usize, min: usize },
}

/// `Σ_{l=0}^{t} 3^l C(n, l)`, the number of Pauli errors of weight `<= t`.
pub fn error_count(n: usize, t: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pow3 = BigUint::one();
    for l in 0..=t.min(n) {
        if l > 0 {
            binom = binom * BigUint::from(n - l + 1) / BigUint::from(l);
            pow3 *= 3u32;
        }
        total += &binom * &pow3;
    }
    total
}

/// Largest `k` with `2^k · count <= 2^exponent`, or [`NO_CODE`].
fn largest_k(count: &BigUint, exponent: usize) -> i64 {
    if count.is_zero() {
        return exponent as i64;
    }
    // count <= 2^(exponent-k)  <=>  ceil(log2 count) <= exponent - k
    let ceil_log2 = (count - 1u32).bits() as i64;
    let k = exponent as i64 - ceil_log2;
    if k < 0 {
        NO_CODE
    } else {
        k
    }
}

/// Largest `k` with `2^k Σ_{l<=t} 3^l C(n,l) <= 2^n`, or [`NO_CODE`].
pub fn qhb_max_k(n: usize, t: usize) -> i64 {
    largest_k(&error_count(n, t), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub t: usize,
    pub max_k: i64,
}

/// One row per `n` in `1..=max_n`.
pub fn qhb_table(max_n: usize, t: usize) -> Vec<BoundRow> {
    (1..=max_n)
        .map(|n| BoundRow {
            n,
            t,
            max_k: qhb_max_k(n, t),
        })
        .collect()
}

/// Binary entropy with `H(0) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Asymptotic rate limit `1 - x log2(3) - H(x)` for `x = t/n`.
pub fn rate_bound(x: f64) -> Result<f64, BoundError> {
    if !(0.0..0.5).contains(&x) {
        return Err(BoundError::Domain(x));
    }
    Ok(1.0 - x * 3f64.log2() - binary_entropy(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateRow {
    pub n: usize,
    pub l: usize,
    pub max_k: i64,
}

/// Bound on `k` for a one-error code whose degeneracies are `l` conditions,
/// each equating two single-qubit errors:
///
/// * `l = 0`: the plain counting bound.
/// * `l = n - 1`: `k = 0`.
/// * `0 < l < n - 1`: `k <= n - l - 2`, and when `2l <= n` also
///   `[1 + 3(n - 2l)] 2^k <= 2^(n-l)`; the smaller applies.
pub fn degenerate_max_k(n: usize, l: usize) -> Result<i64, BoundError> {
    if n == 0 {
        return Err(BoundError::TooFewQubits { n, min: 1 });
    }
    if l > n - 1 {
        return Err(BoundError::DegeneracyOutOfRange { n, l, max: n - 1 });
    }
    if l == 0 {
        return Ok(qhb_max_k(n, 1));
    }
    if l == n - 1 {
        return Ok(0);
    }
    let mut k = n as i64 - l as i64 - 2;
    if 2 * l <= n {
        let count = BigUint::from(1 + 3 * (n - 2 * l));
        k = k.min(largest_k(&count, n - l));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateVerdict {
    pub n: usize,
    pub holds: bool,
    /// The `l` attaining the largest degenerate bound (smallest such `l`).
    pub witness_l: usize,
    pub degenerate_max_k: i64,
    pub qhb_max_k: i64,
}

/// Whether `max_l degenerate_max_k(n, l) <= qhb_max_k(n, 1)`.
pub fn degenerate_never_beats_qhb(n: usize) -> Result<DegenerateVerdict, BoundError> {
    if n < 2 {
        return Err(BoundError::TooFewQubits { n, min: 2 });
    }
    let mut best = (0usize, i64::MIN);
    for l in 0..n {
        let k = degenerate_max_k(n, l)?;
        if k > best.1 {
            best = (l, k);
        }
    }
    let qhb = qhb_max_k(n, 1);
    Ok(DegenerateVerdict {
        n,
        holds: best.1 <= qhb,
        witness_l: best.0,
        degenerate_max_k: best.1,
        qhb_max_k: qhb,
    })
}

pub fn degenerate_table(n: usize) -> Result<Vec<DegenerateRow>, BoundError> {
    (0..n)
        .map(|l| degenerate_max_k(n, l).map(|max_k| DegenerateRow { n, l, max_k }))
        .collect()
}
