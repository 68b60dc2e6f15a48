//! Exponent and degree formulas for `V_n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Guaranteed q-order of `V_n`.
pub fn e0_formula(n: u64, lambda_is_zero: bool) -> u64 {
    if !lambda_is_zero {
        return n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    }
    if n <= 1 {
        0
    } else if n.is_multiple_of(2) {
        n * (n - 2) * (5 * n - 2) / 24
    } else {
        n * (n - 1) * (5 * n - 7) / 24
    }
}

/// `e_l(n) = Σ_{i<n} (⌊(i+l)/(3l)⌋ + ⌊i/(3l)⌋)` by direct summation.
pub fn e_l_sum(l: u64, n: u64) -> u64 {
    assert!(l >= 1);
    (0..n).map(|i| (i + l) / (3 * l) + i / (3 * l)).sum()
}

/// Closed form of `e_l(n)` on the residue class `j = n mod 3l`:
/// `(n−j)(n+j−2l)/(3l)`, plus `j−2l` when `j ≥ 2l`.
pub fn e_l_compact(l: u64, n: u64) -> u64 {
    assert!(l >= 1);
    let m = 3 * l;
    let j = n % m;
    let base = (n - j) * (n + j).saturating_sub(2 * l) / m;
    base + j.saturating_sub(2 * l)
}

/// `e_l(n)`, computed both ways; disagreement is an internal error.
pub fn e_l_formula(l: u64, n: u64) -> Result<u64> {
    if l == 0 {
        return Err(Error::CyclotomicIndex);
    }
    let (s, c) = (e_l_sum(l, n), e_l_compact(l, n));
    if s != c {
        return Err(Error::Internal(format!("e_{l}({n}): sum {s} ≠ compact {c}")));
    }
    Ok(s)
}

/// `e_1(n) = ⌊(n−1)²/3⌋`.
pub fn e1(n: u64) -> u64 {
    n.saturating_sub(1).pow(2) / 3
}

/// `e_2(n) = ⌊(n−2)²/6⌋`.
pub fn e2(n: u64) -> u64 {
    n.saturating_sub(2).pow(2) / 6
}

/// Upper bounds on the partial degrees of `V_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub q: u64,
    pub mu: u64,
    pub alpha: u64,
    pub lambda: u64,
}

pub fn degree_bounds(n: u64) -> DegreeBounds {
    let nn = n * n.saturating_sub(1);
    DegreeBounds { q: nn * (4 * n + 1) / 6, mu: n, alpha: nn, lambda: nn }
}
