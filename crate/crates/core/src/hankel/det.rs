//! Determinants over integral domains: fraction-free elimination, cofactor
//! expansion, and a division-free minor expansion modulo a power of `q`.

use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational};
use crate::exec::Exec;

/// Integral domain with exact division, enough for fraction-free elimination.
pub trait DetRing: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d` when `d` divides `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl DetRing for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, d).ok().flatten()
    }
}

impl DetRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
}

impl DetRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        IntPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        IntPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        IntPoly::div_exact(self, d)
    }
}

/// Fraction-free (Bareiss) elimination with row swaps on zero pivots.
///
/// The rows below each pivot are updated independently, in parallel when
/// `exec` allows. Any inexact division is reported as an error.
pub fn bareiss<T: DetRing>(matrix: Vec<Vec<T>>, exec: Exec) -> Result<T> {
    let n = matrix.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = matrix;
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot_row = a[k].clone();
        let (prev_ref, rows) = (&prev, &a[k + 1..]);
        let updated: Vec<Result<Vec<T>>> = exec.map(rows, |row| {
            let mut out = row.clone();
            for j in k + 1..n {
                let t = row[j].mul(&pivot_row[k]).sub(&row[k].mul(&pivot_row[j]));
                out[j] = t
                    .div_exact(prev_ref)
                    .ok_or_else(|| Error::InexactDivision(format!("step {k}, column {j}")))?;
            }
            out[k] = T::zero();
            Ok(out)
        });
        for (i, row) in updated.into_iter().enumerate() {
            a[k + 1 + i] = row?;
        }
        prev = pivot_row[k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Laplace expansion along the first row; exponential, for cross-checks.
pub fn cofactor<T: DetRing>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(matrix, 0, &cols)
}

fn cofactor_rec<T: DetRing>(m: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = T::zero();
    for (t, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].mul(&cofactor_rec(m, row + 1, &rest));
        acc = if t % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `det(matrix) mod q^k` by the division-free subset recursion over the
/// rows.
///
/// Each partial minor on rows `0..r` is truncated at `k` minus the least
/// q-order the remaining rows can still contribute on the remaining columns,
/// computed from the actual entry orders. Minors with the same column count
/// are independent and run in parallel when `exec` allows.
pub fn det_mod_q_power(matrix: &[Vec<MultiPoly>], k: u32, exec: Exec) -> MultiPoly {
    let n = matrix.len();
    if n == 0 {
        return MultiPoly::one().truncate_q(k);
    }
    assert!(n <= 20, "subset recursion limited to n ≤ 20");
    let full = (1usize << n) - 1;
    let entries: Vec<Vec<MultiPoly>> = matrix.iter().map(|r| r.iter().map(|p| p.truncate_q(k)).collect()).collect();
    let order: Vec<Vec<u64>> = entries
        .iter()
        .map(|r| r.iter().map(|p| p.q_order().map_or(u64::MAX, u64::from)).collect())
        .collect();
    // tail[t]: least total order of rows n−|t|..n on the column set t.
    let mut tail = vec![u64::MAX; 1 << n];
    tail[0] = 0;
    for t in 1..=full {
        let row = n - t.count_ones() as usize;
        tail[t] = (0..n)
            .filter(|&j| t & (1 << j) != 0)
            .map(|j| order[row][j].saturating_add(tail[t & !(1 << j)]))
            .min()
            .expect("non-empty");
    }
    let mut minors: Vec<MultiPoly> = vec![MultiPoly::zero(); 1 << n];
    minors[0] = MultiPoly::one();
    for r in 1..=n {
        let sets: Vec<usize> = (0..=full).filter(|s| s.count_ones() as usize == r).collect();
        let row = &entries[r - 1];
        let prev = &minors;
        let tail = &tail;
        let values = exec.map(&sets, |&s| {
            let rest_order = tail[full & !s];
            if rest_order >= k as u64 {
                return MultiPoly::zero();
            }
            let limit = k - rest_order as u32;
            let mut acc = MultiPoly::zero();
            // Expansion along row r−1; the sign counts columns of s above j.
            for (j, entry) in row.iter().enumerate().take(n) {
                if s & (1 << j) == 0 || entry.is_zero() {
                    continue;
                }
                let rest = s & !(1 << j);
                if prev[rest].is_zero() {
                    continue;
                }
                let above = (s >> (j + 1)).count_ones();
                let term = entry.mul_truncated(&prev[rest], limit);
                acc = if above % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        });
        for (s, v) in sets.into_iter().zip(values) {
            minors[s] = v;
        }
    }
    minors[full].clone()
}
