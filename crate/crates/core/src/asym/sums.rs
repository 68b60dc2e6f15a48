//! Exact totient-weighted floor sums and their cubic asymptotics.

use serde::Serialize;

use super::constants::{exponent_sum_constant, inverse_square_sum, pi};
use crate::error::{Error, Result};
use crate::exact::rational::format_rational;
use crate::exact::{totients_up_to, Rational};
use crate::exec::Exec;
use crate::hankel::e_l_compact;

/// `Σ_{i=0}^{n−1} ⌊(a·i + b)/m⌋` for `a, b ≥ 0`, `m > 0`.
pub fn floor_sum(n: i128, m: i128, a: i128, b: i128) -> i128 {
    assert!(m > 0 && a >= 0 && b >= 0 && n >= 0);
    let (mut n, mut m, mut a, mut b) = (n, m, a, b);
    let mut ans = 0;
    loop {
        if a >= m {
            ans += n * (n - 1) / 2 * (a / m);
            a %= m;
        }
        if b >= m {
            ans += n * (b / m);
            b %= m;
        }
        let y_max = a * n + b;
        if y_max < m {
            return ans;
        }
        n = y_max / m;
        b = y_max % m;
        std::mem::swap(&mut m, &mut a);
    }
}

/// Splits `1..=top` into contiguous chunks, sums each with `f`, and adds the
/// chunk totals in order.
fn chunked_sum<F>(top: usize, exec: Exec, f: F) -> u128
where
    F: Fn(usize) -> u128 + Sync + Send,
{
    const CHUNK: usize = 256;
    let chunks = top.div_ceil(CHUNK);
    exec.map_range(0..chunks, |c| {
        let lo = c * CHUNK + 1;
        let hi = ((c + 1) * CHUNK).min(top);
        (lo..=hi).map(&f).sum::<u128>()
    })
    .into_iter()
    .sum()
}

/// `Σ_{l≥1} e_l(n) φ(l)`; only `l ≤ (n−1)/2` contribute.
pub fn weighted_exponent_sum(n: u64, exec: Exec) -> u128 {
    let top = (n.saturating_sub(1) / 2) as usize;
    let phi = totients_up_to(top);
    chunked_sum(top, exec, |l| e_l_compact(l as u64, n) as u128 * phi[l] as u128)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedSumRow {
    pub n: u64,
    pub sum: u128,
    /// `sum / n³`.
    pub ratio: f64,
    /// `|ratio − c| / c`.
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedSumReport {
    pub constant: f64,
    pub rows: Vec<WeightedSumRow>,
}

pub fn weighted_exponent_report(ns: &[u64], exec: Exec) -> Result<WeightedSumReport> {
    if let Some(&n) = ns.iter().find(|&&n| n < 3) {
        return Err(Error::Precondition(format!("n = {n} is below 3")));
    }
    let c = exponent_sum_constant(96)?.to_f64();
    let rows = ns
        .iter()
        .map(|&n| {
            let sum = weighted_exponent_sum(n, exec);
            let ratio = sum as f64 / (n as f64).powi(3);
            WeightedSumRow { n, sum, ratio, relative_deviation: (ratio - c).abs() / c }
        })
        .collect();
    Ok(WeightedSumReport { constant: c, rows })
}

/// `Σ_{l≥1} φ(l) Σ_{i=0}^{n} ⌊(i + cl)/(al)⌋` for rational `0 ≤ c < a`.
pub fn sumel_exact(a: &Rational, c: &Rational, n: u64, exec: Exec) -> Result<u128> {
    if *a <= Rational::from_integer(0.into()) || c.numer() < &0.into() || c >= a {
        return Err(Error::Precondition("need 0 ≤ c < a".into()));
    }
    let to_i = |x: &num_bigint::BigInt| -> Result<i128> {
        i128::try_from(x).map_err(|_| Error::Precondition("parameters too large".into()))
    };
    let (an, ad, cn, cd) = (to_i(a.numer())?, to_i(a.denom())?, to_i(c.numer())?, to_i(c.denom())?);
    // the inner sum vanishes once l(a − c) > n
    let gap = a - c;
    let top = (Rational::from_integer(n.into()) / gap).floor().to_integer();
    let top = usize::try_from(&top).map_err(|_| Error::Precondition("n too large".into()))?;
    let phi = totients_up_to(top);
    // (i + cl)/(al) = ad(cd·i + cn·l) / (an·cd·l)
    Ok(chunked_sum(top, exec, |l| {
        let li = l as i128;
        let s = floor_sum(n as i128 + 1, an * cd * li, ad * cd, ad * cn * li);
        s as u128 * phi[l] as u128
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct SumelReport {
    pub a: String,
    pub c: String,
    pub n: u64,
    pub sum: u128,
    /// `n³/π² · Σ_{m≥1} (am − c)^{−2}`.
    pub prediction: f64,
    pub ratio: f64,
}

pub fn sumel_partial(a: &Rational, c: &Rational, n: u64, exec: Exec) -> Result<SumelReport> {
    let sum = sumel_exact(a, c, n, exec)?;
    let s = inverse_square_sum(a, c, 96)?.div(&pi(96).square())?.to_f64();
    let prediction = s * (n as f64).powi(3);
    Ok(SumelReport {
        a: format_rational(a),
        c: format_rational(c),
        n,
        sum,
        prediction,
        ratio: sum as f64 / prediction,
    })
}
