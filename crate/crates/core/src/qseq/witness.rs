//! Numeric size of `𝒟̃_l v_n` relative to `|q|^{−(nl − C(l,2))}`.

use serde::Serialize;

use super::numeric::NumericSeq;
use super::operators::dtilde_operator;
use super::seq::{Param, Seed, SeqContext};
use crate::error::Result;
use crate::exact::{BigFloat, Rational, Var};
use crate::exec::Exec;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub l: u32,
    pub n: u32,
    /// Upper bound for `log₂(|𝒟̃_l v_n| · |q|^{nl − C(l,2)})`.
    pub log2_quantity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub q: String,
    pub alpha: String,
    pub lambda: String,
    pub n_max: u32,
    /// `Ĉ` fitted on `n ≤ n_max/2`.
    pub c_hat_fit: f64,
    /// Smallest `Ĉ` with every quantity at most `Ĉ^{n+1}`.
    pub c_hat: f64,
    /// Every row with `n > n_max/2` stays below `(2Ĉ_fit)^{n+1}`.
    pub linear_growth: bool,
    pub rows: Vec<WitnessRow>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.c_hat.is_finite() && self.linear_growth
    }
}

/// All `0 ≤ l ≤ n ≤ n_max` at `prec` bits.
pub fn dtilde_witness(q: &Rational, alpha: &Rational, lambda: &Rational, n_max: u32, prec: u32, exec: Exec) -> Result<WitnessReport> {
    let mut seq = NumericSeq::new(q.clone(), alpha.clone(), lambda.clone(), prec)?;
    let vals = seq.tails(n_max + 1, exec);
    let ctx = SeqContext::new(Param::Value(alpha.clone()), Param::Value(lambda.clone()), Seed::SymbolicMu);
    let mut point: [Rational; 4] = Default::default();
    point[Var::Q.index()] = q.clone();
    point[Var::Alpha.index()] = alpha.clone();
    point[Var::Lambda.index()] = lambda.clone();
    let per_l = exec.map_range(0..n_max as usize + 1, |l| {
        let l = l as u32;
        let op = dtilde_operator(&ctx, l);
        let coeffs: Vec<Rational> = op.coeffs.iter().map(|c| c.eval(&point)).collect();
        (l..=n_max)
            .map(|n| {
                let mut acc = BigFloat::zero(prec);
                for (s, c) in coeffs.iter().enumerate() {
                    acc = acc.add(&vals[(n - s as u32) as usize].mul_rational(c));
                }
                let e = (n * l) as i64 - (l * l.saturating_sub(1) / 2) as i64 - op.q_denom as i64;
                let scale = if e >= 0 { num_traits::pow(q.clone(), e as usize) } else { num_traits::pow(q.recip(), (-e) as usize) };
                let v = acc.mul_rational(&scale).abs_upper();
                let log2_quantity = if v.is_zero() { f64::NEG_INFINITY } else { v.log2() };
                WitnessRow { l, n, log2_quantity }
            })
            .collect::<Vec<_>>()
    });
    let rows: Vec<WitnessRow> = per_l.into_iter().flatten().collect();
    let per_step = |r: &WitnessRow| r.log2_quantity / (r.n + 1) as f64;
    let fit = rows.iter().filter(|r| 2 * r.n <= n_max).map(per_step).fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let all = rows.iter().map(per_step).fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let linear_growth = rows.iter().filter(|r| 2 * r.n > n_max).all(|r| per_step(r) <= fit + 1.0);
    Ok(WitnessReport {
        q: crate::exact::rational::format_rational(q),
        alpha: crate::exact::rational::format_rational(alpha),
        lambda: crate::exact::rational::format_rational(lambda),
        n_max,
        c_hat_fit: fit.exp2(),
        c_hat: all.exp2(),
        linear_growth,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bounded_for_default_parameters() {
        let r = dtilde_witness(&rat(2, 1), &rat(1, 1), &rat(1, 2), 14, 256, Exec::Parallel).unwrap();
        assert_eq!(r.rows.len(), 15 * 16 / 2);
        assert!(r.passed(), "{:?}", (r.c_hat_fit, r.c_hat));
    }

    #[test]
    fn zeroth_operator_is_the_tail() {
        let r = dtilde_witness(&rat(2, 1), &rat(1, 1), &rat(0, 1), 2, 128, Exec::Sequential).unwrap();
        // l = 0, n = 0: |v_0| = μ − 1 ≈ 0.64
        assert!((r.rows[0].log2_quantity - 0.6416_f64.log2()).abs() < 0.01);
    }
}
