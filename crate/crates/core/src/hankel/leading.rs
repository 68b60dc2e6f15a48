//! Lowest-order terms of `V_n` and the auxiliary determinants `K_n`.

use serde::Serialize;

use super::det::{bareiss, det_mod_q_power};
use super::formulas::e0_formula;
use crate::error::Result;
use crate::exact::{MultiPoly, PolyRecord, Rational, Var};
use crate::exec::Exec;
use crate::qseq::{d_operator, SeqContext};

/// Rows of the Hankel matrix after applying `𝒟_{l_i}` to row `i`, with
/// `l_i = ⌊i/2⌋` (or `min(i, ⌊n/2⌋)` when `λ = 0`), truncated mod `q^k`.
///
/// Each new row adds multiples of the rows above it, so the determinant is
/// unchanged while the entries gain high q-order.
pub fn reduced_rows(ctx: &SeqContext, n: usize, k: u32) -> Result<Vec<Vec<MultiPoly>>> {
    let lambda_zero = ctx.lambda().is_zero();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let l = if lambda_zero { i.min(n / 2) } else { i / 2 };
        let op = d_operator(ctx, l as u32);
        let row = (0..n)
            .map(|j| {
                let mut acc = MultiPoly::zero();
                for (s, c) in op.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let v = ctx.v((i + j) as i64 - s as i64)?;
                    acc = &acc + &c.mul_truncated(&v, k);
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// `V_n mod q^{e_0(n)+1}`.
pub fn low_order_part(ctx: &SeqContext, n: usize, exec: Exec) -> Result<(u64, MultiPoly)> {
    let e0 = e0_formula(n as u64, ctx.lambda().is_zero());
    let k = e0 as u32 + 1;
    let rows = reduced_rows(ctx, n, k)?;
    Ok((e0, det_mod_q_power(&rows, k, exec)))
}

/// The predicted coefficient of `q^{e_0(n)}` in `V_n`, in the parameters of
/// `ctx` (symbolic or specialized).
pub fn expected_leading(ctx: &SeqContext, n: u64) -> MultiPoly {
    let alpha = ctx.alpha_poly();
    let lam = ctx.lambda_poly();
    let mu = ctx.mu_poly();
    let one = MultiPoly::one();
    if n == 0 {
        return one;
    }
    if !ctx.lambda().is_zero() {
        let box_det = &lam - &(&(&lam + &alpha) * &mu);
        let a = alpha.pow((n * (n - 1) / 2) as u32);
        return if n.is_multiple_of(2) {
            &(&a * &lam.pow((n * (n - 2) / 4) as u32)) * &box_det.pow((n / 2) as u32)
        } else {
            let rest = &(&mu - &one) * &box_det.pow(((n - 1) / 2) as u32);
            &(&a * &lam.pow(((n - 1) * (n - 1) / 4) as u32)) * &rest
        };
    }
    if n.is_multiple_of(2) {
        let sign = if (n * (n + 2) / 8).is_multiple_of(2) { 1 } else { -1 };
        (&alpha.pow((n * (5 * n - 2) / 8) as u32) * &mu.pow((n / 2) as u32)).scale(&Rational::from_integer(sign.into()))
    } else {
        let sign = if ((n - 1) * n.saturating_sub(3) / 8).is_multiple_of(2) { 1 } else { -1 };
        let k = KSequence::new(alpha.clone(), mu).get(((n - 1) / 2) as usize);
        (&alpha.pow(((n - 1) * (5 * n + 1) / 8) as u32) * &k).scale(&Rational::from_integer(sign.into()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingReport {
    pub n: u64,
    pub lambda_is_zero: bool,
    pub e0: u64,
    /// Every coefficient of `q^k`, `k < e_0`, vanishes.
    pub lower_terms_vanish: bool,
    pub coefficient_matches: bool,
    pub found: PolyRecord,
    pub expected: PolyRecord,
}

impl LeadingReport {
    pub fn passed(&self) -> bool {
        self.lower_terms_vanish && self.coefficient_matches
    }
}

pub fn verify_leading(ctx: &SeqContext, n: u64, exec: Exec) -> Result<LeadingReport> {
    let (e0, low) = low_order_part(ctx, n as usize, exec)?;
    let lower_terms_vanish = low.is_zero() || low.q_order()? as u64 >= e0;
    let found = low.q_coeff(e0 as u32);
    let expected = expected_leading(ctx, n);
    Ok(LeadingReport {
        n,
        lambda_is_zero: ctx.lambda().is_zero(),
        e0,
        lower_terms_vanish,
        coefficient_matches: found == expected,
        found: found.to_record(),
        expected: expected.to_record(),
    })
}

/// Memoized `K_n(α, μ)` from `K_0 = μ−1`, `K_1 = (μ−1)² + αμ`,
/// `K_{n+2} = (μ−1−αμ) K_{n+1} + αμ² K_n`.
#[derive(Clone, Debug)]
pub struct KSequence {
    alpha: MultiPoly,
    mu: MultiPoly,
    values: Vec<MultiPoly>,
}

impl KSequence {
    pub fn new(alpha: MultiPoly, mu: MultiPoly) -> Self {
        let m1 = &mu - &MultiPoly::one();
        let k1 = &(&m1 * &m1) + &(&alpha * &mu);
        Self { alpha, mu, values: vec![m1, k1] }
    }

    pub fn symbolic() -> Self {
        Self::new(MultiPoly::var(Var::Alpha), MultiPoly::var(Var::Mu))
    }

    pub fn get(&mut self, n: usize) -> MultiPoly {
        let a = &(&self.mu - &MultiPoly::one()) - &(&self.alpha * &self.mu);
        let b = &self.alpha * &self.mu.pow(2);
        while self.values.len() <= n {
            let k = self.values.len();
            let next = &(&a * &self.values[k - 1]) + &(&b * &self.values[k - 2]);
            self.values.push(next);
        }
        self.values[n].clone()
    }
}

/// `K_n` by the recurrence, symbolic in `α, μ`.
pub fn k_rec(n: usize) -> MultiPoly {
    KSequence::symbolic().get(n)
}

/// `K_n` as the determinant of the `(n+1)×(n+1)` matrix with `μ−1` on the
/// diagonal, `−α^{j−i}` above it, `μ` just below it and zeros further down.
pub fn k_det(n: usize, exec: Exec) -> Result<MultiPoly> {
    let alpha = MultiPoly::var(Var::Alpha);
    let mu = MultiPoly::var(Var::Mu);
    let m1 = &mu - &MultiPoly::one();
    let matrix = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if j == i {
                        m1.clone()
                    } else if j > i {
                        -alpha.pow((j - i) as u32)
                    } else if i == j + 1 {
                        mu.clone()
                    } else {
                        MultiPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    bareiss(matrix, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::hankel::vn::hankel_det;
    use crate::qseq::{Param, Seed};

    #[test]
    fn k_initial_values() {
        let mu = MultiPoly::var(Var::Mu);
        assert_eq!(k_rec(0), &mu - &MultiPoly::one());
        assert_eq!(k_det(0, Exec::Sequential).unwrap(), k_rec(0));
        assert_eq!(k_det(1, Exec::Sequential).unwrap(), k_rec(1));
        for n in 0..=6 {
            assert_eq!(k_det(n, Exec::Parallel).unwrap(), k_rec(n), "n = {n}");
        }
    }

    #[test]
    fn lambda_nonzero_small_cases() {
        let ctx = SeqContext::symbolic();
        for n in 1..=4 {
            let r = verify_leading(&ctx, n, Exec::Parallel).unwrap();
            assert!(r.passed(), "n = {n}: {r:?}");
        }
        // n = 2: coefficient of q^0 is α(λ − (λ+α)μ).
        let (a, l, m) = (MultiPoly::var(Var::Alpha), MultiPoly::var(Var::Lambda), MultiPoly::var(Var::Mu));
        let want = &a * &(&l - &(&(&l + &a) * &m));
        assert_eq!(expected_leading(&ctx, 2), want);
        assert_eq!(hankel_det(&ctx, 2, Exec::Parallel).unwrap().q_coeff(0), want);
    }

    #[test]
    fn lambda_zero_small_cases() {
        let ctx = SeqContext::new(Param::Symbolic, Param::int(0), Seed::SymbolicMu);
        for n in 1..=5 {
            let r = verify_leading(&ctx, n, Exec::Parallel).unwrap();
            assert!(r.passed(), "n = {n}: {r:?}");
            let full = hankel_det(&ctx, n as usize, Exec::Parallel).unwrap();
            assert_eq!(full.q_order().unwrap() as u64, r.e0);
        }
        // n = 3: α⁴ K_1 at q^{e0(3)} with e0(3) = 2.
        let k1 = k_rec(1);
        assert_eq!(expected_leading(&ctx, 3), &MultiPoly::var(Var::Alpha).pow(4) * &k1);
    }

    #[test]
    fn specialized_parameters() {
        let ctx = SeqContext::new(Param::Symbolic, Param::Value(rat(3, 5)), Seed::SymbolicMu);
        let r = verify_leading(&ctx, 5, Exec::Parallel).unwrap();
        assert!(r.passed());
    }
}
