//! Difference operators in the backward shift `N: v_n ↦ v_{n−1}`.

use num_traits::One;

use super::qbinomial::gauss_binomial;
use super::seq::{SeqContext, SeqFrac};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational};

/// `q^{−q_denom} Σ_k coeffs[k] N^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    pub coeffs: Vec<MultiPoly>,
    pub q_denom: u32,
}

impl ShiftOperator {
    pub fn identity() -> Self {
        Self { coeffs: vec![MultiPoly::one()], q_denom: 0 }
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        Self { coeffs, q_denom: 0 }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn compose(&self, o: &ShiftOperator) -> ShiftOperator {
        let mut out = vec![MultiPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ShiftOperator { coeffs: out, q_denom: self.q_denom + o.q_denom }
    }

    pub fn pow(&self, k: u32) -> ShiftOperator {
        (0..k).fold(ShiftOperator::identity(), |acc, _| acc.compose(self))
    }

    /// `Σ_k c_k v_{n−k}`, times `q^{−q_denom}`.
    pub fn apply(&self, ctx: &SeqContext, n: i64) -> Result<SeqFrac> {
        let mut acc = SeqFrac::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&ctx.v_frac(n - k as i64)?.mul_poly(c));
        }
        Ok(acc.mul_q_power(-(self.q_denom as i64)))
    }
}

/// `𝒟_l = Π_{k<l} (I + (λ−α) q^k N − λα q^{2k} N²)`.
pub fn d_operator(ctx: &SeqContext, l: u32) -> ShiftOperator {
    let lam = ctx.lambda_poly();
    let alpha = ctx.alpha_poly();
    let lin = &lam - &alpha;
    let quad = -(&lam * &alpha);
    (0..l).fold(ShiftOperator::identity(), |acc, k| {
        let f = ShiftOperator::from_coeffs(vec![MultiPoly::one(), lin.mul_q_pow(k), quad.mul_q_pow(2 * k)]);
        acc.compose(&f)
    })
}

/// `𝒟̃_l = Π_{k=1}^{l} (I − α q^{−k} N)`, stored as
/// `q^{−l(l+1)/2} Π (q^k I − α N)`.
pub fn dtilde_operator(ctx: &SeqContext, l: u32) -> ShiftOperator {
    let minus_alpha = -ctx.alpha_poly();
    let mut op = (1..=l).fold(ShiftOperator::identity(), |acc, k| {
        acc.compose(&ShiftOperator::from_coeffs(vec![MultiPoly::q_pow(k), minus_alpha.clone()]))
    });
    op.q_denom = l * (l + 1) / 2;
    op
}

pub fn apply_d(ctx: &SeqContext, l: u32, n: i64) -> Result<SeqFrac> {
    d_operator(ctx, l).apply(ctx, n)
}

pub fn apply_dtilde(ctx: &SeqContext, l: u32, n: i64) -> Result<SeqFrac> {
    dtilde_operator(ctx, l).apply(ctx, n)
}

/// `q^{l(n−l)} Σ_{s=0}^{l} [l s]_q q^{(l−s+1)(l−s)/2} (−α)^s v_{n−l−s}`.
pub fn lemma_rhs(ctx: &SeqContext, l: u32, n: i64) -> Result<SeqFrac> {
    let minus_alpha = -ctx.alpha_poly();
    let mut acc = SeqFrac::zero();
    for s in 0..=l {
        let t = l - s;
        let c = gauss_binomial(l as i64, s as i64)?.mul_q_pow(t * (t + 1) / 2);
        let c = &c * &minus_alpha.pow(s);
        acc = acc.add(&ctx.v_frac(n - l as i64 - s as i64)?.mul_poly(&c));
    }
    let l = l as i64;
    Ok(acc.mul_q_power(l * (n - l)))
}

/// `B_l = Π_{k<l}(ζ^k − λ) = (−1)^l (λ^l − 1)`, `ζ` a primitive `l`-th root
/// of unity.
pub fn b_closed_form(lambda: &Rational, l: u32) -> Rational {
    let v = num_traits::pow(lambda.clone(), l as usize) - Rational::one();
    if l % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `w_{m,n}` together with whether `n` is in the range where
/// `Φ_l^m | w_{m,n}` is guaranteed.
#[derive(Clone, Debug)]
pub struct WValue {
    pub poly: MultiPoly,
    pub guaranteed: bool,
}

/// `w_{m,n} = (I − B_l N^l)^{2m−1} (I − α^l N^l)^m v_n`.
///
/// Requires rational `α` and `λ`. Below `n = (3m−1)l` the call fails unless
/// `force` is set, in which case the value is returned flagged unguaranteed.
pub fn apply_fg(ctx: &SeqContext, l: u32, m: u32, n: i64, force: bool) -> Result<WValue> {
    if l == 0 || m == 0 {
        return Err(Error::Precondition("l and m must be positive".into()));
    }
    let (Some(alpha), Some(lambda)) = (ctx.alpha().value(), ctx.lambda().value()) else {
        return Err(Error::Precondition("w_{m,n} needs rational α and λ".into()));
    };
    let threshold = (3 * m as i64 - 1) * l as i64;
    let guaranteed = n >= threshold;
    if !guaranteed && !force {
        return Err(Error::BelowThreshold { n, threshold });
    }
    let shifted = |c: Rational| {
        let mut coeffs = vec![MultiPoly::zero(); l as usize + 1];
        coeffs[0] = MultiPoly::one();
        coeffs[l as usize] = MultiPoly::constant(-c);
        ShiftOperator::from_coeffs(coeffs)
    };
    let f = shifted(b_closed_form(lambda, l)).pow(2 * m - 1);
    let g = shifted(num_traits::pow(alpha.clone(), l as usize)).pow(m);
    let value = f.compose(&g).apply(ctx, n)?;
    let poly = value
        .to_poly()
        .ok_or_else(|| Error::Precondition("w_{m,n} is not a polynomial here".into()))?;
    Ok(WValue { poly, guaranteed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cyclotomic, rat, Var};
    use crate::qseq::seq::{Param, Seed};
    use num_traits::ToPrimitive;

    #[test]
    fn zeroth_operators_are_identity() {
        let ctx = SeqContext::symbolic();
        for n in 0..4 {
            let v = SeqFrac::from_poly((*ctx.v(n).unwrap()).clone());
            assert!(apply_d(&ctx, 0, n).unwrap().equals(&v));
            assert!(apply_dtilde(&ctx, 0, n).unwrap().equals(&v));
        }
    }

    #[test]
    fn dtilde_first_order_by_hand() {
        let ctx = SeqContext::symbolic();
        // v_1 − α q^{−1} v_0
        let v0 = (*ctx.v(0).unwrap()).clone();
        let v1 = (*ctx.v(1).unwrap()).clone();
        let expected = SeqFrac::new(&v1.mul_q_pow(1) - &(&MultiPoly::var(Var::Alpha) * &v0), MultiPoly::q());
        assert!(apply_dtilde(&ctx, 1, 1).unwrap().equals(&expected));
    }

    #[test]
    fn lemma_identity_small_grid() {
        let ctx = SeqContext::symbolic();
        for l in 0..=2u32 {
            for n in (2 * l as i64 - 1).max(0)..=6 {
                let lhs = apply_d(&ctx, l, n).unwrap();
                let rhs = lemma_rhs(&ctx, l, n).unwrap();
                assert!(lhs.equals(&rhs), "l = {l}, n = {n}");
            }
        }
    }

    #[test]
    fn operator_relation_small_grid() {
        let ctx = SeqContext::symbolic();
        for l in 0..=2u32 {
            for n in (2 * l as i64 - 1).max(0)..=6 {
                let lhs = apply_d(&ctx, l, n).unwrap();
                let e = l as i64 * n - (l as i64 * (l as i64 - 1)) / 2;
                let rhs = apply_dtilde(&ctx, l, n - l as i64).unwrap().mul_q_power(e);
                assert!(lhs.equals(&rhs), "l = {l}, n = {n}");
            }
        }
    }

    #[test]
    fn b_matches_product_over_roots_of_unity() {
        for l in 1..=8u32 {
            for lam in [rat(3, 1), rat(1, 2), rat(-2, 3), rat(0, 1), rat(1, 1)] {
                let lf = lam.to_f64().unwrap();
                let (mut re, mut im) = (1.0f64, 0.0f64);
                for k in 0..l {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / l as f64;
                    let (a, b) = (t.cos() - lf, t.sin());
                    (re, im) = (re * a - im * b, re * b + im * a);
                }
                let closed = b_closed_form(&lam, l);
                let cf = closed.to_f64().unwrap();
                assert!((re - cf).abs() < 1e-9 * (1.0 + cf.abs()) && im.abs() < 1e-9 * (1.0 + cf.abs()), "l = {l}");
            }
        }
        assert_eq!(b_closed_form(&rat(3, 1), 1), rat(-2, 1));
    }

    #[test]
    fn w_divisible_at_threshold() {
        let ctx = SeqContext::new(Param::int(1), Param::Value(rat(1, 2)), Seed::SymbolicMu);
        let phi1 = cyclotomic(1).unwrap();
        for n in 2..=5 {
            let w = apply_fg(&ctx, 1, 1, n, false).unwrap();
            assert!(w.guaranteed);
            assert!(w.poly.divide_exact_q(&phi1).unwrap().is_some(), "n = {n}");
        }
        assert_eq!(
            apply_fg(&ctx, 1, 1, 1, false).unwrap_err(),
            Error::BelowThreshold { n: 1, threshold: 2 }
        );
        assert!(!apply_fg(&ctx, 1, 1, 1, true).unwrap().guaranteed);
        assert!(apply_fg(&SeqContext::symbolic(), 1, 1, 3, false).is_err());
    }
}
