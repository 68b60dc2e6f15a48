//! Rigorous numeric tails `v_n = Σ_{k>n} α^k / Π_{j=n+1}^{k} (q^j − λ)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::positive_power_index;
use crate::exact::{BigFloat, Mag, Rational};
use crate::exec::Exec;

/// Numeric sequence for rational `q, α, λ` with `|q| > 1`, single-owner memo.
#[derive(Clone, Debug)]
pub struct NumericSeq {
    q: Rational,
    alpha: Rational,
    lambda: Rational,
    prec: u32,
    memo: BTreeMap<u32, BigFloat>,
}

impl NumericSeq {
    pub fn new(q: Rational, alpha: Rational, lambda: Rational, prec: u32) -> Result<Self> {
        if q.abs() <= Rational::one() {
            return Err(Error::Precondition("|q| > 1 required".into()));
        }
        if let Some(j) = positive_power_index(&q, &lambda) {
            return Err(Error::DenominatorVanishes(j));
        }
        Ok(Self { q, alpha, lambda, prec, memo: BTreeMap::new() })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// `v_n` as a ball with radius at most `2^{−prec}` plus rounding.
    pub fn tail(&mut self, n: u32) -> BigFloat {
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let v = tail_value(&self.q, &self.alpha, &self.lambda, n, self.prec);
        self.memo.insert(n, v.clone());
        v
    }

    /// `v_0, …, v_{count−1}`, computed independently per index.
    pub fn tails(&mut self, count: u32, exec: Exec) -> Vec<BigFloat> {
        let missing: Vec<u32> = (0..count).filter(|n| !self.memo.contains_key(n)).collect();
        let (q, a, l, p) = (&self.q, &self.alpha, &self.lambda, self.prec);
        let fresh = exec.map(&missing, |&n| tail_value(q, a, l, n, p));
        for (n, v) in missing.into_iter().zip(fresh) {
            self.memo.insert(n, v);
        }
        (0..count).map(|n| self.memo[&n].clone()).collect()
    }

    /// `μ = F_q(α; λ) = 1 + v_0`.
    pub fn mu(&mut self) -> BigFloat {
        BigFloat::one(self.prec).add(&self.tail(0))
    }
}

fn tail_value(q: &Rational, alpha: &Rational, lambda: &Rational, n: u32, prec: u32) -> BigFloat {
    if alpha.is_zero() {
        return BigFloat::zero(prec);
    }
    let target = Mag::pow2(-(prec as i64) - 2);
    let two_lambda = lambda.abs() * Rational::from_integer(2.into());
    let abs_alpha = alpha.abs();
    let mut sum = Rational::zero();
    let mut term = num_traits::pow(alpha.clone(), n as usize);
    let mut q_pow = num_traits::pow(q.clone(), n as usize);
    loop {
        q_pow *= q;
        term = term * alpha / (&q_pow - lambda);
        sum += &term;
        // Past |q|^{k+1} >= 2|λ| every later ratio is at most 2|α| / |q|^{k+1}.
        let next = q_pow.abs() * q.abs();
        if next >= two_lambda {
            let r = &abs_alpha * Rational::from_integer(2.into()) / &next;
            if r < Rational::one() {
                let bound = term.abs() * &r / (Rational::one() - &r);
                let bound = Mag::from_rational_up(&bound);
                if bound <= target {
                    return BigFloat::from_rational(&sum, prec).with_err(bound);
                }
            }
        }
    }
}

/// `F_q(z; λ) = Σ_{n≥0} z^n / Π_{j=1}^{n} (q^j − λ)`.
pub fn f_eval(q: &Rational, lambda: &Rational, z: &Rational, prec: u32) -> Result<BigFloat> {
    Ok(NumericSeq::new(q.clone(), z.clone(), lambda.clone(), prec)?.mu())
}
