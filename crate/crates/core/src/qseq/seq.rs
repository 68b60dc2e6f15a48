//! The sequence `v_0 = μ − 1`, `v_n = (q^n − λ) v_{n−1} − α^n`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational, Var};

/// A parameter that is either kept as a polynomial variable or fixed to a
/// rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(Rational),
}

impl Param {
    pub fn int(n: i64) -> Param {
        Param::Value(Rational::from_integer(n.into()))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Symbolic => None,
            Param::Value(r) => Some(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Param::Value(r) if r.is_zero())
    }

    pub fn poly(&self, v: Var) -> MultiPoly {
        match self {
            Param::Symbolic => MultiPoly::var(v),
            Param::Value(r) => MultiPoly::constant(r.clone()),
        }
    }
}

/// Initial value `v_0`: `μ − 1` with `μ` symbolic, or `x − 1` for a fixed `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    SymbolicMu,
    Explicit(Rational),
}

/// Parameters of the sequence plus a memo of the computed values.
///
/// Reads are concurrent; a missing index is computed outside the lock and
/// inserted afterwards, so racing fills produce identical values.
#[derive(Debug)]
pub struct SeqContext {
    alpha: Param,
    lambda: Param,
    seed: Seed,
    memo: RwLock<BTreeMap<i64, Arc<MultiPoly>>>,
}

impl Clone for SeqContext {
    fn clone(&self) -> Self {
        Self::new(self.alpha.clone(), self.lambda.clone(), self.seed.clone())
    }
}

impl SeqContext {
    pub fn new(alpha: Param, lambda: Param, seed: Seed) -> Self {
        Self { alpha, lambda, seed, memo: RwLock::new(BTreeMap::new()) }
    }

    /// All of `α`, `λ`, `μ` symbolic.
    pub fn symbolic() -> Self {
        Self::new(Param::Symbolic, Param::Symbolic, Seed::SymbolicMu)
    }

    pub fn alpha(&self) -> &Param {
        &self.alpha
    }

    pub fn lambda(&self) -> &Param {
        &self.lambda
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn alpha_poly(&self) -> MultiPoly {
        self.alpha.poly(Var::Alpha)
    }

    pub fn lambda_poly(&self) -> MultiPoly {
        self.lambda.poly(Var::Lambda)
    }

    /// `μ` (or the explicit `x`) as a polynomial.
    pub fn mu_poly(&self) -> MultiPoly {
        match &self.seed {
            Seed::SymbolicMu => MultiPoly::var(Var::Mu),
            Seed::Explicit(x) => MultiPoly::constant(x.clone()),
        }
    }

    /// `b_j = q^j − λ`.
    pub fn b(&self, j: u32) -> MultiPoly {
        &MultiPoly::q_pow(j) - &self.lambda_poly()
    }

    fn cached(&self, n: i64) -> Option<Arc<MultiPoly>> {
        self.memo.read().expect("memo lock").get(&n).cloned()
    }

    fn store(&self, n: i64, p: MultiPoly) -> Arc<MultiPoly> {
        let mut memo = self.memo.write().expect("memo lock");
        memo.entry(n).or_insert_with(|| Arc::new(p)).clone()
    }

    /// `v_n` by the recurrence; negative `n` only when `λ = 0` and `α` is a
    /// non-zero rational.
    pub fn v(&self, n: i64) -> Result<Arc<MultiPoly>> {
        if let Some(p) = self.cached(n) {
            return Ok(p);
        }
        if n >= 0 {
            self.fill_forward(n)
        } else {
            self.fill_backward(n)
        }
    }

    fn fill_forward(&self, n: i64) -> Result<Arc<MultiPoly>> {
        let (mut k, mut cur) = {
            let memo = self.memo.read().expect("memo lock");
            match memo.range(0..n).next_back() {
                Some((&k, p)) => (k, (**p).clone()),
                None => (0, &self.mu_poly() - &MultiPoly::one()),
            }
        };
        if k == 0 {
            self.store(0, cur.clone());
        }
        let alpha = self.alpha_poly();
        while k < n {
            k += 1;
            cur = &(&self.b(k as u32) * &cur) - &alpha.pow(k as u32);
            self.store(k, cur.clone());
        }
        Ok(self.cached(n).expect("just stored"))
    }

    fn negative_alpha(&self, n: i64) -> Result<Rational> {
        if !self.lambda.is_zero() {
            return Err(Error::NegativeIndexNonzeroLambda(n));
        }
        match self.alpha.value() {
            Some(a) if !a.is_zero() => Ok(a.clone()),
            _ => Err(Error::NegativeIndexSymbolicAlpha(n)),
        }
    }

    fn fill_backward(&self, n: i64) -> Result<Arc<MultiPoly>> {
        let alpha = self.negative_alpha(n)?;
        let inv = alpha.recip();
        // v_{−k−1} = q^k (v_{−k} + α^{−k})
        let mut cur = (*self.v(0)?).clone();
        let mut inv_pow = Rational::one();
        for k in 0..(-n) {
            let idx = -k - 1;
            if let Some(p) = self.cached(idx) {
                cur = (*p).clone();
            } else {
                cur = (&cur + &MultiPoly::constant(inv_pow.clone())).mul_q_pow(k as u32);
                self.store(idx, cur.clone());
            }
            inv_pow *= &inv;
        }
        Ok(self.cached(n).expect("just stored"))
    }

    /// `v_n` as a fraction, additionally allowing `v_{−1} = μ / (1 − λ)` when
    /// `λ ≠ 0`.
    pub fn v_frac(&self, n: i64) -> Result<SeqFrac> {
        if n >= 0 || self.lambda.is_zero() {
            return Ok(SeqFrac::from_poly((*self.v(n)?).clone()));
        }
        if n == -1 {
            let den = &MultiPoly::one() - &self.lambda_poly();
            if den.is_zero() {
                return Err(Error::Precondition("v_{-1} undefined for λ = 1".into()));
            }
            return Ok(SeqFrac::new(self.mu_poly(), den));
        }
        Err(Error::NegativeIndexNonzeroLambda(n))
    }

    /// `v_n = μ Π_{j≤n} b_j − Σ_{k≤n} α^k Π_{k<j≤n} b_j`, computed without the
    /// memo as an independent cross-check of the recurrence.
    pub fn v_closed_form(&self, n: u32) -> MultiPoly {
        let alpha = self.alpha_poly();
        // suffix[k] = Π_{j=k+1}^{n} b_j
        let mut suffix = vec![MultiPoly::one(); n as usize + 1];
        for k in (0..n as usize).rev() {
            suffix[k] = &suffix[k + 1] * &self.b(k as u32 + 1);
        }
        let mut sum = MultiPoly::zero();
        for (k, s) in suffix.iter().enumerate() {
            sum = &sum + &(&alpha.pow(k as u32) * s);
        }
        &(&self.mu_poly() * &suffix[0]) - &sum
    }
}

/// Quotient `num / den` of polynomials, used where a sequence value or
/// operator result is a Laurent polynomial or involves `v_{−1}` for `λ ≠ 0`.
#[derive(Clone, Debug)]
pub struct SeqFrac {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl SeqFrac {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { num: p, den: MultiPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &SeqFrac) -> SeqFrac {
        if self.den == o.den {
            return SeqFrac::new(&self.num + &o.num, self.den.clone());
        }
        SeqFrac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> SeqFrac {
        SeqFrac::new(&self.num * p, self.den.clone())
    }

    /// Multiplies by `q^e`, `e` of either sign.
    pub fn mul_q_power(&self, e: i64) -> SeqFrac {
        if e >= 0 {
            SeqFrac::new(self.num.mul_q_pow(e as u32), self.den.clone())
        } else {
            SeqFrac::new(self.num.clone(), self.den.mul_q_pow((-e) as u32))
        }
    }

    /// Equality as rational functions.
    pub fn equals(&self, o: &SeqFrac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// The polynomial value, if the denominator divides exactly.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.num.div_exact(&self.den).ok().flatten()
    }

    /// `ord_q num − ord_q den`.
    pub fn q_order(&self) -> Result<i64> {
        Ok(self.num.q_order()? as i64 - self.den.q_order()? as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn mu() -> MultiPoly {
        MultiPoly::var(Var::Mu)
    }

    #[test]
    fn first_values() {
        let ctx = SeqContext::symbolic();
        assert_eq!(*ctx.v(0).unwrap(), &mu() - &MultiPoly::one());
        let expected = &(&ctx.b(1) * &(&mu() - &MultiPoly::one())) - &MultiPoly::var(Var::Alpha);
        assert_eq!(*ctx.v(1).unwrap(), expected);
    }

    #[test]
    fn closed_form_second_value_by_hand() {
        let ctx = SeqContext::symbolic();
        let (b1, b2) = (ctx.b(1), ctx.b(2));
        let alpha = MultiPoly::var(Var::Alpha);
        let expected = &(&(&(&mu() * &b1) * &b2) - &(&b1 * &b2)) - &(&(&alpha * &b2) + &alpha.pow(2));
        assert_eq!(ctx.v_closed_form(2), expected);
        assert_eq!(ctx.v_closed_form(0), &mu() - &MultiPoly::one());
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let ctx = SeqContext::symbolic();
        for n in 0..=12 {
            assert_eq!(ctx.v_closed_form(n), *ctx.v(n as i64).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn negative_indices() {
        let sym = SeqContext::symbolic();
        assert_eq!(sym.v(-1).unwrap_err(), Error::NegativeIndexNonzeroLambda(-1));
        let sym_alpha = SeqContext::new(Param::Symbolic, Param::int(0), Seed::SymbolicMu);
        assert_eq!(sym_alpha.v(-2).unwrap_err(), Error::NegativeIndexSymbolicAlpha(-2));

        let ctx = SeqContext::new(Param::int(1), Param::int(0), Seed::SymbolicMu);
        for n in 1..=6 {
            assert_eq!(ctx.v(-n).unwrap().q_order().unwrap() as i64, n - 1, "v_-{n}");
        }
        // v_0 = v_{-1} − 1 and v_{-2} = q (v_{-1} + 1)
        assert_eq!(&*ctx.v(-1).unwrap() - &MultiPoly::one(), *ctx.v(0).unwrap());
        assert_eq!((&*ctx.v(-1).unwrap() + &MultiPoly::one()).mul_q_pow(1), *ctx.v(-2).unwrap());
    }

    #[test]
    fn v_minus_one_fraction_for_nonzero_lambda() {
        let ctx = SeqContext::symbolic();
        let f = ctx.v_frac(-1).unwrap();
        // (q^0 − λ) v_{-1} − 1 = v_0
        let back = f.mul_poly(&(&MultiPoly::one() - &MultiPoly::var(Var::Lambda)));
        let v0 = SeqFrac::from_poly(&*ctx.v(0).unwrap() + &MultiPoly::one());
        assert!(back.equals(&v0));
        assert!(ctx.v_frac(-2).is_err());
        let one = SeqContext::new(Param::Symbolic, Param::int(1), Seed::SymbolicMu);
        assert!(one.v_frac(-1).is_err());
    }

    #[test]
    fn explicit_seed_and_concurrent_fill() {
        let ctx = SeqContext::new(Param::Value(rat(1, 3)), Param::int(2), Seed::Explicit(rat(5, 7)));
        let handles: Vec<MultiPoly> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..4).map(|_| s.spawn(|| (*ctx.v(9).unwrap()).clone())).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(handles.windows(2).all(|w| w[0] == w[1]));
        assert!(!handles[0].involves(Var::Mu));
        assert_eq!(handles[0], ctx.v_closed_form(9));
    }
}
