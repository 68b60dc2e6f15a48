//! Reproducible "generic" rational specializations of `(α, λ, μ)`.

use log::info;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::rational::positive_power_index;
use crate::exact::Rational;
use crate::qseq::{Param, Seed, SeqContext};

pub const DEFAULT_SEED: u64 = 20080812;

/// Numerators and denominators are drawn from `1..=MAX_PART`.
pub const MAX_PART: i64 = 40;

/// How `λ` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaMode {
    Zero,
    Fixed(Rational),
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericPoint {
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub lambda: Rational,
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub mu: Rational,
}

impl GenericPoint {
    /// Context with all three parameters fixed and `q` symbolic.
    pub fn context(&self) -> SeqContext {
        SeqContext::new(Param::Value(self.alpha.clone()), Param::Value(self.lambda.clone()), Seed::Explicit(self.mu.clone()))
    }

    /// Exclusions `λ ∉ q^{ℤ>0}` and `α ∉ −λ q^{ℤ>0}` for a rational `q`.
    pub fn admissible_for_q(&self, q: &Rational) -> bool {
        if self.alpha.is_zero() || positive_power_index(q, &self.lambda).is_some() {
            return false;
        }
        self.lambda.is_zero() || positive_power_index(q, &(-&self.alpha / &self.lambda)).is_none()
    }
}

/// Seeded source of positive rationals `a/b` with `1 ≤ a, b ≤ 40`.
#[derive(Clone, Debug)]
pub struct Specializer {
    rng: ChaCha8Rng,
}

impl Specializer {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let a = self.rng.gen_range(1..=MAX_PART);
        let b = self.rng.gen_range(1..=MAX_PART);
        Rational::new(a.into(), b.into())
    }

    /// A point satisfying the exclusions for `q` (when given) and `accept`.
    /// Rejected draws are logged and re-drawn.
    pub fn point<F>(&mut self, lambda: &LambdaMode, q: Option<&Rational>, accept: F) -> GenericPoint
    where
        F: Fn(&GenericPoint) -> bool,
    {
        loop {
            let alpha = self.rational();
            let lambda = match lambda {
                LambdaMode::Zero => Rational::zero(),
                LambdaMode::Fixed(l) => l.clone(),
                LambdaMode::Generic => self.rational(),
            };
            let mu = self.rational();
            let p = GenericPoint { alpha, lambda, mu };
            if q.is_some_and(|q| !p.admissible_for_q(q)) {
                info!("rejected draw {p:?}: excluded value for q = {}", q.expect("checked"));
                continue;
            }
            if !accept(&p) {
                info!("rejected degenerate draw {p:?}");
                continue;
            }
            return p;
        }
    }

    /// A rational `x ≠ 1` for `V_n(x)` scans.
    pub fn x_value(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_one() {
                return x;
            }
        }
    }
}
