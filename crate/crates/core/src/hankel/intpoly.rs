//! Dense polynomials in `q` with integer coefficients, the fast path for
//! determinants once `α`, `λ`, `μ` are fixed rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{MultiPoly, Rational, Var};

/// `Σ coeffs[k] q^k`, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Integer form `(p, s)` of a polynomial in `q` alone, with `poly = p / s`.
    pub fn from_multipoly(p: &MultiPoly) -> Option<(IntPoly, BigInt)> {
        if !p.is_q_only() {
            return None;
        }
        let den = p.denominator_lcm();
        let deg = p.degree(Var::Q).unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); if p.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in p.terms() {
            coeffs[e[0] as usize] = c.numer() * (&den / c.denom());
        }
        Some((IntPoly::from_coeffs(coeffs), den))
    }

    /// `self / scale` as a polynomial over the rationals.
    pub fn to_multipoly(&self, scale: &BigInt) -> MultiPoly {
        MultiPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| ([k as u32, 0, 0, 0], Rational::new(c.clone(), scale.clone()))),
        )
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        IntPoly::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Exact quotient over the integers, `None` if `d` does not divide `self`
    /// in `ℤ[q]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (t, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &t * dc;
                }
            }
            quo[k] = t;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::from_coeffs(quo))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_scalar_exact(&self, s: &BigInt) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| c / s).collect() }
    }

    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }
}
