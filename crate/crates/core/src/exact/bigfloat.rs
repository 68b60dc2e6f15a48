//! Binary floating point with arbitrary-precision significand and a single
//! absolute error bound per value (midpoint–radius "ball" arithmetic).
//!
//! A [`BigFloat`] with midpoint `m · 2^e` and radius `r` stands for some real
//! number in `[m·2^e − r, m·2^e + r]`. Every operation returns a ball that is
//! guaranteed to contain the exact result of applying the operation to any
//! members of the input balls.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

const MAG_BITS: u64 = 62;

/// Non-negative dyadic `m · 2^e` with a 62-bit significand, used for error
/// radii. Constructors and operations say whether they round up or down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    m: u64,
    e: i64,
}

fn bits_u128(x: u128) -> u64 {
    128 - x.leading_zeros() as u64
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0, e: 0 };

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { m: 1, e }
    }

    fn from_u128_up(x: u128, e: i64) -> Mag {
        if x == 0 {
            return Mag::ZERO;
        }
        let b = bits_u128(x);
        if b <= MAG_BITS {
            return Mag { m: x as u64, e };
        }
        let s = b - MAG_BITS;
        let mut y = x >> s;
        if (y << s) != x {
            y += 1;
        }
        Mag { m: y as u64, e: e + s as i64 }
    }

    fn from_u128_down(x: u128, e: i64) -> Mag {
        if x == 0 {
            return Mag::ZERO;
        }
        let b = bits_u128(x);
        if b <= MAG_BITS {
            return Mag { m: x as u64, e };
        }
        let s = b - MAG_BITS;
        Mag { m: (x >> s) as u64, e: e + s as i64 }
    }

    /// Upper bound for `x · 2^e`.
    pub fn from_biguint_up(x: &BigUint, e: i64) -> Mag {
        let b = x.bits();
        if b <= MAG_BITS {
            return Mag { m: x.to_u64().unwrap_or(0), e };
        }
        let s = b - MAG_BITS;
        let mut y = (x >> s).to_u64().expect("fits");
        if x.trailing_zeros().unwrap_or(0) < s {
            y += 1;
        }
        Mag::from_u128_up(y as u128, e + s as i64)
    }

    /// Lower bound for `x · 2^e`.
    pub fn from_biguint_down(x: &BigUint, e: i64) -> Mag {
        let b = x.bits();
        if b <= MAG_BITS {
            return Mag { m: x.to_u64().unwrap_or(0), e };
        }
        let s = b - MAG_BITS;
        Mag { m: (x >> s).to_u64().expect("fits"), e: e + s as i64 }
    }

    /// Upper bound for a non-negative rational.
    pub fn from_rational_up(r: &Rational) -> Mag {
        assert!(!r.is_negative());
        if r.is_zero() {
            return Mag::ZERO;
        }
        let n = r.numer().magnitude();
        let d = r.denom().magnitude();
        let s = MAG_BITS as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (num, den) = if s >= 0 { (n << s as u64, d.clone()) } else { (n.clone(), d << (-s) as u64) };
        let (q, rem) = num.div_rem(&den);
        let q = if rem.is_zero() { q } else { q + 1u32 };
        Mag::from_biguint_up(&q, -s)
    }

    /// Sum, rounded up.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = (hi.e - lo.e) as u64;
        if d > 64 {
            // lo < 2^(lo.e + 62) <= 2^(hi.e - 2), absorbed by one unit of hi.
            return Mag::from_u128_up(hi.m as u128 + 1, hi.e);
        }
        Mag::from_u128_up(((hi.m as u128) << d) + lo.m as u128, lo.e)
    }

    /// Product, rounded up.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::from_u128_up(self.m as u128 * o.m as u128, self.e + o.e)
    }

    /// Quotient, rounded up.
    pub fn div_up(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.m as u128) << 64;
        let q = num.div_ceil(o.m as u128);
        Mag::from_u128_up(q, self.e - o.e - 64)
    }

    /// Lower bound for `self − o`, or `None` unless `self > o` is certain.
    pub fn sub_down(self, o: Mag) -> Option<Mag> {
        if self.is_zero() {
            return None;
        }
        if o.is_zero() {
            return Some(self);
        }
        if self.e >= o.e {
            let d = (self.e - o.e) as u64;
            if d > 64 {
                let a = (self.m as u128) << 64;
                let b = (o.m as u128).checked_shr((d - 64) as u32).unwrap_or(0) + 1;
                return Some(Mag::from_u128_down(a - b, self.e - 64));
            }
            let a = (self.m as u128) << d;
            let b = o.m as u128;
            (a > b).then(|| Mag::from_u128_down(a - b, o.e))
        } else {
            let d = (o.e - self.e) as u64;
            if d > 64 {
                return None;
            }
            let a = self.m as u128;
            let b = (o.m as u128) << d;
            (a > b).then(|| Mag::from_u128_down(a - b, self.e))
        }
    }

    pub fn mul_pow2(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { m: self.m, e: self.e + k }
        }
    }

    /// Exponent of the leading bit plus one (`None` for zero).
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.e + 64 - self.m.leading_zeros() as i64)
    }

    pub fn to_rational(&self) -> Rational {
        dyadic(&BigInt::from(self.m), self.e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.e.clamp(-2000, 2000) as i32;
        self.m as f64 * 2f64.powi(e)
    }

    /// `log2` of the value (`-inf` for zero).
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.m as f64).log2() + self.e as f64
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, o: &Mag) -> Option<Ordering> {
        Some(match (self.top(), o.top()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let e = self.e.min(o.e);
                let a = (self.m as u128) << (self.e - e) as u32;
                let b = (o.m as u128) << (o.e - e) as u32;
                a.cmp(&b)
            }
        })
    }
}

fn dyadic(m: &BigInt, e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(m << e as u64)
    } else {
        Rational::new(m.clone(), BigInt::one() << (-e) as u64)
    }
}

/// Ball `mid ± err` with `mid = mant · 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    err: Mag,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, err: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(BigInt::one(), prec)
    }

    pub fn from_int(n: BigInt, prec: u32) -> Self {
        BigFloat { mant: n, exp: 0, err: Mag::ZERO, prec }.rounded()
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(BigInt::from(n), prec)
    }

    /// Exact dyadic `mant · 2^exp` plus radius `err`, rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, err: Mag, prec: u32) -> Self {
        BigFloat { mant, exp, err, prec }.rounded()
    }

    /// Nearest representable ball around a rational; exact when the
    /// denominator is a power of two and the numerator fits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let n = r.numer();
        let d = r.denom();
        if n.is_zero() {
            return Self::zero(prec);
        }
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz).is_one() {
            return Self::from_parts(n.clone(), -(tz as i64), Mag::ZERO, prec);
        }
        let s = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (num, den) = if s >= 0 { (n << s as u64, d.clone()) } else { (n.clone(), d << (-s) as u64) };
        let q = num.div_floor(&den);
        Self::from_parts(q, -s, Mag::pow2(-s), prec)
    }

    pub fn with_err(mut self, extra: Mag) -> Self {
        self.err = self.err.add(extra);
        self
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn err(&self) -> Mag {
        self.err
    }

    pub fn mid_rational(&self) -> Rational {
        dyadic(&self.mant, self.exp)
    }

    /// Upper bound on `|mid|`.
    pub fn mid_abs_up(&self) -> Mag {
        Mag::from_biguint_up(self.mant.magnitude(), self.exp)
    }

    /// Lower bound on `|mid|`.
    pub fn mid_abs_down(&self) -> Mag {
        Mag::from_biguint_down(self.mant.magnitude(), self.exp)
    }

    /// Upper bound on `|x|` for every `x` in the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_up().add(self.err)
    }

    /// Lower bound on `|x|` over the ball, `None` if the ball may contain zero.
    pub fn abs_lower(&self) -> Option<Mag> {
        self.mid_abs_down().sub_down(self.err)
    }

    fn rounded(mut self) -> Self {
        let b = self.mant.bits();
        if b > self.prec as u64 {
            let s = b - self.prec as u64;
            self.mant >>= s;
            self.exp += s as i64;
            self.err = self.err.add(Mag::pow2(self.exp));
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    fn out_prec(&self, o: &BigFloat) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, ..self.clone() }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), ..self.clone() }
    }

    pub fn add(&self, o: &BigFloat) -> Self {
        let prec = self.out_prec(o);
        let err = self.err.add(o.err);
        if o.mant.is_zero() {
            return BigFloat { err, prec, ..self.clone() }.rounded();
        }
        if self.mant.is_zero() {
            return BigFloat { err, prec, ..o.clone() }.rounded();
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let shift = (hi.exp - lo.exp) as u64;
        let hi_top = hi.exp + hi.mant.bits() as i64;
        let lo_top = lo.exp + lo.mant.bits() as i64;
        if shift > 2 * prec as u64 + 64 && lo_top + (prec as i64) + 4 < hi_top {
            // The smaller operand lies far below the result's last bit.
            let absorbed = lo.mid_abs_up();
            return BigFloat { err: err.add(absorbed), prec, ..hi.clone() }.rounded();
        }
        let mant = (&hi.mant << shift) + &lo.mant;
        BigFloat { mant, exp: lo.exp, err, prec }.rounded()
    }

    pub fn sub(&self, o: &BigFloat) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BigFloat) -> Self {
        let prec = self.out_prec(o);
        let err = self
            .mid_abs_up()
            .mul(o.err)
            .add(o.mid_abs_up().mul(self.err))
            .add(self.err.mul(o.err));
        BigFloat { mant: &self.mant * &o.mant, exp: self.exp + o.exp, err, prec }.rounded()
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self.mul(&BigFloat::from_rational(r, self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { exp: self.exp + k, err: self.err.mul_pow2(k), ..self.clone() }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = BigFloat::one(self.prec);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Quotient; fails when the divisor ball contains zero.
    pub fn div(&self, o: &BigFloat) -> Result<Self> {
        let prec = self.out_prec(o);
        let denom_lo = o.abs_lower().ok_or_else(|| {
            Error::InsufficientPrecision("division by a ball that contains zero".into())
        })?;
        if self.mant.is_zero() && self.err.is_zero() {
            return Ok(BigFloat::zero(prec));
        }
        let s = prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64;
        let s = s.max(0);
        let q = (&self.mant << s as u64).div_floor(&o.mant);
        let exp = self.exp - o.exp - s;
        let ulp = Mag::pow2(exp);
        // |a/b − ã/b̃| <= (ε_a + |ã/b̃|·ε_b) / (|b̃| − ε_b)
        let q_abs = Mag::from_biguint_up(q.magnitude(), exp).add(ulp);
        let prop = self.err.add(q_abs.mul(o.err)).div_up(denom_lo);
        Ok(BigFloat { mant: q, exp, err: prop.add(ulp), prec }.rounded())
    }

    /// `√n` for a non-negative integer.
    pub fn sqrt_int(n: u64, prec: u32) -> Self {
        let k = prec as u64 + 4;
        let x = BigUint::from(n) << (2 * k);
        let r = x.sqrt();
        Self::from_parts(BigInt::from_biguint(Sign::Plus, r), -(k as i64), Mag::pow2(-(k as i64)), prec)
    }

    /// Re-rounds to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigFloat { prec, ..self.clone() }.rounded()
    }

    /// `Some(sign)` when the whole ball lies strictly on one side of zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        self.abs_lower().map(|_| if self.mant.is_negative() { Ordering::Less } else { Ordering::Greater })
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.certified_sign() == Some(Ordering::Greater)
    }

    pub fn is_certainly_nonzero(&self) -> bool {
        self.certified_sign().is_some()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_certainly_nonzero()
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        (self.mid_rational() - r).abs() <= self.err.to_rational()
    }

    /// True when the two balls intersect.
    pub fn overlaps(&self, o: &BigFloat) -> bool {
        (self.mid_rational() - o.mid_rational()).abs() <= self.err.add(o.err).to_rational()
    }

    /// True when `o`'s ball lies inside `self`'s ball.
    pub fn encloses(&self, o: &BigFloat) -> bool {
        (self.mid_rational() - o.mid_rational()).abs() + o.err.to_rational() <= self.err.to_rational()
    }

    /// True when every point of the ball is within `tol` of `target`.
    pub fn within(&self, target: &Rational, tol: &Rational) -> bool {
        (self.mid_rational() - target).abs() + self.err.to_rational() <= *tol
    }

    /// `(log2|x|, bound on its error)` for a ball excluding zero.
    pub fn log2_abs(&self) -> Option<(f64, f64)> {
        let lo = self.abs_lower()?;
        let b = self.mant.bits();
        let s = b.saturating_sub(60);
        let top = (self.mant.magnitude() >> s).to_f64().expect("60 bits");
        let value = top.log2() + (self.exp + s as i64) as f64;
        // |log2|x| − log2|mid|| <= log2(|mid| / (|mid| − err)).
        let mid = self.mid_abs_up();
        let spread = (mid.log2() - lo.log2()).max(0.0);
        Some((value, spread + 1e-9 * value.abs().max(1.0)))
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits();
        let s = b.saturating_sub(60);
        let top = (&self.mant >> s).to_f64().expect("60 bits");
        let e = (self.exp + s as i64).clamp(-4000, 4000) as i32;
        if e < -1000 {
            return top * 2f64.powi(e + 1000) * 2f64.powi(-1000);
        }
        top * 2f64.powi(e)
    }

    /// Decimal scientific notation with `digits` significant digits
    /// (midpoint only, rounded to nearest).
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let neg = self.mant.is_negative();
        let mid = self.mid_rational().abs();
        let approx_log10 = {
            let b = self.mant.bits() as f64 + self.exp as f64;
            (b - 1.0) * std::f64::consts::LOG10_2
        };
        let mut k = approx_log10.floor() as i64;
        let ten = BigInt::from(10);
        let scaled = |k: i64| -> BigInt {
            let t = digits as i64 - 1 - k;
            let v = if t >= 0 {
                &mid * Rational::from_integer(num_traits::pow(ten.clone(), t as usize))
            } else {
                &mid / Rational::from_integer(num_traits::pow(ten.clone(), (-t) as usize))
            };
            v.round().to_integer()
        };
        let lo = num_traits::pow(ten.clone(), digits - 1);
        let hi = num_traits::pow(ten.clone(), digits);
        let mut n = scaled(k);
        while n >= hi {
            k += 1;
            n = scaled(k);
        }
        while n < lo {
            k -= 1;
            n = scaled(k);
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if k != 0 {
            out.push_str(&format!("e{k}"));
        }
        out
    }
}

/// Midpoint and radius as decimal strings, for reports.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BallRecord {
    pub value: String,
    pub radius: String,
}

impl BigFloat {
    /// Midpoint to `digits` significant digits and radius to four.
    pub fn record(&self, digits: usize) -> BallRecord {
        BallRecord { value: self.to_sci_string(digits), radius: format!("{:.3e}", self.err.to_f64()) }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_sci_string(20), self.err.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{MultiPoly, Var};
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn rational_conversion_encloses() {
        for (n, d) in [(1, 3), (-22, 7), (5, 8), (123456789, 1000)] {
            let r = rat(n, d);
            let b = BigFloat::from_rational(&r, 64);
            assert!(b.contains_rational(&r));
            assert!(b.err().to_f64() <= 2f64.powi(-60) * (n as f64 / d as f64).abs().max(1.0));
        }
        let exact = BigFloat::from_rational(&rat(3, 8), 64);
        assert!(exact.err().is_zero());
    }

    #[test]
    fn mag_rounding_directions() {
        let a = Mag::from_rational_up(&rat(1, 3));
        assert!(a.to_rational() >= rat(1, 3));
        let b = Mag::pow2(0).add(Mag::pow2(-200));
        assert!(b.to_rational() > rat(1, 1));
        assert_eq!(Mag::pow2(0).sub_down(Mag::pow2(0)), None);
        let c = Mag::pow2(0).sub_down(Mag::pow2(-1)).unwrap();
        assert!(c.to_rational() <= rat(1, 2));
        assert!(Mag::pow2(3) > Mag::pow2(2));
        assert!(Mag::pow2(1).div_up(Mag::pow2(0).add(Mag::pow2(0)).add(Mag::pow2(0))).to_rational() >= rat(2, 3));
    }

    #[test]
    fn division_and_sqrt() {
        let a = BigFloat::from_i64(1, 128);
        let b = BigFloat::from_i64(3, 128);
        let q = a.div(&b).unwrap();
        assert!(q.contains_rational(&rat(1, 3)));
        let z = BigFloat::zero(64).with_err(Mag::pow2(-3));
        assert!(a.div(&z).is_err());
        let s = BigFloat::sqrt_int(3, 128);
        let sq = s.square();
        assert!(sq.contains_rational(&rat(3, 1)));
        assert!(sq.err().to_f64() < 1e-35);
    }

    #[test]
    fn far_apart_addition_is_sound() {
        let big = BigFloat::from_i64(1, 64);
        let tiny = BigFloat::from_rational(&rat(1, 1), 64).mul_pow2(-5000);
        let s = big.add(&tiny);
        let exact = rat(1, 1) + tiny.mid_rational();
        assert!(s.contains_rational(&exact));
    }

    #[test]
    fn sci_string() {
        let x = BigFloat::from_rational(&rat(-22, 7), 128);
        assert_eq!(x.to_sci_string(8), "-3.1428571");
        let y = BigFloat::from_rational(&rat(1, 1000), 128);
        assert_eq!(y.to_sci_string(3), "1.00e-3");
        assert_eq!(BigFloat::from_i64(12345, 64).to_sci_string(2), "1.2e4");
    }

    #[test]
    fn log2_of_tiny_values() {
        let x = BigFloat::one(200).mul_pow2(-7000);
        let (l, e) = x.log2_abs().unwrap();
        assert!((l + 7000.0).abs() <= e + 1e-9);
        assert!(BigFloat::zero(64).log2_abs().is_none());
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_ops_enclose_exact(a in arb_rat(), b in arb_rat(), prec in 8u32..80) {
            let x = BigFloat::from_rational(&a, prec);
            let y = BigFloat::from_rational(&b, prec);
            prop_assert!(x.add(&y).contains_rational(&(&a + &b)));
            prop_assert!(x.sub(&y).contains_rational(&(&a - &b)));
            prop_assert!(x.mul(&y).contains_rational(&(&a * &b)));
            if let Ok(q) = x.div(&y) {
                prop_assert!(q.contains_rational(&(&a / &b)));
            }
        }

        #[test]
        fn polynomial_evaluation_encloses_exact(
            terms in prop::collection::vec((prop::array::uniform4(0u32..4), -9i64..9, 1i64..5), 1..8),
            pt in prop::array::uniform4((-20i64..20, 1i64..9)),
            prec in 16u32..96,
        ) {
            let p = MultiPoly::from_terms(terms.into_iter().map(|(e, n, d)| (e, rat(n, d))));
            let exact_pt = pt.map(|(n, d)| rat(n, d));
            let exact = p.eval(&exact_pt);
            let balls = exact_pt.clone().map(|r| BigFloat::from_rational(&r, prec));
            let v = p.eval_ball(&balls, prec).unwrap();
            prop_assert!(v.contains_rational(&exact), "{} vs {}", v, exact);
            let _ = Var::ALL;
        }
    }
}
