//! `π`, the Clausen value `Im Li₂(e^{2πi/3})`, the constants `A, B, C` and
//! the `γ`-thresholds for non-quadraticity (`d = 2`) and irrationality
//! (`d = 1`).

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{BallRecord, BigFloat, Mag, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `2^bits · atan(1/x)` truncated term by term, with the number of
/// truncations performed.
fn atan_inv_scaled(x: u64, bits: u64) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    let mut ops = 1;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &x2;
        k += 1;
        ops += 2;
    }
    (sum, ops)
}

/// `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(prec: u32) -> BigFloat {
    let bits = prec as u64 + 32;
    let (a, na) = atan_inv_scaled(5, bits);
    let (b, nb) = atan_inv_scaled(239, bits);
    let mant = a * 16 - b * 4;
    let err = Mag::from_biguint_up(&BigUint::from(16 * na + 4 * nb), -(bits as i64));
    BigFloat::from_parts(mant, -(bits as i64), err, prec)
}

/// `B_0, B_1, …, B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
    let mut b = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    for m in b.len()..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b[..=n].to_vec()
}

/// `Σ_{m≥1} (am − c)^{−2}` for `0 ≤ c < a`.
///
/// The first `M − 1` terms are summed exactly and the rest by Euler–Maclaurin
/// at `M`. All even derivatives of `(ax − c)^{−2}` are positive, so the
/// remainder is bounded by the first omitted correction term.
pub fn inverse_square_sum(a: &Rational, c: &Rational, prec: u32) -> Result<BigFloat> {
    if *a <= Rational::zero() || *c < Rational::zero() || c >= a {
        return Err(Error::Precondition("need 0 ≤ c < a".into()));
    }
    let m0 = prec as i64 / 8 + 8;
    let mut direct = Rational::zero();
    for m in 1..m0 {
        let d = a * Rational::from_integer(m.into()) - c;
        direct += (&d * &d).recip();
    }
    let d = a * Rational::from_integer(m0.into()) - c;
    let mut tail = (a * &d).recip() + (r(2, 1) * &d * &d).recip();
    let target = Rational::new(BigInt::one(), BigInt::one() << (prec as u64 + 8));
    let kmax = 2 * m0 as usize;
    let b = bernoulli_numbers(2 * kmax + 2);
    // B_{2k} a^{2k−1} / d^{2k+1}
    let mut a_pow = a.clone();
    let mut d_pow = &d * &d * &d;
    let a2 = a * a;
    let d2 = &d * &d;
    for k in 1..=kmax {
        let term = &b[2 * k] * &a_pow / &d_pow;
        a_pow *= &a2;
        d_pow *= &d2;
        let next = &b[2 * k + 2] * &a_pow / &d_pow;
        tail += term;
        let bound = num_traits::abs(next);
        if bound <= target {
            let value = direct + tail;
            return Ok(BigFloat::from_rational(&value, prec).with_err(Mag::from_rational_up(&bound)));
        }
    }
    Err(Error::Internal("Euler–Maclaurin correction did not converge".into()))
}

/// `Im Li₂(e^{2πi/3}) = (√3/2)(Σ_{m≥1}(3m−2)^{−2} − Σ_{m≥1}(3m−1)^{−2})`.
pub fn clausen_constant(prec: u32) -> Result<BigFloat> {
    if prec < 32 {
        return Err(Error::Precondition("precision must be at least 32 bits".into()));
    }
    let w = prec + 16;
    let s2 = inverse_square_sum(&r(3, 1), &r(2, 1), w)?;
    let s1 = inverse_square_sum(&r(3, 1), &r(1, 1), w)?;
    Ok(BigFloat::sqrt_int(3, w).mul(&s2.sub(&s1)).mul_pow2(-1).with_prec(prec))
}

/// `Im Li₂(e^{2πi/3}) / (π²√3)`.
fn clausen_ratio(prec: u32) -> Result<BigFloat> {
    let w = prec + 16;
    let pi = pi(w);
    clausen_constant(w)?.div(&pi.square().mul(&BigFloat::sqrt_int(3, w)))
}

/// `1/54 + π^{−2} Σ_{m≥1}(3m−1)^{−2}`, the limit of `n^{−3} Σ_l e_l(n) φ(l)`.
pub fn exponent_sum_constant(prec: u32) -> Result<BigFloat> {
    let w = prec + 16;
    let s1 = inverse_square_sum(&r(3, 1), &r(1, 1), w)?;
    let v = BigFloat::from_rational(&r(1, 54), w).add(&s1.div(&pi(w).square())?);
    Ok(v.with_prec(prec))
}

/// `5/54 − Im Li₂(e^{2πi/3})/(π²√3)`, the closed form of the same limit.
pub fn exponent_sum_constant_closed(prec: u32) -> Result<BigFloat> {
    let w = prec + 16;
    Ok(BigFloat::from_rational(&r(5, 54), w).sub(&clausen_ratio(w)?).with_prec(prec))
}

#[derive(Clone, Debug)]
pub struct Abc {
    pub a: BigFloat,
    pub b: BigFloat,
    pub c: BigFloat,
}

/// `A = 1/2, B = 65/216 − κ` for `λ = 0` and `A = 1/3, B = 7/27 − κ`
/// otherwise, with `κ = Im Li₂(e^{2πi/3})/(π²√3)` and `C = 2/3`.
pub fn constants_abc(lambda_is_zero: bool, prec: u32) -> Result<Abc> {
    let kappa = clausen_ratio(prec)?;
    let (a, b0) = if lambda_is_zero { (r(1, 2), r(65, 216)) } else { (r(1, 3), r(7, 27)) };
    Ok(Abc {
        a: BigFloat::from_rational(&a, prec),
        b: BigFloat::from_rational(&b0, prec).sub(&kappa),
        c: BigFloat::from_rational(&r(2, 3), prec),
    })
}

/// `B` rebuilt as `5/54 − κ + 5/24` (`λ = 0`) or `5/54 − κ + 1/6`.
pub fn b_from_degree_asymptotics(lambda_is_zero: bool, prec: u32) -> Result<BigFloat> {
    let extra = if lambda_is_zero { r(5, 24) } else { r(1, 6) };
    Ok(exponent_sum_constant_closed(prec)?.add(&BigFloat::from_rational(&extra, prec)))
}

/// `(A + C) / (A + C − d(C − B))`.
pub fn threshold(d: u32, lambda_is_zero: bool, prec: u32) -> Result<BigFloat> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let k = constants_abc(lambda_is_zero, prec + 16)?;
    let num = k.a.add(&k.c);
    let den = num.sub(&k.c.sub(&k.b).mul(&BigFloat::from_i64(d as i64, prec + 16)));
    match den.certified_sign() {
        Some(std::cmp::Ordering::Greater) => Ok(num.div(&den)?.with_prec(prec)),
        Some(_) => Err(Error::DegreeExcluded(d)),
        None => Err(Error::InsufficientPrecision(format!("sign of the denominator for d = {d}"))),
    }
}

/// The same thresholds as explicit expressions in `π²` and `√3·Im Li₂`:
/// `126π²/(47π² − 72√3 L)`, `27π²/(5π² − 18√3 L)` for `d = 2` and
/// `252π²/(173π² − 72√3 L)`, `27π²/(16π² − 9√3 L)` for `d = 1`.
pub fn threshold_closed_form(d: u32, lambda_is_zero: bool, prec: u32) -> Result<BigFloat> {
    let (num, p, s) = match (d, lambda_is_zero) {
        (2, true) => (126, 47, 72),
        (2, false) => (27, 5, 18),
        (1, true) => (252, 173, 72),
        (1, false) => (27, 16, 9),
        _ => return Err(Error::DegreeExcluded(d)),
    };
    let w = prec + 16;
    let pi2 = pi(w).square();
    let l = BigFloat::sqrt_int(3, w).mul(&clausen_constant(w)?);
    let top = pi2.mul(&BigFloat::from_i64(num, w));
    let bottom = pi2.mul(&BigFloat::from_i64(p, w)).sub(&l.mul(&BigFloat::from_i64(s, w)));
    Ok(top.div(&bottom)?.with_prec(prec))
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseConstants {
    pub lambda_is_zero: bool,
    #[serde(rename = "A")]
    pub a: BallRecord,
    #[serde(rename = "B")]
    pub b: BallRecord,
    /// `B` from the degree asymptotics of the guaranteed factor.
    #[serde(rename = "B_alt")]
    pub b_alt: BallRecord,
    #[serde(rename = "C")]
    pub c: BallRecord,
    pub b_forms_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub d: u32,
    pub lambda_is_zero: bool,
    pub via_abc: BallRecord,
    pub closed_form: BallRecord,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedRow {
    pub d: u32,
    pub lambda_is_zero: bool,
    pub excluded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub lhs: BallRecord,
    pub rhs: BallRecord,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub precision: u32,
    #[serde(rename = "imLi2")]
    pub im_li2: BallRecord,
    pub pi: BallRecord,
    pub c034: BallRecord,
    pub c034_identity: IdentityCheck,
    pub cases: Vec<CaseConstants>,
    pub thresholds: Vec<ThresholdRow>,
    pub excluded: Vec<ExcludedRow>,
}

impl ConstantsReport {
    pub fn passed(&self) -> bool {
        self.c034_identity.agree
            && self.cases.iter().all(|c| c.b_forms_agree)
            && self.thresholds.iter().all(|t| t.agree)
            && self.excluded.iter().all(|e| e.excluded)
    }

    pub fn threshold(&self, d: u32, lambda_is_zero: bool) -> Option<&ThresholdRow> {
        self.thresholds.iter().find(|t| t.d == d && t.lambda_is_zero == lambda_is_zero)
    }
}

/// Everything above at `prec` bits, with `digits` significant digits shown.
pub fn constants_report(prec: u32) -> Result<ConstantsReport> {
    let digits = ((prec as f64 * std::f64::consts::LOG10_2) as usize).clamp(8, 60);
    let lhs = exponent_sum_constant(prec)?;
    let rhs = exponent_sum_constant_closed(prec)?;
    let mut cases = Vec::new();
    let mut thresholds = Vec::new();
    let mut excluded = Vec::new();
    for lz in [true, false] {
        let k = constants_abc(lz, prec)?;
        let alt = b_from_degree_asymptotics(lz, prec)?;
        cases.push(CaseConstants {
            lambda_is_zero: lz,
            a: k.a.record(digits),
            b: k.b.record(digits),
            b_alt: alt.record(digits),
            c: k.c.record(digits),
            b_forms_agree: k.b.overlaps(&alt),
        });
        for d in [2, 1] {
            let g = threshold(d, lz, prec)?;
            let h = threshold_closed_form(d, lz, prec)?;
            thresholds.push(ThresholdRow {
                d,
                lambda_is_zero: lz,
                via_abc: g.record(digits),
                closed_form: h.record(digits),
                agree: g.overlaps(&h),
            });
        }
        excluded.push(ExcludedRow { d: 3, lambda_is_zero: lz, excluded: threshold(3, lz, prec) == Err(Error::DegreeExcluded(3)) });
    }
    Ok(ConstantsReport {
        precision: prec,
        im_li2: clausen_constant(prec)?.record(digits),
        pi: pi(prec).record(digits),
        c034: lhs.record(digits),
        c034_identity: IdentityCheck { agree: lhs.overlaps(&rhs), lhs: lhs.record(digits), rhs: rhs.record(digits) },
        cases,
        thresholds,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn close(x: &BigFloat, decimal: &str, tol: &str) -> bool {
        x.within(&parse_decimal(decimal), &parse_rational(tol).unwrap())
    }

    fn parse_decimal(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap_or((s, ""));
        let den = num_traits::pow(BigInt::from(10), f.len());
        Rational::new(format!("{i}{f}").parse::<BigInt>().unwrap(), den)
    }

    #[test]
    fn pi_digits() {
        assert!(close(&pi(256), "3.14159265358979323846264338327950288419716939937510", "1/1000000000000000000000000000000000000000"));
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[8], r(-1, 30));
        assert_eq!(b[7], r(0, 1));
    }

    #[test]
    fn basel() {
        let z = inverse_square_sum(&r(1, 1), &r(0, 1), 200).unwrap();
        let p = pi(220);
        assert!(z.overlaps(&p.square().mul_rational(&r(1, 6))));
        assert!(inverse_square_sum(&r(3, 1), &r(3, 1), 64).is_err());
    }

    #[test]
    fn clausen_value() {
        let c = clausen_constant(160).unwrap();
        assert!(c.is_certainly_positive());
        assert!(close(&c, "0.6766277376064357500141350361830135239611", "1/10000000000000000000000000000000000"));
        assert!(clausen_constant(16).is_err());
    }

    #[test]
    fn nested_enclosures() {
        let lo = clausen_constant(64).unwrap();
        let hi = clausen_constant(256).unwrap();
        assert!(lo.encloses(&hi));
    }

    #[test]
    fn thresholds_both_ways() {
        let want = [
            (2, true, "3.276944607472890570525911354351691980764"),
            (2, false, "9.431942411201143136374915403049933834708"),
            (1, true, "1.532376454793101500901491458375892367751"),
            (1, false, "1.808281150224475000770404496841628422933"),
        ];
        for (d, lz, v) in want {
            let g = threshold(d, lz, 128).unwrap();
            let h = threshold_closed_form(d, lz, 128).unwrap();
            assert!(close(&g, v, "1/1000000000000000000000000"), "d = {d}, λ=0: {lz}");
            assert!(g.overlaps(&h));
        }
        assert_eq!(threshold(3, true, 128).unwrap_err(), Error::DegreeExcluded(3));
        assert_eq!(threshold(3, false, 128).unwrap_err(), Error::DegreeExcluded(3));
    }

    #[test]
    fn exponent_constant_identity() {
        let a = exponent_sum_constant(128).unwrap();
        let b = exponent_sum_constant_closed(128).unwrap();
        assert!(a.overlaps(&b));
        assert!(close(&a, "0.05301134996394934315982890181513606169", "1/100000000000000000000000000000"));
    }

    #[test]
    fn report_passes() {
        let rep = constants_report(128).unwrap();
        assert!(rep.passed());
        assert!(rep.threshold(2, false).unwrap().via_abc.value.starts_with("9.4319424112"));
        let j = serde_json::to_value(&rep).unwrap();
        assert_eq!(j["cases"][0]["A"]["value"], "5.0000000000000000000000000000000000000e-1");
    }
}
