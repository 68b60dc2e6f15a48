use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for a small rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"n"`, `"n/d"`, with an optional leading `+` or `-`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let digits = |x: &str| {
        let body = x.strip_prefix('-').unwrap_or(x);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Serde adapter writing a rational in its canonical text form.
pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest power-of-`base` exponent `j >= 1` with `base^j == x`, if any.
pub(crate) fn positive_power_index(base: &Rational, x: &Rational) -> Option<u32> {
    if base.abs() <= Rational::one() || x.is_zero() {
        return None;
    }
    let mut p = base.clone();
    let mut j = 1u32;
    while p.abs() <= x.abs() {
        if &p == x {
            return Some(j);
        }
        p *= base;
        j += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("+5").unwrap(), rat(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("sym").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(-10, 4)), "-5/2");
        assert_eq!(format_rational(&rat(7, 1)), "7");
    }

    #[test]
    fn power_index() {
        assert_eq!(positive_power_index(&rat(2, 1), &rat(8, 1)), Some(3));
        assert_eq!(positive_power_index(&rat(-2, 1), &rat(-8, 1)), Some(3));
        assert_eq!(positive_power_index(&rat(2, 1), &rat(6, 1)), None);
        assert_eq!(positive_power_index(&rat(3, 2), &rat(9, 4)), Some(2));
        assert_eq!(positive_power_index(&rat(2, 1), &rat(1, 1)), None);
    }
}
