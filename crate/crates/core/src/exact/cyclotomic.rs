//! Cyclotomic polynomials `Φ_l(q)` by iterated exact division of `q^l − 1`.

use super::poly::MultiPoly;
use crate::error::{Error, Result};

fn proper_divisors(l: u32) -> impl Iterator<Item = u32> {
    (1..l).filter(move |d| l.is_multiple_of(*d))
}

/// The `l`-th cyclotomic polynomial in `q`, with integer coefficients and
/// degree `φ(l)`.
pub fn cyclotomic(l: u32) -> Result<MultiPoly> {
    if l == 0 {
        return Err(Error::CyclotomicIndex);
    }
    let mut p = &MultiPoly::q_pow(l) - &MultiPoly::one();
    for d in proper_divisors(l) {
        let phi = cyclotomic(d)?;
        p = p
            .divide_exact_q(&phi)?
            .expect("Φ_d divides q^l − 1 for d | l");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::arith::totient;
    use crate::exact::rational::rat;

    fn from_coeffs(cs: &[i64]) -> MultiPoly {
        MultiPoly::from_terms(
            cs.iter()
                .enumerate()
                .map(|(k, &c)| ([k as u32, 0, 0, 0], rat(c, 1))),
        )
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1).unwrap(), from_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), from_coeffs(&[1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), from_coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), from_coeffs(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(0), Err(Error::CyclotomicIndex));
    }

    #[test]
    fn product_over_divisors_is_q_pow_minus_one() {
        for l in 1..=30u32 {
            let mut prod = MultiPoly::one();
            for d in (1..=l).filter(|d| l % d == 0) {
                prod = &prod * &cyclotomic(d).unwrap();
            }
            assert_eq!(prod, &MultiPoly::q_pow(l) - &MultiPoly::one(), "l = {l}");
            assert_eq!(cyclotomic(l).unwrap().q_degree().unwrap() as u64, totient(l as u64));
        }
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic(105).unwrap();
        assert!(p.terms().any(|(_, c)| *c == rat(-2, 1)));
    }
}
