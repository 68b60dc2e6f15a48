use crate::error::{Error, Result};
use crate::exact::MultiPoly;

fn one_minus_q_pow(k: u32) -> MultiPoly {
    &MultiPoly::one() - &MultiPoly::q_pow(k)
}

/// Gaussian binomial `[m k]_q` as a polynomial in `q`; zero for `k < 0`.
///
/// Built as `Π_{i<k}(1 − q^{m−i}) / Π_{i≤k}(1 − q^i)` with the division
/// checked to be exact.
pub fn gauss_binomial(m: i64, k: i64) -> Result<MultiPoly> {
    if k < 0 {
        return Ok(MultiPoly::zero());
    }
    if k == 0 {
        return Ok(MultiPoly::one());
    }
    if m < 0 {
        return Err(Error::Precondition(format!("[{m} {k}]_q is not a polynomial for m < 0")));
    }
    if k > m {
        return Ok(MultiPoly::zero());
    }
    let mut num = MultiPoly::one();
    let mut den = MultiPoly::one();
    for i in 0..k {
        num = &num * &one_minus_q_pow((m - i) as u32);
        den = &den * &one_minus_q_pow((i + 1) as u32);
    }
    num.div_exact(&den)?
        .ok_or_else(|| Error::InexactDivision(format!("q-binomial [{m} {k}]")))
}
