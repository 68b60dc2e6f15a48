//! The Hankel determinants `V_n = det(v_{i+j})_{0≤i,j<n}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::det::{bareiss, cofactor};
use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational};
use crate::exec::Exec;
use crate::qseq::SeqContext;

pub fn hankel_matrix(ctx: &SeqContext, n: usize) -> Result<Vec<Vec<MultiPoly>>> {
    let vals: Vec<MultiPoly> = (0..(2 * n).saturating_sub(1))
        .map(|k| ctx.v(k as i64).map(|p| (*p).clone()))
        .collect::<Result<_>>()?;
    Ok((0..n).map(|i| vals[i..i + n].to_vec()).collect())
}

/// `V_n` by fraction-free elimination. When every entry is a polynomial in
/// `q` alone the rows are scaled to integer polynomials first.
pub fn hankel_det(ctx: &SeqContext, n: usize, exec: Exec) -> Result<MultiPoly> {
    let m = hankel_matrix(ctx, n)?;
    if let Some((d, s)) = int_det(&m, exec)? {
        return Ok(d.to_multipoly(&s));
    }
    bareiss(m, exec)
}

/// `V_n` as `(P, s)` with `V_n = P / s`, `P ∈ ℤ[q]`, when the entries
/// involve only `q`.
pub fn hankel_det_int(ctx: &SeqContext, n: usize, exec: Exec) -> Result<Option<(IntPoly, BigInt)>> {
    int_det(&hankel_matrix(ctx, n)?, exec)
}

fn int_det(m: &[Vec<MultiPoly>], exec: Exec) -> Result<Option<(IntPoly, BigInt)>> {
    if !m.iter().flatten().all(|p| p.is_q_only()) {
        return Ok(None);
    }
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.len());
    for row in m {
        let r = row.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let ints = row
            .iter()
            .map(|p| {
                let (ip, s) = IntPoly::from_multipoly(p).expect("q-only");
                ip.mul(&IntPoly::from_coeffs(vec![&r / s]))
            })
            .collect::<Vec<_>>();
        scale *= &r;
        rows.push(ints);
    }
    Ok(Some((bareiss(rows, exec)?, scale)))
}

/// `V_n` with the fraction-free result checked against cofactor expansion.
pub fn hankel_det_checked(ctx: &SeqContext, n: usize, exec: Exec) -> Result<MultiPoly> {
    let m = hankel_matrix(ctx, n)?;
    let b = bareiss(m.clone(), exec)?;
    let c = cofactor(&m);
    if b != c {
        return Err(Error::Internal(format!("V_{n}: elimination and cofactor expansion disagree")));
    }
    Ok(b)
}

/// Determinant of the Hankel matrix of given rational values.
pub fn hankel_det_rational(values: &[Rational], n: usize, exec: Exec) -> Result<Rational> {
    assert!(values.len() + 1 >= 2 * n);
    let m: Vec<Vec<Rational>> = (0..n).map(|i| values[i..i + n].to_vec()).collect();
    bareiss(m, exec)
}
