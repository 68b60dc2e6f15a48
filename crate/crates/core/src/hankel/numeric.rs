//! Hankel determinants of ball-valued sequences.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::BigFloat;

/// Determinant by Gaussian elimination with partial pivoting on midpoints.
///
/// Fails when a pivot ball contains zero, which means the working precision
/// is too low to certify the elimination.
pub fn ball_det(matrix: Vec<Vec<BigFloat>>) -> Result<BigFloat> {
    let n = matrix.len();
    let prec = matrix.first().and_then(|r| r.first()).map_or(64, |x| x.prec());
    let mut a = matrix;
    let mut det = BigFloat::one(prec);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| {
                let (x, y) = (a[i][k].mid_abs_up(), a[j][k].mid_abs_up());
                x.partial_cmp(&y).unwrap_or(Ordering::Equal)
            })
            .expect("non-empty");
        if p != k {
            a.swap(p, k);
            det = det.neg();
        }
        let pivot = a[k][k].clone();
        if pivot.contains_zero() {
            return Err(Error::InsufficientPrecision(format!("pivot {k} of {n} not certified nonzero")));
        }
        det = det.mul(&pivot);
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            let f = row[k].div(&pivot)?;
            for j in k + 1..n {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
        }
    }
    Ok(det)
}

/// `det(values[i+j])_{0≤i,j<n}`.
pub fn hankel_det_ball(values: &[BigFloat], n: usize) -> Result<BigFloat> {
    assert!(values.len() + 1 >= 2 * n);
    ball_det((0..n).map(|i| values[i..i + n].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};
    use crate::hankel::vn::hankel_det_rational;
    use crate::exec::Exec;

    #[test]
    fn encloses_exact_rational_determinants() {
        let vals: Vec<Rational> = (0..9).map(|k| rat(1, k + 2) + rat(k * k, 7)).collect();
        let balls: Vec<BigFloat> = vals.iter().map(|r| BigFloat::from_rational(r, 200)).collect();
        for n in 1..=5 {
            let exact = hankel_det_rational(&vals, n, Exec::Sequential).unwrap();
            let ball = hankel_det_ball(&balls, n).unwrap();
            assert!(ball.contains_rational(&exact), "n = {n}");
        }
    }

    #[test]
    fn singular_matrix_is_not_certified() {
        let one = BigFloat::one(64);
        assert!(hankel_det_ball(&[one.clone(), one.clone(), one], 2).is_err());
    }
}
