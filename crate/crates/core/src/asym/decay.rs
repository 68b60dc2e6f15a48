//! Growth of `−log_{|q|} |V_n| / n³` from high-precision tails.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::constants::constants_abc;
use crate::error::{Error, Result};
use crate::exact::rational::format_rational;
use crate::exact::Rational;
use crate::exec::Exec;
use crate::hankel::hankel_det_ball;
use crate::qseq::NumericSeq;

pub const DEFAULT_DECAY_CAP: usize = 24;

/// `⌈0.6 · n_max³ · log₂|q|⌉ + 256` bits.
pub fn default_decay_precision(q: &Rational, n_max: usize) -> u32 {
    (0.6 * (n_max as f64).powi(3) * log2_abs(q)).ceil() as u32 + 256
}

fn log2_abs(q: &Rational) -> f64 {
    let n = q.numer().abs().to_f64().unwrap_or(f64::MAX);
    let d = q.denom().to_f64().unwrap_or(f64::MAX);
    n.log2() - d.log2()
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayRow {
    pub n: usize,
    /// `log_{|q|} |V_n|`.
    pub log_abs: f64,
    pub log_err: f64,
    /// `−log_{|q|}|V_n| / n³`.
    pub ratio: f64,
    pub ratio_err: f64,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub q: String,
    pub alpha: String,
    pub lambda: String,
    pub precision: u32,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "A_plus_B")]
    pub a_plus_b: f64,
    /// `λ = 0, q > 1, α > 0`, where every `V_n` is positive.
    pub positivity_expected: bool,
    pub rows: Vec<DecayRow>,
}

impl DecayReport {
    pub fn row(&self, n: usize) -> Option<&DecayRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// First row that breaks the expected positivity.
    pub fn first_sign_failure(&self) -> Option<usize> {
        if !self.positivity_expected {
            return None;
        }
        self.rows.iter().find(|r| !r.positive).map(|r| r.n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,log_ratio,err_bound\n");
        for r in &self.rows {
            out.push_str(&format!("{},{:.12},{:.3e}\n", r.n, r.ratio, r.ratio_err));
        }
        out
    }
}

/// `V_1 … V_{n_max}` as balls at `precision` bits (default policy above).
///
/// Every determinant must be certified nonzero with a log error below `1/2`;
/// otherwise the run stops and asks for more precision.
pub fn decay_experiment(
    q: &Rational,
    alpha: &Rational,
    lambda: &Rational,
    n_max: usize,
    precision: Option<u32>,
    exec: Exec,
) -> Result<DecayReport> {
    if n_max == 0 || n_max > DEFAULT_DECAY_CAP {
        return Err(Error::Precondition(format!("n_max must lie in 1..={DEFAULT_DECAY_CAP}")));
    }
    if alpha.is_zero() {
        return Err(Error::Precondition("α must be nonzero".into()));
    }
    let prec = precision.unwrap_or_else(|| default_decay_precision(q, n_max));
    let mut seq = NumericSeq::new(q.clone(), alpha.clone(), lambda.clone(), prec)?;
    let vals = seq.tails(2 * n_max as u32 - 1, exec);
    let lq = log2_abs(q);
    let dets = exec.map_range(1..n_max + 1, |n| hankel_det_ball(&vals, n));
    let mut rows = Vec::with_capacity(n_max);
    for (i, d) in dets.into_iter().enumerate() {
        let n = i + 1;
        let d = d.map_err(|e| Error::InsufficientPrecision(format!("V_{n} at {prec} bits: {e}")))?;
        let (l2, e2) = d
            .log2_abs()
            .ok_or_else(|| Error::InsufficientPrecision(format!("sign of V_{n} at {prec} bits")))?;
        let (log_abs, log_err) = (l2 / lq, e2 / lq);
        if log_err >= 0.5 {
            return Err(Error::InsufficientPrecision(format!("log error {log_err:.3} for V_{n} at {prec} bits")));
        }
        let n3 = (n as f64).powi(3);
        rows.push(DecayRow {
            n,
            log_abs,
            log_err,
            ratio: -log_abs / n3,
            ratio_err: log_err / n3,
            positive: d.is_certainly_positive(),
        });
    }
    let lz = lambda.is_zero();
    let k = constants_abc(lz, 64)?;
    Ok(DecayReport {
        q: format_rational(q),
        alpha: format_rational(alpha),
        lambda: format_rational(lambda),
        precision: prec,
        a: k.a.to_f64(),
        a_plus_b: k.a.add(&k.b).to_f64(),
        positivity_expected: lz && q.is_positive() && alpha.is_positive(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn precision_policy() {
        assert_eq!(default_decay_precision(&rat(2, 1), 24), 8551);
        assert_eq!(default_decay_precision(&rat(2, 1), 10), 856);
    }

    #[test]
    fn small_run_is_certified() {
        let r = decay_experiment(&rat(2, 1), &rat(1, 1), &rat(0, 1), 8, None, Exec::Parallel).unwrap();
        assert_eq!(r.rows.len(), 8);
        assert!(r.positivity_expected);
        assert_eq!(r.first_sign_failure(), None);
        // V_1 = μ − 1 ≈ 0.64
        assert!((r.rows[0].log_abs - 0.6416_f64.log2()).abs() < 0.01);
        let csv = r.to_csv();
        assert!(csv.starts_with("n,log_ratio,err_bound\n1,"));
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn low_precision_is_reported() {
        let e = decay_experiment(&rat(2, 1), &rat(1, 1), &rat(0, 1), 12, Some(64), Exec::Sequential).unwrap_err();
        assert!(matches!(e, Error::InsufficientPrecision(_)), "{e:?}");
    }

    #[test]
    fn preconditions() {
        assert!(decay_experiment(&rat(2, 1), &rat(0, 1), &rat(0, 1), 4, None, Exec::Sequential).is_err());
        assert!(decay_experiment(&rat(1, 2), &rat(1, 1), &rat(0, 1), 4, None, Exec::Sequential).is_err());
        assert!(decay_experiment(&rat(2, 1), &rat(1, 1), &rat(0, 1), 25, None, Exec::Sequential).is_err());
    }
}
