//! Non-vanishing of `V_n(x)` for rational data, and the positive-sum
//! representation of `V_n` for `λ = 0`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::vn::hankel_det_rational;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, positive_power_index};
use crate::exact::{BigFloat, Mag, Rational};
use crate::exec::Exec;

/// `v_0(x) = x − 1`, `v_k(x) = (q^k − λ) v_{k−1}(x) − α^k` as exact rationals.
pub fn v_values(q: &Rational, alpha: &Rational, lambda: &Rational, x: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut v = x - Rational::one();
    let (mut qk, mut ak) = (Rational::one(), Rational::one());
    for k in 0..count {
        if k > 0 {
            qk *= q;
            ak *= alpha;
            v = &v * (&qk - lambda) - &ak;
        }
        out.push(v.clone());
    }
    out
}

/// Checks `α ≠ 0`, `λ ∉ q^{ℤ>0}` and `α ∉ −λ q^{ℤ>0}`.
pub fn check_exclusions(q: &Rational, alpha: &Rational, lambda: &Rational) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::Precondition("α must be nonzero".into()));
    }
    if let Some(j) = positive_power_index(q, lambda) {
        return Err(Error::Precondition(format!("λ = q^{j} is excluded")));
    }
    if !lambda.is_zero() {
        if let Some(j) = positive_power_index(q, &(-alpha / lambda)) {
            return Err(Error::Precondition(format!("α = −λ q^{j} is excluded")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct KroneckerRow {
    pub n: usize,
    pub nonzero: bool,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KroneckerReport {
    pub q: String,
    pub alpha: String,
    pub lambda: String,
    pub x: String,
    pub rows: Vec<KroneckerRow>,
}

impl KroneckerReport {
    pub fn nonzero_indices(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.nonzero).map(|r| r.n).collect()
    }

    pub fn zero_indices(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.nonzero).map(|r| r.n).collect()
    }
}

/// Exact `V_n(x)` for `n = 1..=n_max`.
pub fn kronecker_scan(
    q: &Rational,
    alpha: &Rational,
    lambda: &Rational,
    x: &Rational,
    n_max: usize,
    exec: Exec,
) -> Result<KroneckerReport> {
    check_exclusions(q, alpha, lambda)?;
    let vals = v_values(q, alpha, lambda, x, (2 * n_max).max(1));
    let dets = exec.map_range(1..n_max + 1, |n| hankel_det_rational(&vals, n, Exec::Sequential));
    let rows = dets
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let d = d?;
            Ok(KroneckerRow { n: i + 1, nonzero: !d.is_zero(), value: format_rational(&d) })
        })
        .collect::<Result<_>>()?;
    Ok(KroneckerReport {
        q: format_rational(q),
        alpha: format_rational(alpha),
        lambda: format_rational(lambda),
        x: format_rational(x),
        rows,
    })
}

/// Partial sum over `1 ≤ j_1 < … < j_n ≤ J` of
/// `Π_i q^{−j_i(j_i+1)/2} α^{j_i} · V(q^{−j_1}, …, q^{−j_n})²`, which for
/// `λ = 0` converges to `V_n(μ)` from below.
#[derive(Clone, Debug)]
pub struct BezivinPartial {
    pub n: usize,
    pub j_max: usize,
    pub partial: Rational,
    /// Upper bound for the omitted terms.
    pub tail_bound: Rational,
}

impl BezivinPartial {
    pub fn lower(&self, prec: u32) -> BigFloat {
        BigFloat::from_rational(&self.partial, prec)
    }

    /// Ball containing every value in `[partial, partial + tail]`.
    pub fn enclosure(&self, prec: u32) -> BigFloat {
        let half = &self.tail_bound / Rational::from_integer(2.into());
        BigFloat::from_rational(&(&self.partial + &half), prec).with_err(Mag::from_rational_up(&half))
    }
}

pub fn bezivin_sum(q: &Rational, alpha: &Rational, n: usize, j_max: usize) -> Result<BezivinPartial> {
    if *q <= Rational::one() || !alpha.is_positive() {
        return Err(Error::Precondition("positive-sum form needs q > 1 and α > 0".into()));
    }
    if n == 0 {
        return Ok(BezivinPartial { n, j_max, partial: Rational::one(), tail_bound: Rational::zero() });
    }
    let qi = q.recip();
    // t_j = α^j q^{−j(j+1)/2}, s_j = q^{−j}
    let mut t = vec![Rational::zero(); j_max + 2];
    let mut s = vec![Rational::one(); j_max + 2];
    let mut tj = Rational::one();
    for j in 1..=j_max + 1 {
        s[j] = &s[j - 1] * &qi;
        tj = tj * alpha * &s[j];
        t[j] = tj.clone();
    }
    let mut partial = Rational::zero();
    let mut subset: Vec<usize> = (1..=n).collect();
    if n <= j_max {
        loop {
            let mut term: Rational = subset.iter().map(|&j| t[j].clone()).product();
            for a in 0..n {
                for b in a + 1..n {
                    let d = &s[subset[a]] - &s[subset[b]];
                    term *= &d * &d;
                }
            }
            partial += term;
            if !next_subset(&mut subset, j_max) {
                break;
            }
        }
    }
    // Each squared Vandermonde factor is below 1, so the omitted terms are
    // bounded by (Σ_{j>J} t_j)(Σ_{j≥1} t_j)^{n−1}.
    let r = alpha / num_traits::pow(q.clone(), j_max + 2);
    if r >= Rational::one() {
        return Err(Error::Precondition("truncation too short for a geometric tail bound".into()));
    }
    let tail_j = &t[j_max + 1] / (Rational::one() - &r);
    let head: Rational = t[1..=j_max].iter().sum();
    let tail_bound = &tail_j * num_traits::pow(&head + &tail_j, n - 1);
    Ok(BezivinPartial { n, j_max, partial, tail_bound })
}

fn next_subset(c: &mut [usize], top: usize) -> bool {
    let n = c.len();
    for i in (0..n).rev() {
        if c[i] < top - (n - 1 - i) {
            c[i] += 1;
            for k in i + 1..n {
                c[k] = c[k - 1] + 1;
            }
            return true;
        }
    }
    false
}
