//! Partial degrees of `V_n` against `n(n−1)(4n+1)/6` in `q`, `n` in `μ` and
//! `n(n−1)` in `α` and `λ`.

use serde::Serialize;

use super::det::bareiss;
use super::formulas::{degree_bounds, DegreeBounds};
use super::vn::{hankel_det, hankel_matrix};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational, Var};
use crate::exec::Exec;
use crate::qseq::{Param, Seed, SeqContext};
use crate::specialize::{LambdaMode, Specializer};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub n: u64,
    /// `"symbolic"` or `"univariate"`.
    pub method: &'static str,
    pub found: DegreeBounds,
    pub bound: DegreeBounds,
    pub within: bool,
}

fn within(found: &DegreeBounds, bound: &DegreeBounds) -> bool {
    found.q <= bound.q && found.mu <= bound.mu && found.alpha <= bound.alpha && found.lambda <= bound.lambda
}

fn degrees_of(p: &MultiPoly) -> DegreeBounds {
    let d = |v| p.degree(v).unwrap_or(0) as u64;
    DegreeBounds { q: d(Var::Q), mu: d(Var::Mu), alpha: d(Var::Alpha), lambda: d(Var::Lambda) }
}

/// Degrees of the fully symbolic `V_n`.
pub fn symbolic_degrees(n: u64, exec: Exec) -> Result<DegreeCheck> {
    let v = hankel_det(&SeqContext::symbolic(), n as usize, exec)?;
    let found = degrees_of(&v);
    let bound = degree_bounds(n);
    Ok(DegreeCheck { n, method: "symbolic", within: within(&found, &bound), found, bound })
}

/// Degree of `V_n` in `var` with every other variable at a seeded generic
/// rational; equal to the symbolic degree away from a proper subvariety.
pub fn univariate_degree(n: u64, var: Var, sp: &mut Specializer, exec: Exec) -> Result<u64> {
    let p = sp.point(&LambdaMode::Generic, None, |_| true);
    let q_value = sp.rational() + Rational::from_integer(1.into());
    let param = |v: Var, x: &Rational| if var == v { Param::Symbolic } else { Param::Value(x.clone()) };
    let seed = if var == Var::Mu { Seed::SymbolicMu } else { Seed::Explicit(p.mu.clone()) };
    let ctx = SeqContext::new(param(Var::Alpha, &p.alpha), param(Var::Lambda, &p.lambda), seed);
    let det = if var == Var::Q {
        hankel_det(&ctx, n as usize, exec)?
    } else {
        let m: Vec<Vec<MultiPoly>> = hankel_matrix(&ctx, n as usize)?
            .into_iter()
            .map(|row| row.iter().map(|e| e.substitute(Var::Q, &q_value)).collect())
            .collect();
        bareiss(m, exec)?
    };
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    Ok(det.degree(var).unwrap_or(0) as u64)
}

pub fn univariate_degrees(n: u64, seed: u64, exec: Exec) -> Result<DegreeCheck> {
    let mut sp = Specializer::new(seed);
    let mut d = |v| univariate_degree(n, v, &mut sp, exec);
    let found = DegreeBounds { q: d(Var::Q)?, mu: d(Var::Mu)?, alpha: d(Var::Alpha)?, lambda: d(Var::Lambda)? };
    let bound = degree_bounds(n);
    Ok(DegreeCheck { n, method: "univariate", within: within(&found, &bound), found, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialize::DEFAULT_SEED;

    #[test]
    fn symbolic_and_univariate_agree() {
        for n in 1..=3 {
            let s = symbolic_degrees(n, Exec::Parallel).unwrap();
            let u = univariate_degrees(n, DEFAULT_SEED, Exec::Parallel).unwrap();
            assert!(s.within, "{s:?}");
            assert_eq!(s.found, u.found, "n = {n}");
        }
    }

    #[test]
    fn v1_degrees() {
        // V_1 = μ − 1
        let s = symbolic_degrees(1, Exec::Sequential).unwrap();
        assert_eq!(s.found, DegreeBounds { q: 0, mu: 1, alpha: 0, lambda: 0 });
    }
}
