//! `V_n = q^{e_0} Π_l Φ_l(q)^{m_l} · Ṽ_n` by repeated exact division.

use std::collections::BTreeMap;

use serde::Serialize;

use super::formulas::{e0_formula, e_l_formula};
use super::intpoly::IntPoly;
use super::vn::hankel_det;
use crate::error::{Error, Result};
use crate::exact::{cyclotomic, MultiPoly, PolyRecord};
use crate::exec::Exec;
use crate::qseq::SeqContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredDeterminant {
    pub n: u32,
    pub e0_found: u32,
    pub e0_guaranteed: u64,
    /// Multiplicity of `Φ_l` for every probed `l`.
    pub cyclo_exponents: BTreeMap<u32, u32>,
    /// `e_l(n)` for `1 ≤ l < n/2`.
    pub guarantees: BTreeMap<u32, u64>,
    pub cofactor: MultiPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentRow {
    pub l: u32,
    pub guaranteed: Option<u64>,
    pub found: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub n: u32,
    pub e0_found: u32,
    pub e0_guaranteed: u64,
    pub exponents: Vec<ExponentRow>,
    pub cofactor: PolyRecord,
}

pub fn default_probe_limit(n: u32) -> u32 {
    n.div_ceil(2) + 2
}

impl FactoredDeterminant {
    /// `q^{e0} Π Φ_l^{m_l} · Ṽ_n`.
    pub fn reassemble(&self) -> Result<MultiPoly> {
        let mut p = self.cofactor.mul_q_pow(self.e0_found);
        for (&l, &m) in &self.cyclo_exponents {
            if m > 0 {
                p = &p * &cyclotomic(l)?.pow(m);
            }
        }
        Ok(p)
    }

    /// First `l` whose multiplicity falls short of `e_l(n)`.
    pub fn first_shortfall(&self) -> Option<(u32, u64, u32)> {
        self.guarantees.iter().find_map(|(&l, &g)| {
            let found = self.cyclo_exponents.get(&l).copied().unwrap_or(0);
            ((found as u64) < g).then_some((l, g, found))
        })
    }

    pub fn meets_guarantees(&self) -> bool {
        self.first_shortfall().is_none() && self.e0_found as u64 >= self.e0_guaranteed
    }

    pub fn report(&self) -> FactorReport {
        FactorReport {
            n: self.n,
            e0_found: self.e0_found,
            e0_guaranteed: self.e0_guaranteed,
            exponents: self
                .cyclo_exponents
                .iter()
                .map(|(&l, &found)| ExponentRow { l, guaranteed: self.guarantees.get(&l).copied(), found })
                .collect(),
            cofactor: self.cofactor.to_record(),
        }
    }
}

/// Factors a given `V_n`, probing `Φ_1 … Φ_{probe_limit}`.
pub fn factor_polynomial(v: &MultiPoly, n: u32, lambda_is_zero: bool, probe_limit: u32) -> Result<FactoredDeterminant> {
    if v.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let e0 = v.q_order()?;
    let mut rest = v.div_q_pow(e0).expect("q-order divides");
    let mut cyclo = BTreeMap::new();
    if let Some((mut ip, scale)) = IntPoly::from_multipoly(&rest) {
        for l in 1..=probe_limit {
            let (phi, _) = IntPoly::from_multipoly(&cyclotomic(l)?).expect("q-only");
            let mut m = 0;
            while let Some(quo) = ip.div_exact(&phi) {
                ip = quo;
                m += 1;
            }
            cyclo.insert(l, m);
        }
        rest = ip.to_multipoly(&scale);
    } else {
        for l in 1..=probe_limit {
            let phi = cyclotomic(l)?;
            let mut m = 0;
            while let Some(quo) = rest.divide_exact_q(&phi)? {
                rest = quo;
                m += 1;
            }
            cyclo.insert(l, m);
        }
    }
    let guarantees = (1..)
        .take_while(|&l| 2 * l < n)
        .map(|l| Ok((l, e_l_formula(l as u64, n as u64)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(FactoredDeterminant {
        n,
        e0_found: e0,
        e0_guaranteed: e0_formula(n as u64, lambda_is_zero),
        cyclo_exponents: cyclo,
        guarantees,
        cofactor: rest,
    })
}

/// Computes and factors `V_n`; `probe_limit` defaults to `⌈n/2⌉ + 2`.
pub fn factorize(ctx: &SeqContext, n: u32, probe_limit: Option<u32>, exec: Exec) -> Result<FactoredDeterminant> {
    let v = hankel_det(ctx, n as usize, exec)?;
    factor_polynomial(&v, n, ctx.lambda().is_zero(), probe_limit.unwrap_or_else(|| default_probe_limit(n)))
}
