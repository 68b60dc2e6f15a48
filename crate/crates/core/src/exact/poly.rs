//! Sparse polynomials over the rationals in the fixed variable order
//! `(q, α, λ, μ)`. The generic `x` of `V_n(x)` shares the `μ` slot.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bigfloat::BigFloat;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    Alpha,
    Lambda,
    Mu,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Q, Var::Alpha, Var::Lambda, Var::Mu];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Alpha => "alpha",
            Var::Lambda => "lambda",
            Var::Mu => "mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector indexed by [`Var::index`].
pub type Exps = [u32; 4];

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn exps_divides(d: &Exps, e: &Exps) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

fn exps_sub(e: &Exps, d: &Exps) -> Exps {
    [e[0] - d[0], e[1] - d[1], e[2] - d[2], e[3] - d[3]]
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
/// lexicographic with `q` most significant. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    /// `q^k`.
    pub fn q_pow(k: u32) -> Self {
        Self::monomial([k, 0, 0, 0], Rational::one())
    }

    pub fn monomial(e: Exps, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn vars_used(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.involves(v)).collect()
    }

    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|e| e[1] == 0 && e[2] == 0 && e[3] == 0)
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).min()
    }

    /// Minimal exponent of `q` over all stored terms.
    pub fn q_order(&self) -> Result<u32> {
        self.min_degree(Var::Q).ok_or(Error::ZeroPolynomialOrder)
    }

    pub fn q_degree(&self) -> Result<u32> {
        self.degree(Var::Q).ok_or(Error::ZeroPolynomialOrder)
    }

    /// Coefficient of `q^k` as a polynomial in `(α, λ, μ)`.
    pub fn q_coeff(&self, k: u32) -> MultiPoly {
        let lo = [k, 0, 0, 0];
        let hi = [k, u32::MAX, u32::MAX, u32::MAX];
        Self {
            terms: self
                .terms
                .range(lo..=hi)
                .map(|(e, c)| ([0, e[1], e[2], e[3]], c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn mul_q_pow(&self, k: u32) -> MultiPoly {
        self.mul_monomial(&[k, 0, 0, 0])
    }

    pub fn mul_monomial(&self, m: &Exps) -> MultiPoly {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exps_add(e, m), c.clone()))
                .collect(),
        }
    }

    /// Divides by `q^k`; every term must carry at least `q^k`.
    pub fn div_q_pow(&self, k: u32) -> Option<MultiPoly> {
        if self.terms.keys().any(|e| e[0] < k) {
            return None;
        }
        Some(Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] - k, e[1], e[2], e[3]], c.clone()))
                .collect(),
        })
    }

    /// Drops every term of `q`-degree `>= k`.
    pub fn truncate_q(&self, k: u32) -> MultiPoly {
        Self {
            terms: self
                .terms
                .range(..[k, 0, 0, 0])
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> MultiPoly {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power with a signed exponent; negative exponents are rejected.
    pub fn pow_i(&self, k: i64) -> Result<MultiPoly> {
        if k < 0 {
            return Err(Error::NegativeExponent(k));
        }
        Ok(self.pow(k as u32))
    }

    /// `self · rhs mod q^k`.
    pub fn mul_truncated(&self, rhs: &MultiPoly, k: u32) -> MultiPoly {
        mul_impl(self, rhs, Some(k))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn integer_form(&self) -> (Vec<(Exps, BigInt)>, BigInt) {
        let den = self.denominator_lcm();
        let ints = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        (ints, den)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Multivariate long division in lexicographic order; the remainder is
    /// zero iff `d` divides `self` in the polynomial ring over the rationals.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<Option<MultiPoly>> {
        let (lt_e, lt_c) = d.terms.last_key_value().ok_or(Error::DivisionByZero)?;
        if let Some(c) = d.as_constant() {
            return Ok(Some(self.scale(&c.recip())));
        }
        let lt_inv = lt_c.recip();
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        while let Some((e, c)) = rem.last_key_value() {
            if !exps_divides(lt_e, e) {
                return Ok(None);
            }
            let te = exps_sub(e, lt_e);
            let tc = c * &lt_inv;
            for (de, dc) in &d.terms {
                let v = &tc * dc;
                match rem.entry(exps_add(&te, de)) {
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= v;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(-v);
                    }
                }
            }
            quo.insert(te, tc);
        }
        Ok(Some(Self { terms: quo }))
    }

    /// Exact division by a divisor that involves only `q`.
    ///
    /// `Ok(None)` means "not divisible", an ordinary outcome.
    pub fn divide_exact_q(&self, d: &MultiPoly) -> Result<Option<MultiPoly>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_q_only() {
            return Err(Error::DivisorNotUnivariate);
        }
        self.div_exact(d)
    }

    /// Replaces `v` by the rational `value`.
    pub fn substitute(&self, v: Var, value: &Rational) -> MultiPoly {
        if !self.involves(v) {
            return self.clone();
        }
        let i = v.index();
        let maxd = self.degree(v).unwrap_or(0) as usize;
        let mut pows = Vec::with_capacity(maxd + 1);
        pows.push(Rational::one());
        for k in 1..=maxd {
            pows.push(&pows[k - 1] * value);
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out.add_term(ne, c * &pows[e[i] as usize]);
        }
        out
    }

    /// Full evaluation at rational values `(q, α, λ, μ)`.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut p = self.clone();
        for v in Var::ALL {
            p = p.substitute(v, &point[v.index()]);
        }
        p.as_constant().expect("all variables substituted")
    }

    /// Evaluation at ball-arithmetic values; the result encloses the exact value.
    pub fn eval_ball(&self, point: &[BigFloat; 4], prec: u32) -> Result<BigFloat> {
        let mut pows: Vec<Vec<BigFloat>> = Vec::with_capacity(4);
        for v in Var::ALL {
            let d = self.degree(v).unwrap_or(0) as usize;
            let mut row = vec![BigFloat::one(prec)];
            for k in 1..=d {
                row.push(row[k - 1].mul(&point[v.index()]));
            }
            pows.push(row);
        }
        let mut acc = BigFloat::zero(prec);
        for (e, c) in &self.terms {
            let mut t = BigFloat::from_rational(c, prec);
            for v in Var::ALL {
                let k = e[v.index()] as usize;
                if k > 0 {
                    t = t.mul(&pows[v.index()][k]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn to_record(&self) -> PolyRecord {
        let vars = self.vars_used();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermRecord {
                coeff: format_rational(c),
                exp: vars.iter().map(|v| e[v.index()]).collect(),
            })
            .collect();
        PolyRecord {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            terms,
        }
    }

    pub fn from_record(rec: &PolyRecord) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(rec.vars.len());
        for name in &rec.vars {
            let v = Var::from_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            if idx.contains(&v) {
                return Err(Error::Parse(format!("duplicate variable {name:?}")));
            }
            idx.push(v);
        }
        let mut terms = BTreeMap::new();
        for t in &rec.terms {
            if t.exp.len() != idx.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            let c = parse_rational(&t.coeff)?;
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient stored".into()));
            }
            let mut e = [0u32; 4];
            for (v, k) in idx.iter().zip(&t.exp) {
                e[v.index()] = *k;
            }
            if terms.insert(e, c).is_some() {
                return Err(Error::Parse("duplicate exponent vector".into()));
            }
        }
        Ok(Self { terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<MultiPoly> {
        let rec: PolyRecord =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }
}

/// Serialized polynomial: variable names plus lexicographically sorted terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub vars: Vec<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exp: Vec<u32>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        mul_impl(self, rhs, None)
    }
}

fn mul_impl(lhs: &MultiPoly, rhs: &MultiPoly, q_limit: Option<u32>) -> MultiPoly {
    if lhs.is_zero() || rhs.is_zero() {
        return MultiPoly::zero();
    }
    if q_limit.is_none() {
        if let Some(c) = lhs.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return lhs.scale(&c);
        }
    }
    let limit = q_limit.unwrap_or(u32::MAX);
    // Accumulate over a common denominator so the inner loop is pure
    // integer multiply-add; each output coefficient is reduced once.
    let (a, da) = lhs.integer_form();
    let (b, db) = rhs.integer_form();
    let mut acc: HashMap<Exps, BigInt> = HashMap::with_capacity(a.len() * 2 + b.len());
    for (ea, ca) in &a {
        if ea[0] >= limit {
            break;
        }
        for (eb, cb) in &b {
            if ea[0] + eb[0] >= limit {
                break;
            }
            let prod = ca * cb;
            match acc.entry(exps_add(ea, eb)) {
                std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(prod);
                }
            }
        }
    }
    let den = da * db;
    let unit = den.is_one();
    MultiPoly {
        terms: acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let r = if unit { Rational::from_integer(c) } else { Rational::new(c, den.clone()) };
                (e, r)
            })
            .collect(),
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// A polynomial viewed as a dense array in `q` whose entries are polynomials
/// in `(α, λ, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyView {
    coeffs: Vec<MultiPoly>,
}

impl QPolyView {
    pub fn new(p: &MultiPoly) -> Self {
        let deg = p.degree(Var::Q).map(|d| d as usize + 1).unwrap_or(0);
        let mut coeffs = vec![MultiPoly::zero(); deg];
        for (e, c) in &p.terms {
            coeffs[e[0] as usize].terms.insert([0, e[1], e[2], e[3]], c.clone());
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&MultiPoly> {
        self.coeffs.get(k)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (e, r) in &c.terms {
                terms.insert([k as u32, e[1], e[2], e[3]], r.clone());
            }
        }
        MultiPoly { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }
    fn lam() -> MultiPoly {
        MultiPoly::var(Var::Lambda)
    }
    fn mu() -> MultiPoly {
        MultiPoly::var(Var::Mu)
    }
    fn alpha() -> MultiPoly {
        MultiPoly::var(Var::Alpha)
    }

    #[test]
    fn truncated_product_matches_full_product() {
        let a = &(&MultiPoly::q() + &MultiPoly::var(Var::Alpha)).pow(4) - &MultiPoly::from_int(3);
        let b = &MultiPoly::q_pow(2) - &MultiPoly::var(Var::Mu).scale(&rat(1, 3));
        for k in 0..8 {
            assert_eq!(a.mul_truncated(&b, k), (&a * &b).truncate_q(k), "k = {k}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let p = (&q() - &lam()) * (&q() + &lam());
        assert_eq!(p, &q().pow(2) - &lam().pow(2));
    }

    #[test]
    fn identity_and_zero() {
        let a = &(&q() * &alpha()) + &MultiPoly::constant(rat(3, 7));
        assert_eq!(&a * &MultiPoly::one(), a);
        assert!((&a - &a).is_zero());
        assert!((&a * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn expand_square_term_by_term() {
        // ((μ−1)+α)² expanded by hand.
        let p = (&(&mu() - &MultiPoly::one()) + &alpha()).pow(2);
        let expected = MultiPoly::from_terms([
            ([0, 0, 0, 2], rat(1, 1)),
            ([0, 1, 0, 1], rat(2, 1)),
            ([0, 0, 0, 1], rat(-2, 1)),
            ([0, 2, 0, 0], rat(1, 1)),
            ([0, 1, 0, 0], rat(-2, 1)),
            ([0, 0, 0, 0], rat(1, 1)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn negative_power_rejected() {
        assert_eq!(q().pow_i(-1), Err(Error::NegativeExponent(-1)));
        assert_eq!(q().pow_i(3).unwrap(), MultiPoly::q_pow(3));
    }

    #[test]
    fn q_order_degree_coeff() {
        let p = &q().pow(2) * &(&q() + &MultiPoly::from_int(3));
        assert_eq!(p.q_order().unwrap(), 2);
        assert_eq!(p.q_degree().unwrap(), 3);
        let r = &(&alpha() * &q()) + &(&lam() * &q().pow(2));
        assert_eq!(r.q_coeff(1), alpha());
        assert_eq!(r.q_coeff(2), lam());
        assert!(r.q_coeff(5).is_zero());
        assert_eq!(MultiPoly::zero().q_order(), Err(Error::ZeroPolynomialOrder));
    }

    #[test]
    fn exact_q_division() {
        let one = MultiPoly::one();
        let num = &q().pow(2) - &one;
        let d = &q() - &one;
        assert_eq!(num.divide_exact_q(&d).unwrap(), Some(&q() + &one));
        let num2 = &q().pow(2) + &one;
        assert_eq!(num2.divide_exact_q(&d).unwrap(), None);
        assert_eq!(num.divide_exact_q(&MultiPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(num.divide_exact_q(&alpha()), Err(Error::DivisorNotUnivariate));
    }

    #[test]
    fn multivariate_exact_division() {
        let a = &(&q() * &alpha()) - &(&lam() * &mu());
        let b = &(&mu() + &MultiPoly::constant(rat(2, 3))) * &q();
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(p.div_exact(&b).unwrap(), Some(a.clone()));
        assert_eq!((&p + &MultiPoly::one()).div_exact(&a).unwrap(), None);
    }

    #[test]
    fn serialization_is_sorted_and_round_trips() {
        let p = &(&q().pow(2) * &MultiPoly::constant(rat(-1, 3))) + &(&mu() - &MultiPoly::one());
        let s = p.to_json();
        assert_eq!(
            s,
            r#"{"vars":["q","mu"],"terms":[{"coeff":"-1","exp":[0,0]},{"coeff":"1","exp":[0,1]},{"coeff":"-1/3","exp":[2,0]}]}"#
        );
        let back = MultiPoly::from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), s);
        assert_eq!(MultiPoly::zero().to_json(), r#"{"vars":[],"terms":[]}"#);
    }

    #[test]
    fn record_rejects_malformed_input() {
        assert!(MultiPoly::from_json(r#"{"vars":["z"],"terms":[]}"#).is_err());
        assert!(MultiPoly::from_json(r#"{"vars":["q"],"terms":[{"coeff":"0","exp":[1]}]}"#).is_err());
        assert!(MultiPoly::from_json(r#"{"vars":["q"],"terms":[{"coeff":"1","exp":[1,2]}]}"#).is_err());
    }

    #[test]
    fn view_reassembles() {
        let p = &(&q().pow(3) * &alpha()) + &(&lam() - &q());
        let v = QPolyView::new(&p);
        assert_eq!(v.coeffs().len(), 4);
        assert_eq!(v.coeff(3).unwrap(), &alpha());
        assert_eq!(v.to_poly(), p);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(
            (prop::array::uniform4(0u32..3), -6i64..6, 1i64..4),
            0..6,
        )
        .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn q_power_divides(a in arb_poly()) {
            prop_assume!(!a.is_zero());
            let k = a.q_order().unwrap();
            let quo = a.divide_exact_q(&MultiPoly::q_pow(k)).unwrap().unwrap();
            prop_assert_eq!(quo.q_order().unwrap(), 0);
            prop_assert_eq!(quo.mul_q_pow(k), a);
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let s = a.to_json();
            let b = MultiPoly::from_json(&s).unwrap();
            prop_assert_eq!(b.to_json(), s);
            prop_assert_eq!(b, a);
        }
    }
}
