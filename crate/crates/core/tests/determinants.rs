use proptest::prelude::*;

use qhankel::exact::{rat, MultiPoly, Rational, Var};
use qhankel::hankel::{
    e0_formula, e_l_compact, e_l_sum, factorize, hankel_det, hankel_det_rational, kronecker::v_values,
};
use qhankel::qseq::{Param, Seed, SeqContext};
use qhankel::Exec;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn point(q: &Rational, alpha: &Rational, lambda: &Rational, mu: &Rational) -> [Rational; 4] {
    let mut p: [Rational; 4] = Default::default();
    p[Var::Q.index()] = q.clone();
    p[Var::Alpha.index()] = alpha.clone();
    p[Var::Lambda.index()] = lambda.clone();
    p[Var::Mu.index()] = mu.clone();
    p
}

#[test]
fn first_determinants() {
    let ctx = SeqContext::symbolic();
    let v1 = hankel_det(&ctx, 1, Exec::Sequential).unwrap();
    assert_eq!(v1, MultiPoly::var(Var::Mu) - MultiPoly::one());
    let v0 = hankel_det(&ctx, 0, Exec::Sequential).unwrap();
    assert_eq!(v0, MultiPoly::one());
}

#[test]
fn sequential_and_parallel_agree() {
    let ctx = SeqContext::symbolic();
    for n in 1..=4 {
        let a = hankel_det(&ctx, n, Exec::Sequential).unwrap();
        let b = hankel_det(&ctx, n, Exec::Parallel).unwrap();
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn symbolic_json_round_trip() {
    let v = hankel_det(&SeqContext::symbolic(), 3, Exec::Parallel).unwrap();
    assert_eq!(MultiPoly::from_json(&v.to_json()).unwrap(), v);
}

#[test]
fn q_order_of_symbolic_determinants() {
    let ctx = SeqContext::symbolic();
    let ctx0 = SeqContext::new(Param::Symbolic, Param::int(0), Seed::SymbolicMu);
    for n in 1..=5u64 {
        let v = hankel_det(&ctx, n as usize, Exec::Parallel).unwrap();
        assert_eq!(v.q_order().unwrap() as u64, e0_formula(n, false), "n = {n}");
        let v0 = hankel_det(&ctx0, n as usize, Exec::Parallel).unwrap();
        assert_eq!(v0.q_order().unwrap() as u64, e0_formula(n, true), "n = {n}, λ = 0");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_commutes_with_the_determinant(
        q in small_rational(), alpha in small_rational(), lambda in small_rational(), mu in small_rational(), n in 1usize..=3,
    ) {
        let v = hankel_det(&SeqContext::symbolic(), n, Exec::Sequential).unwrap();
        let values = v_values(&q, &alpha, &lambda, &mu, 2 * n - 1);
        let direct = hankel_det_rational(&values, n, Exec::Sequential).unwrap();
        prop_assert_eq!(v.eval(&point(&q, &alpha, &lambda, &mu)), direct);
    }

    #[test]
    fn factorization_reassembles(alpha in small_rational(), lambda in small_rational(), mu in small_rational(), n in 1u32..=6) {
        prop_assume!(alpha != rat(0, 1));
        let ctx = SeqContext::new(Param::Value(alpha), Param::Value(lambda), Seed::Explicit(mu));
        let v = hankel_det(&ctx, n as usize, Exec::Parallel).unwrap();
        prop_assume!(!v.is_zero());
        let f = factorize(&ctx, n, None, Exec::Parallel).unwrap();
        prop_assert_eq!(f.reassemble().unwrap(), v);
        prop_assert!(f.meets_guarantees(), "{:?}", f.first_shortfall());
    }

    #[test]
    fn exponent_formulas_agree(l in 1u64..=40, n in 0u64..=400) {
        prop_assert_eq!(e_l_sum(l, n), e_l_compact(l, n));
    }
}
