//! Exact arithmetic: rationals, sparse polynomials in `(q, α, λ, μ)`,
//! cyclotomic polynomials, totients and error-tracked big floats.

pub mod arith;
pub mod bigfloat;
pub mod cyclotomic;
pub mod poly;
pub mod rational;

pub use arith::{mertens_sigma, totient, totients_up_to};
pub use bigfloat::{BallRecord, BigFloat, Mag};
pub use cyclotomic::cyclotomic;
pub use poly::{MultiPoly, PolyRecord, QPolyView, TermRecord, Var};
pub use rational::{parse_rational, rat, Rational};
