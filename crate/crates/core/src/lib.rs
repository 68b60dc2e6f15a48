//! Exact and rigorous-numeric machinery for the Hankel determinants
//! `V_n = det(v_{i+j})` of the tail sequence of the q-series
//! `F_q(z; λ) = Σ z^n / Π_{j=1}^n (q^j − λ)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, sparse multivariate polynomials in `(q, α, λ, μ)`,
//!   cyclotomic polynomials, totients and error-tracked big floats.
//! - [`qseq`]: the sequence `v_n`, q-binomials, the difference operators and
//!   numeric tails.
//! - [`hankel`]: determinants, cyclotomic factorization, q-order and
//!   leading-coefficient checks, `K_n`, the `λ = 1` exponent pattern,
//!   Kronecker scans and the positive-sum representation for `λ = 0`.
//! - [`asym`]: the Clausen constant, thresholds, weighted exponent sums and
//!   the decay experiment.
//! - [`suites`]: named verification suites with serializable reports.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default); see [`exec::Exec`].

pub mod asym;
pub mod error;
pub mod exact;
pub mod exec;
pub mod hankel;
pub mod qseq;
pub mod specialize;
pub mod suites;

pub use error::{Error, Result};
pub use exact::{BigFloat, MultiPoly, Rational, Var};
pub use exec::Exec;
