//! Hankel determinants `V_n = det(v_{i+j})`, their factorization and the
//! checks built on them.

pub mod conjecture;
pub mod degrees;
pub mod det;
pub mod factor;
pub mod formulas;
pub mod intpoly;
pub mod kronecker;
pub mod leading;
pub mod numeric;
pub mod vn;

pub use conjecture::{conjecture_lambda1, ConjectureReport};
pub use degrees::{symbolic_degrees, univariate_degrees, DegreeCheck};
pub use det::{bareiss, cofactor, det_mod_q_power, DetRing};
pub use factor::{default_probe_limit, factor_polynomial, factorize, FactorReport, FactoredDeterminant};
pub use formulas::{degree_bounds, e0_formula, e1, e2, e_l_compact, e_l_formula, e_l_sum, DegreeBounds};
pub use intpoly::IntPoly;
pub use kronecker::{bezivin_sum, kronecker_scan, BezivinPartial, KroneckerReport};
pub use leading::{expected_leading, k_det, k_rec, low_order_part, verify_leading, KSequence, LeadingReport};
pub use numeric::{ball_det, hankel_det_ball};
pub use vn::{hankel_det, hankel_det_checked, hankel_det_rational, hankel_matrix};
