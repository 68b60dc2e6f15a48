//! The tail sequence `v_n`, q-binomials, the difference operators acting on
//! the sequence index, and rigorous numeric evaluation of `F_q(z; λ)`.

pub mod numeric;
pub mod operators;
pub mod qbinomial;
pub mod seq;
pub mod witness;

pub use numeric::{f_eval, NumericSeq};
pub use operators::{
    apply_d, apply_dtilde, apply_fg, b_closed_form, d_operator, dtilde_operator, lemma_rhs, ShiftOperator, WValue,
};
pub use qbinomial::gauss_binomial;
pub use seq::{Param, Seed, SeqContext, SeqFrac};
pub use witness::{dtilde_witness, WitnessReport, WitnessRow};
