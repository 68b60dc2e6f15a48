//! Numeric constants and asymptotic experiments.

pub mod constants;
pub mod decay;
pub mod sums;

pub use constants::{
    bernoulli_numbers, clausen_constant, constants_abc, constants_report, exponent_sum_constant,
    exponent_sum_constant_closed, inverse_square_sum, pi, threshold, threshold_closed_form, Abc, ConstantsReport,
};
pub use decay::{decay_experiment, default_decay_precision, DecayReport, DecayRow, DEFAULT_DECAY_CAP};
pub use sums::{
    floor_sum, sumel_exact, sumel_partial, weighted_exponent_report, weighted_exponent_sum, SumelReport,
    WeightedSumReport,
};
