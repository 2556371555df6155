//! Deciding and certifying when `P^k` permutes `F_q^n`.

mod brute;
mod criterion;
mod fixed;
mod snf;

pub use brute::{
    brute_force_is_permutation, brute_force_with_cap, frobenius_check, frobenius_check_map,
    frobenius_check_map_with_cap, BruteForceOutcome,
    DEFAULT_POINT_CAP,
};
pub use criterion::{
    full_report, full_report_with_cap, order_criterion, search_exceptional, theorem_criterion, CharpolyValue,
    CriterionReport, ExceptionalCertificate, CERTIFICATE_PRIMES,
};
pub use fixed::{
    denominator_check, fixed_points, fixed_points_in, integer_preimage_cosets, FixedPointSet, TorusSolution,
    DEDUP_GUARD, DEDUP_TOLERANCE,
};
pub use snf::{smith_normal_form, SmithForm};
