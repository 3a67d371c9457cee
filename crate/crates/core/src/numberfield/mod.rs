//! Number fields as towers over ℚ.

mod field;
mod order;
mod tower;

pub use field::{kp_cmp, AbsField, Elem, KPoly, NORM_DEGREE_CAP};
pub use order::{
    dedekind_maximal, odd_ramified_primes, p_maximal_index, ramification_report, stem_field_ramification,
    unramified_away_2,
    PrimeEvidence, RamificationMethod, RamificationReport, MAX_RAMIFICATION_DEGREE,
    ROUND2_ITERATION_CAP,
};
pub use tower::{
    base_field, compositum, compositum_degree, extend, factor_over_tower, galois_closure_is_2power,
    galois_closure_with, primitive_element, splitting_tower, BaseField, ClosureMethod,
    ClosureReport, FieldTower, Splitting, DEFAULT_DEGREE_CAP,
};
