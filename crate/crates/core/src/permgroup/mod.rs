//! Permutation groups small enough to list every element.

mod group;
mod lattice;
mod perm;
mod witnesses;

pub use group::{
    is_p_group, normal_core, search_two_generation, two_generated, PermGroup, TwoGenSearch,
    DEFAULT_CLOSURE_CAP,
};
pub use lattice::{
    core_bound_check, core_bound_scan, enumerate_subgroups, enumerate_subgroups_capped,
    has_subgroup_of_index, subdirect_products_s3, CoreBoundScan, CoreBoundViolation,
    SubdirectProduct, SubgroupLattice, DEFAULT_SUBGROUP_CAP,
};
pub use perm::{Perm, MAX_POINTS};
pub use witnesses::{
    agl_1_17, agl_1_17_generators, cyclic_group, regular_action_generators, s3_times_s3,
    symmetric_group, sylow2_s8_witness, SYLOW2_S8_GENERATORS,
};
