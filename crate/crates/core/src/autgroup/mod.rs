//! Automorphism groups of digraphs and the permutation-group machinery
//! needed to reason about them.

mod block_criterion;
mod engine;
mod partition;
mod perm;
mod permgroup;

pub use block_criterion::{check_block_stabilizer_criterion, BlockStabilizerCheck};
pub use engine::{
    automorphism_group, automorphism_search, brute_force_automorphisms, AutSearch,
    BRUTE_FORCE_MAX_VERTICES,
};
pub use partition::{refine, OrderedPartition};
pub use perm::Permutation;
pub use permgroup::PermGroup;
