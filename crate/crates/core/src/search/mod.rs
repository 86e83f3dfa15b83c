//! Exhaustive search over connection matrices, used to certify that no
//! oriented 3-valent m-semiregular representation exists for the excluded
//! small cases, plus an exploratory search for rigid regular digraphs.

mod exhaustive;
mod rigid;
mod rows;

pub use exhaustive::{
    enumerate_candidates, exhaustive_search, Checkpoint, SearchCounts, SearchOptions,
    SearchOutcome, SearchSpace, SearchStatus, SpaceDescriptor, DEFAULT_BUDGET,
};
pub use rigid::{
    search_trivial_aut_digraph, ExploreMode, ExploreOptions, ExploreOutcome, ExploreStatus,
    RigidityCheck,
};
pub use rows::{enumerate_rows, RowAssignment, MAX_SEARCH_GROUP_ORDER};

use serde::Serialize;

use crate::error::Result;
use crate::group::FiniteGroup;

/// One excluded `(G, m)` case and the search evidence for it.
#[derive(Debug, Clone, Serialize)]
pub struct NonexistenceCase {
    pub group: String,
    pub m: usize,
    pub outcome: SearchOutcome,
    /// `EXHAUSTED`, and every evaluated candidate has `|Aut| > |G|`.
    pub confirmed: bool,
}

/// The excluded cases: `(Z₂, 2)`, `(Z₂, 3)`, `(Z₂, 4)`, `(Z₃, 2)`,
/// `(Z₄, 2)` and `(Z₂², 2)`.
pub fn nonexistence_instances() -> Vec<(String, FiniteGroup, usize)> {
    let z = |n| FiniteGroup::cyclic(n).expect("n >= 1");
    vec![
        ("Z2".into(), z(2), 2),
        ("Z2".into(), z(2), 3),
        ("Z2".into(), z(2), 4),
        ("Z3".into(), z(3), 2),
        ("Z4".into(), z(4), 2),
        ("Z2xZ2".into(), FiniteGroup::direct_product(&z(2), &z(2)), 2),
    ]
}

/// Runs [`exhaustive_search`] with exact histograms on every excluded case.
pub fn verify_nonexistence_suite(jobs: usize) -> Result<Vec<NonexistenceCase>> {
    nonexistence_instances()
        .into_iter()
        .map(|(name, group, m)| {
            let order = group.order();
            let space = SearchSpace::new(group, m);
            let options = SearchOptions {
                jobs,
                exact_histogram: true,
                ..SearchOptions::default()
            };
            let outcome = exhaustive_search(&space, &options)?;
            let confirmed =
                outcome.status == SearchStatus::Exhausted && outcome.counts.all_above(order);
            Ok(NonexistenceCase {
                group: name,
                m,
                outcome,
                confirmed,
            })
        })
        .collect()
}
