//! Executable form of the block-stabilizer criterion for m-Cayley digraphs:
//! if `A = Aut(Γ)` fixes every block setwise and, for one vertex `u_i` in
//! each block, `A_{u_i}` fixes every out-neighbour of `u_i`, then a
//! connected `Γ` has `A = R(G)`.

use serde::Serialize;

use super::permgroup::PermGroup;
use crate::error::{Error, Result};
use crate::mcayley::MCayleyDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStabilizerCheck {
    /// Every generator of `A` maps each block to itself.
    pub blocks_fixed: bool,
    /// For each representative, `A_u` fixes `Γ⁺(u)` pointwise.
    pub stabilizers_fix_neighbors: Vec<bool>,
    pub aut_order: u128,
    pub group_order: usize,
}

impl BlockStabilizerCheck {
    /// Both hypotheses hold.
    pub fn holds(&self) -> bool {
        self.blocks_fixed && self.stabilizers_fix_neighbors.iter().all(|&b| b)
    }

    /// `|A| = |G|`, i.e. `A = R(G)`.
    pub fn conclusion_holds(&self) -> bool {
        self.aut_order == self.group_order as u128
    }

    /// The hypotheses imply the conclusion on this instance.
    pub fn consistent(&self) -> bool {
        !self.holds() || self.conclusion_holds()
    }
}

/// Checks the hypotheses against `aut` (normally `Aut(Γ)`), with `reps`
/// holding exactly one vertex from each block.
pub fn check_block_stabilizer_criterion(
    gamma: &MCayleyDigraph,
    aut: &PermGroup,
    reps: &[usize],
) -> Result<BlockStabilizerCheck> {
    let graph = gamma.graph();
    if aut.degree() != graph.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: graph.vertex_count(),
            got: aut.degree(),
        });
    }
    if !graph.is_weakly_connected() {
        return Err(Error::Disconnected);
    }
    let m = gamma.m();
    let mut covered = vec![false; m];
    for &u in reps {
        if u >= graph.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                nv: graph.vertex_count(),
            });
        }
        let (_, block) = gamma.label(u);
        if std::mem::replace(&mut covered[block], true) {
            return Err(Error::RepresentativesNotBlockSpanning);
        }
    }
    if reps.len() != m {
        return Err(Error::RepresentativesNotBlockSpanning);
    }

    let block_of = |v: usize| gamma.label(v).1;
    let blocks_fixed = aut
        .generators()
        .iter()
        .all(|s| (0..graph.vertex_count()).all(|v| block_of(s.apply(v)) == block_of(v)));

    let mut stabilizers_fix_neighbors = Vec::with_capacity(m);
    for &u in reps {
        let stab = aut.stabilizer(u)?;
        let fixes = stab
            .generators()
            .iter()
            .all(|s| graph.out_neighbors(u).iter().all(|&w| s.fixes(w)));
        stabilizers_fix_neighbors.push(fixes);
    }

    Ok(BlockStabilizerCheck {
        blocks_fixed,
        stabilizers_fix_neighbors,
        aut_order: aut.order(),
        group_order: gamma.group().order(),
    })
}
