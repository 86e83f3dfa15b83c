//! Automorphism groups of digraphs by individualization and refinement.
//!
//! The first path of the search tree is followed to a discrete partition
//! (the reference leaf). Then, level by level from the bottom up, every
//! vertex of the target cell that is not yet known to share an orbit with
//! the first-path choice is tried: its subtree is searched for a leaf whose
//! position-wise correspondence with the reference leaf is an automorphism.
//! Nodes whose refinement trace or cell shape differ from the first path at
//! the same depth cannot lead to such a leaf and are cut.

use super::partition::{refine, OrderedPartition, Refiner, WorkPartition};
use super::perm::Permutation;
use super::permgroup::{PermGroup, UnionFind};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Outcome of an automorphism search that may stop early.
#[derive(Debug, Clone)]
pub enum AutSearch {
    Complete(PermGroup),
    /// The group was proven larger than the requested limit.
    LimitExceeded {
        lower_bound: u128,
        generators: Vec<Permutation>,
    },
}

impl AutSearch {
    pub fn group(self) -> Option<PermGroup> {
        match self {
            AutSearch::Complete(g) => Some(g),
            AutSearch::LimitExceeded { .. } => None,
        }
    }
}

/// The full automorphism group of `graph`, restricted to permutations that
/// keep every vertex inside its cell of `colors` when colours are given.
pub fn automorphism_group(graph: &Digraph, colors: Option<&OrderedPartition>) -> Result<PermGroup> {
    match automorphism_search(graph, colors, None)? {
        AutSearch::Complete(g) => Ok(g),
        AutSearch::LimitExceeded { .. } => unreachable!("no limit was set"),
    }
}

/// Like [`automorphism_group`], but gives up as soon as the group is known
/// to have more than `order_limit` elements.
pub fn automorphism_search(
    graph: &Digraph,
    colors: Option<&OrderedPartition>,
    order_limit: Option<u128>,
) -> Result<AutSearch> {
    let n = graph.vertex_count();
    let initial = match colors {
        Some(c) if c.vertex_count() != n => {
            return Err(Error::InvalidPartition(format!(
                "colouring covers {} vertices, digraph has {n}",
                c.vertex_count()
            )))
        }
        Some(c) => c.clone(),
        None => OrderedPartition::unit(n),
    };
    if n == 0 {
        return Ok(AutSearch::Complete(PermGroup::trivial(0)));
    }
    let root = refine(graph, &initial)?;
    let mut engine = Engine::new(graph, WorkPartition::from_ordered(&root));
    engine.run(order_limit)
}

struct Engine<'a> {
    graph: &'a Digraph,
    words: usize,
    adjacency: Vec<u64>,
    refiner: Refiner,
    /// Partitions on the first path; the last one is discrete.
    path: Vec<WorkPartition>,
    /// Trace and shape of `path[d]`, for `d ≥ 1`.
    traces: Vec<u64>,
    shapes: Vec<Vec<usize>>,
    targets: Vec<usize>,
    chosen: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(graph: &'a Digraph, root: WorkPartition) -> Self {
        let n = graph.vertex_count();
        let words = n.div_ceil(64);
        let mut adjacency = vec![0u64; n * words];
        for (u, v) in graph.arcs() {
            adjacency[u * words + v / 64] |= 1 << (v % 64);
        }
        let mut engine = Engine {
            graph,
            words,
            adjacency,
            refiner: Refiner::new(n),
            path: Vec::new(),
            traces: vec![0],
            shapes: vec![root.shape()],
            targets: Vec::new(),
            chosen: Vec::new(),
        };
        engine.build_first_path(root);
        engine
    }

    fn build_first_path(&mut self, root: WorkPartition) {
        let mut current = root;
        while let Some(target) = current.target_cell() {
            let v = *current.cell(target).iter().min().unwrap();
            let mut child = current.clone();
            let single = child.individualize(v);
            let trace = self.refiner.refine(self.graph, &mut child, &[single]);
            self.targets.push(target);
            self.chosen.push(v);
            self.traces.push(trace);
            self.shapes.push(child.shape());
            self.path.push(current);
            current = child;
        }
        self.path.push(current);
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn leaf_automorphism(&self, leaf: &WorkPartition) -> Option<Permutation> {
        let reference = &self.path.last().unwrap().lab;
        let mut images = vec![0; reference.len()];
        for (k, &v) in reference.iter().enumerate() {
            images[v] = leaf.lab[k];
        }
        let preserves = self
            .graph
            .arcs()
            .all(|(u, v)| self.has_arc(images[u], images[v]));
        preserves.then(|| Permutation::from_images_unchecked(images))
    }

    fn run(&mut self, order_limit: Option<u128>) -> Result<AutSearch> {
        let n = self.graph.vertex_count();
        let depth = self.targets.len();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut orbits = UnionFind::new(n);
        let mut order: u128 = 1;

        for d in (0..depth).rev() {
            let v = self.chosen[d];
            let mut cell: Vec<usize> = self.path[d].cell(self.targets[d]).to_vec();
            cell.sort_unstable();
            let mut failed: Vec<usize> = Vec::new();
            for &w in &cell {
                if w == v || orbits.find(w) == orbits.find(v) {
                    continue;
                }
                if failed.iter().any(|&f| orbits.find(f) == orbits.find(w)) {
                    continue;
                }
                match self.search_subtree(d, w) {
                    Some(sigma) => {
                        for p in 0..n {
                            orbits.union(p, sigma.apply(p));
                        }
                        generators.push(sigma);
                        if let Some(limit) = order_limit {
                            let bound = order.saturating_mul(orbits.class_size(v) as u128);
                            if bound > limit {
                                return Ok(AutSearch::LimitExceeded {
                                    lower_bound: bound,
                                    generators,
                                });
                            }
                        }
                    }
                    None => failed.push(w),
                }
            }
            order = order.saturating_mul(orbits.class_size(v) as u128);
        }

        let group = PermGroup::new(n, generators)?;
        debug_assert_eq!(group.order(), order);
        Ok(AutSearch::Complete(group))
    }

    /// Looks for an automorphism in the subtree where `w` replaces the
    /// first-path choice at depth `d`.
    fn search_subtree(&mut self, d: usize, w: usize) -> Option<Permutation> {
        let mut node = self.path[d].clone();
        let single = node.individualize(w);
        let trace = self.refiner.refine(self.graph, &mut node, &[single]);
        if trace != self.traces[d + 1] || node.shape() != self.shapes[d + 1] {
            return None;
        }
        self.explore(node, d + 1)
    }

    fn explore(&mut self, node: WorkPartition, depth: usize) -> Option<Permutation> {
        if depth == self.targets.len() {
            debug_assert!(node.is_discrete());
            return self.leaf_automorphism(&node);
        }
        let target = self.targets[depth];
        let mut cell = node.cell(target).to_vec();
        cell.sort_unstable();
        for u in cell {
            let mut child = node.clone();
            let single = child.individualize(u);
            let trace = self.refiner.refine(self.graph, &mut child, &[single]);
            if trace != self.traces[depth + 1] || child.shape() != self.shapes[depth + 1] {
                continue;
            }
            if let Some(sigma) = self.explore(child, depth + 1) {
                return Some(sigma);
            }
        }
        None
    }
}

/// Largest digraph the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 10;

/// Exact automorphism group by trying every vertex permutation, with
/// partial assignments abandoned as soon as an arc or non-arc is violated.
pub fn brute_force_automorphisms(graph: &Digraph) -> Result<PermGroup> {
    let n = graph.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            nv: n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut group = PermGroup::trivial(n);
    let mut count: u128 = 0;
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_assignment(graph, 0, &mut images, &mut used, &mut |sigma| {
        count += 1;
        let p = Permutation::from_images_unchecked(sigma.to_vec());
        if !group.contains(&p).unwrap() {
            let mut gens = group.generators().to_vec();
            gens.push(p);
            group = PermGroup::new(n, gens).unwrap();
        }
    });
    debug_assert_eq!(group.order(), count);
    Ok(group)
}

fn extend_assignment(
    graph: &Digraph,
    i: usize,
    images: &mut [usize],
    used: &mut [bool],
    found: &mut dyn FnMut(&[usize]),
) {
    let n = images.len();
    if i == n {
        found(images);
        return;
    }
    for x in 0..n {
        if used[x] {
            continue;
        }
        let consistent = graph.has_arc(i, i) == graph.has_arc(x, x)
            && (0..i).all(|j| {
                graph.has_arc(i, j) == graph.has_arc(x, images[j])
                    && graph.has_arc(j, i) == graph.has_arc(images[j], x)
            });
        if consistent {
            images[i] = x;
            used[x] = true;
            extend_assignment(graph, i + 1, images, used, found);
            used[x] = false;
        }
    }
    images[i] = usize::MAX;
}
