//! Simple digraphs with sorted adjacency lists.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A digraph on vertices `0..nv` without parallel arcs. Loops are
/// representable (so that orientedness is a checkable property) but none of
/// the constructions produce them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    nv: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Adjacency JSON: `{"nv": N, "arcs": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub nv: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl Digraph {
    pub fn empty(nv: usize) -> Self {
        Digraph {
            nv,
            out_adj: vec![Vec::new(); nv],
            in_adj: vec![Vec::new(); nv],
        }
    }

    /// Builds a digraph from an arc list. Repeated arcs collapse to one.
    pub fn from_arcs(nv: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::empty(nv);
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= nv {
                    return Err(Error::VertexOutOfRange { vertex: w, nv });
                }
            }
            g.out_adj[u].push(v);
            g.in_adj[v].push(u);
        }
        for list in g.out_adj.iter_mut().chain(g.in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.nv).all(|v| self.out_degree(v) == k && self.in_degree(v) == k)
    }

    /// No loops and no digons.
    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| u != v && !self.has_arc(v, u))
    }

    /// Number of unordered pairs `{u, v}`, `u ≠ v`, joined in both directions.
    pub fn digon_count(&self) -> usize {
        self.arcs()
            .filter(|&(u, v)| u < v && self.has_arc(v, u))
            .count()
    }

    pub fn has_loop(&self) -> bool {
        (0..self.nv).any(|v| self.has_arc(v, v))
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_weakly_connected(&self) -> bool {
        if self.nv == 0 {
            return true;
        }
        let mut seen = vec![false; self.nv];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.out_adj[u].iter().chain(&self.in_adj[u]) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.nv
    }

    /// Every vertex reaches every other along arcs.
    pub fn is_strongly_connected(&self) -> bool {
        if self.nv == 0 {
            return true;
        }
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; self.nv];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(&self.out_adj) && reach(&self.in_adj)
    }

    /// `Γ[X]`, reindexed in increasing vertex order. The returned map sends
    /// new indices to the original vertices.
    pub fn induced_subdigraph(&self, set: &BTreeSet<usize>) -> Result<(Digraph, Vec<usize>)> {
        if let Some(&bad) = set.iter().find(|&&v| v >= self.nv) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                nv: self.nv,
            });
        }
        let map: Vec<usize> = set.iter().copied().collect();
        let mut new_index = vec![usize::MAX; self.nv];
        for (i, &v) in map.iter().enumerate() {
            new_index[v] = i;
        }
        let arcs = map.iter().enumerate().flat_map(|(i, &u)| {
            let new_index = &new_index;
            self.out_adj[u]
                .iter()
                .filter(move |&&w| new_index[w] != usize::MAX)
                .map(move |&w| (i, new_index[w]))
        });
        let sub = Digraph::from_arcs(map.len(), arcs.collect::<Vec<_>>())?;
        Ok((sub, map))
    }

    /// `Γ^{+k}(v)`: `{v}` for `k = 0`, otherwise the union of the
    /// out-neighbourhoods of `Γ^{+(k-1)}(v)`.
    pub fn iterated_out_neighborhood(&self, v: usize, k: usize) -> Result<BTreeSet<usize>> {
        if v >= self.nv {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                nv: self.nv,
            });
        }
        let mut current = BTreeSet::from([v]);
        for _ in 0..k {
            current = current
                .iter()
                .flat_map(|&u| self.out_adj[u].iter().copied())
                .collect();
        }
        Ok(current)
    }

    pub fn to_json(&self) -> AdjacencyJson {
        AdjacencyJson {
            nv: self.nv,
            arcs: self.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &AdjacencyJson) -> Result<Self> {
        Digraph::from_arcs(json.nv, json.arcs.iter().map(|&[u, v]| (u, v)))
    }

    /// Graphviz `digraph` text; vertices are labelled by `label`.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for v in 0..self.nv {
            writeln!(out, "  {v} [label=\"{}\"];", label(v)).unwrap();
        }
        for (u, v) in self.arcs() {
            writeln!(out, "  {u} -> {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
