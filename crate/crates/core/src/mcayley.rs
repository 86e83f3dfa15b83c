//! m-Cayley digraphs `Cay(G, T_{i,j} : i, j ∈ Z_m)`.
//!
//! The vertex `g_i = (g, i)` has index `i·|G| + g`, so block `G_i` occupies
//! the contiguous range `i·|G| .. (i+1)·|G|`. An element `t ∈ T_{i,j}`
//! contributes the arcs `g_i → (t·g)_j` for every `g ∈ G`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::autgroup::{PermGroup, Permutation};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, FiniteGroup};

/// An `m × m` array of subsets of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionMatrix {
    m: usize,
    sets: Vec<ElementSet>,
}

/// `{"m": M, "sets": {"i,j": [elements]}}`; absent keys mean `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionMatrixJson {
    pub m: usize,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<Element>>,
}

impl ConnectionMatrix {
    pub fn empty(m: usize) -> Self {
        ConnectionMatrix {
            m,
            sets: vec![ElementSet::new(); m * m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &ElementSet {
        &self.sets[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, elements: impl IntoIterator<Item = Element>) {
        self.sets[i * self.m + j] = elements.into_iter().collect();
    }

    /// Adds elements to `T_{i,j}`.
    pub fn extend(&mut self, i: usize, j: usize, elements: impl IntoIterator<Item = Element>) {
        self.sets[i * self.m + j].extend(elements);
    }

    /// Non-empty cells as `((i, j), T_{i,j})`, row-major.
    pub fn nonempty(&self) -> impl Iterator<Item = ((usize, usize), &ElementSet)> {
        self.sets
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(move |(k, s)| ((k / self.m, k % self.m), s))
    }

    /// Every member is an element of a group of order `order`.
    pub fn check_elements(&self, order: usize) -> Result<()> {
        for s in &self.sets {
            if let Some(&e) = s.iter().find(|&&e| e >= order) {
                return Err(Error::ElementOutOfRange { element: e, order });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ConnectionMatrixJson {
        let sets = self
            .nonempty()
            .map(|((i, j), s)| (format!("{i},{j}"), s.iter().copied().collect()))
            .collect();
        ConnectionMatrixJson { m: self.m, sets }
    }

    pub fn from_json(json: &ConnectionMatrixJson) -> Result<Self> {
        if json.m == 0 {
            return Err(Error::Malformed("m must be positive".into()));
        }
        let mut t = ConnectionMatrix::empty(json.m);
        for (key, elements) in &json.sets {
            let parse = |s: &str| s.trim().parse::<usize>().ok();
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((parse(a)?, parse(b)?)))
                .filter(|&(i, j)| i < json.m && j < json.m)
                .ok_or_else(|| Error::Malformed(format!("bad cell key {key:?}")))?;
            t.extend(i, j, elements.iter().copied());
        }
        Ok(t)
    }
}

/// `T_{i,j} ∩ T_{j,i}⁻¹ = ∅` for every ordered pair `(i, j)`, diagonal
/// included. Equivalent to the built digraph having no loops or digons.
pub fn connection_is_oriented(group: &FiniteGroup, t: &ConnectionMatrix) -> bool {
    let m = t.m();
    (0..m).all(|i| {
        (i..m).all(|j| {
            let back = t.get(j, i);
            t.get(i, j).iter().all(|&s| !back.contains(&group.inv(s)))
        })
    })
}

/// Out-valency of each block (row sums of `|T_{i,j}|`) and in-valency of
/// each block (column sums).
pub fn valency_profile(t: &ConnectionMatrix) -> (Vec<usize>, Vec<usize>) {
    let m = t.m();
    let rows = (0..m)
        .map(|i| (0..m).map(|j| t.get(i, j).len()).sum())
        .collect();
    let cols = (0..m)
        .map(|j| (0..m).map(|i| t.get(i, j).len()).sum())
        .collect();
    (rows, cols)
}

/// True when every row and column sum equals `k`.
pub fn profile_is_k_regular(t: &ConnectionMatrix, k: usize) -> bool {
    let (rows, cols) = valency_profile(t);
    rows.iter().chain(&cols).all(|&s| s == k)
}

/// An m-Cayley digraph together with its group and connection sets.
#[derive(Debug, Clone)]
pub struct MCayleyDigraph {
    group: FiniteGroup,
    conn: ConnectionMatrix,
    graph: Digraph,
}

impl MCayleyDigraph {
    /// Vertex set `G × Z_m`, arcs `(g_i, (t·g)_j)` for `t ∈ T_{i,j}`.
    pub fn build(group: &FiniteGroup, conn: &ConnectionMatrix) -> Result<Self> {
        conn.check_elements(group.order())?;
        let n = group.order();
        let m = conn.m();
        let mut arcs = Vec::new();
        for ((i, j), set) in conn.nonempty() {
            for g in group.elements() {
                for &t in set {
                    arcs.push((i * n + g, j * n + group.mul(t, g)));
                }
            }
        }
        let graph = Digraph::from_arcs(n * m, arcs)?;
        Ok(MCayleyDigraph {
            group: group.clone(),
            conn: conn.clone(),
            graph,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn connection(&self) -> &ConnectionMatrix {
        &self.conn
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.conn.m()
    }

    /// Index of `g_i`.
    pub fn vertex(&self, g: Element, i: usize) -> usize {
        i * self.group.order() + g
    }

    /// `(g, i)` for a vertex index.
    pub fn label(&self, v: usize) -> (Element, usize) {
        (v % self.group.order(), v / self.group.order())
    }

    /// The blocks `G_0, …, G_{m-1}`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.group.order();
        (0..self.m())
            .map(|i| (i * n..(i + 1) * n).collect())
            .collect()
    }

    /// `R(g): x_i ↦ (x·g)_i`.
    pub fn right_translation(&self, g: Element) -> Result<Permutation> {
        let n = self.group.order();
        if g >= n {
            return Err(Error::ElementOutOfRange {
                element: g,
                order: n,
            });
        }
        let images = (0..n * self.m())
            .map(|v| {
                let (x, i) = self.label(v);
                i * n + self.group.mul(x, g)
            })
            .collect();
        Permutation::from_images(images)
    }

    /// `R(G) = {R(g) : g ∈ G}` as a permutation group on the vertices.
    pub fn regular_action_group(&self) -> PermGroup {
        let gens = self
            .group
            .elements()
            .skip(1)
            .map(|g| self.right_translation(g).unwrap())
            .collect();
        PermGroup::new(self.graph.vertex_count(), gens).unwrap()
    }

    /// Graphviz text with vertices labelled `g^k_i` (element `k`, block `i`).
    pub fn to_dot(&self) -> String {
        self.graph.to_dot("mcayley", |v| {
            let (g, i) = self.label(v);
            format!("g^{g}_{i}")
        })
    }
}
