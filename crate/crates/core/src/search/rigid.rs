//! Exploratory search for k-regular digraphs with trivial automorphism
//! group (the `|G| = 1` case, where existence is an open question).
//! Outcomes are evidence only and are always marked exploratory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autgroup::{
    automorphism_search, brute_force_automorphisms, AutSearch, BRUTE_FORCE_MAX_VERTICES,
};
use crate::digraph::{AdjacencyJson, Digraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ExploreMode {
    /// Every 0/1 matrix with row and column sums `k`, keeping only those
    /// that are lexicographically maximal under vertex transpositions.
    Exhaustive,
    /// A random walk of arc switches starting from a circulant; one sample
    /// is tested after every `steps` switches.
    Randomized { seed: u64, steps: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreOptions {
    pub n: usize,
    pub k: usize,
    pub oriented: bool,
    pub mode: ExploreMode,
    /// Search-tree nodes (exhaustive) or samples (randomized).
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExploreStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

/// `|Aut|` of a witness by the refinement engine and, for small digraphs,
/// by brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityCheck {
    pub engine_order: u128,
    pub brute_force_order: Option<u128>,
}

impl RigidityCheck {
    pub fn of(graph: &Digraph) -> Result<Self> {
        let engine_order = crate::autgroup::automorphism_group(graph, None)?.order();
        let brute_force_order = if graph.vertex_count() <= BRUTE_FORCE_MAX_VERTICES {
            Some(brute_force_automorphisms(graph)?.order())
        } else {
            None
        };
        Ok(RigidityCheck {
            engine_order,
            brute_force_order,
        })
    }

    pub fn is_rigid(&self) -> bool {
        self.engine_order == 1 && self.brute_force_order.is_none_or(|o| o == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreOutcome {
    /// Always true: these results carry no ground truth.
    pub exploratory: bool,
    pub options: ExploreOptions,
    pub status: ExploreStatus,
    pub witness: Option<AdjacencyJson>,
    pub check: Option<RigidityCheck>,
    pub digraphs_tested: u64,
    pub work: u64,
}

fn is_rigid_fast(graph: &Digraph) -> Result<bool> {
    Ok(
        matches!(automorphism_search(graph, None, Some(1))?, AutSearch::Complete(a) if a.order() == 1),
    )
}

/// Looks for a `k`-regular digraph on `n` vertices (loop-free, and
/// digon-free when `oriented`) with trivial automorphism group.
pub fn search_trivial_aut_digraph(options: &ExploreOptions) -> Result<ExploreOutcome> {
    let n = options.n;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if n > 64 {
        return Err(Error::TooManyVertices { nv: n, max: 64 });
    }
    let (status, witness, tested, work) = match options.mode {
        ExploreMode::Exhaustive => Exhaustive::run(options)?,
        ExploreMode::Randomized { seed, steps } => randomized(options, seed, steps)?,
    };
    let check = witness.as_ref().map(RigidityCheck::of).transpose()?;
    Ok(ExploreOutcome {
        exploratory: true,
        options: *options,
        status,
        witness: witness.map(|g| g.to_json()),
        check,
        digraphs_tested: tested,
        work,
    })
}

fn rows_to_digraph(rows: &[u64]) -> Digraph {
    let arcs = rows
        .iter()
        .enumerate()
        .flat_map(|(u, &r)| super::rows::bits(r).map(move |v| (u, v)));
    Digraph::from_arcs(rows.len(), arcs.collect::<Vec<_>>()).expect("arcs in range")
}

/// Image of the adjacency rows under swapping vertices `a` and `b`.
fn swapped(rows: &[u64], a: usize, b: usize) -> Vec<u64> {
    let swap_bits = |r: u64| {
        let (ba, bb) = ((r >> a) & 1, (r >> b) & 1);
        (r & !(1 << a) & !(1 << b)) | (ba << b) | (bb << a)
    };
    let mut out: Vec<u64> = rows.iter().map(|&r| swap_bits(r)).collect();
    out.swap(a, b);
    out
}

fn is_transposition_leader(rows: &[u64]) -> bool {
    let n = rows.len();
    (0..n).all(|a| (a + 1..n).all(|b| swapped(rows, a, b).as_slice() <= rows))
}

struct Exhaustive<'o> {
    options: &'o ExploreOptions,
    options_per_row: Vec<Vec<u64>>,
    rows: Vec<u64>,
    colsum: Vec<usize>,
    nodes: u64,
    tested: u64,
    witness: Option<Digraph>,
    out_of_budget: bool,
}

impl<'o> Exhaustive<'o> {
    fn run(options: &'o ExploreOptions) -> Result<(ExploreStatus, Option<Digraph>, u64, u64)> {
        let (n, k) = (options.n, options.k);
        let all = super::rows::small_subsets(n, k);
        let options_per_row = (0..n)
            .map(|i| {
                all.iter()
                    .copied()
                    .filter(|&s| s.count_ones() as usize == k && s & (1 << i) == 0)
                    .collect()
            })
            .collect();
        let mut search = Exhaustive {
            options,
            options_per_row,
            rows: Vec::with_capacity(n),
            colsum: vec![0; n],
            nodes: 0,
            tested: 0,
            witness: None,
            out_of_budget: false,
        };
        search.dfs()?;
        let status = if search.witness.is_some() {
            ExploreStatus::Found
        } else if search.out_of_budget {
            ExploreStatus::BudgetExceeded
        } else {
            ExploreStatus::Exhausted
        };
        Ok((status, search.witness, search.tested, search.nodes))
    }

    fn dfs(&mut self) -> Result<()> {
        let (n, k) = (self.options.n, self.options.k);
        self.nodes += 1;
        if self.nodes > self.options.budget {
            self.out_of_budget = true;
            return Ok(());
        }
        let i = self.rows.len();
        if i == n {
            if is_transposition_leader(&self.rows) {
                self.tested += 1;
                let graph = rows_to_digraph(&self.rows);
                if is_rigid_fast(&graph)? {
                    self.witness = Some(graph);
                }
            }
            return Ok(());
        }
        for idx in 0..self.options_per_row[i].len() {
            let r = self.options_per_row[i][idx];
            if !self.fits(i, r) {
                continue;
            }
            self.rows.push(r);
            super::rows::bits(r).for_each(|j| self.colsum[j] += 1);
            let remaining = n - i - 1;
            let feasible = (0..n).all(|j| {
                let later_rows = remaining - usize::from(j > i);
                k - self.colsum[j] <= later_rows
            });
            if feasible {
                self.dfs()?;
            }
            super::rows::bits(r).for_each(|j| self.colsum[j] -= 1);
            self.rows.pop();
            if self.witness.is_some() || self.out_of_budget {
                break;
            }
        }
        Ok(())
    }

    fn fits(&self, i: usize, r: u64) -> bool {
        if super::rows::bits(r).any(|j| self.colsum[j] >= self.options.k) {
            return false;
        }
        !self.options.oriented
            || self
                .rows
                .iter()
                .enumerate()
                .all(|(j, &rj)| !((r >> j) & 1 == 1 && (rj >> i) & 1 == 1))
    }
}

fn randomized(
    options: &ExploreOptions,
    seed: u64,
    steps: usize,
) -> Result<(ExploreStatus, Option<Digraph>, u64, u64)> {
    let (n, k, oriented) = (options.n, options.k, options.oriented);
    let needed = if oriented { 2 * k + 1 } else { k + 1 };
    if n < needed {
        return Err(Error::Precondition(format!(
            "randomized mode needs n >= {needed} for the seed circulant"
        )));
    }
    let mut adj = vec![0u64; n];
    let mut arcs = Vec::with_capacity(n * k);
    for (u, row) in adj.iter_mut().enumerate() {
        for s in 1..=k {
            let v = (u + s) % n;
            *row |= 1 << v;
            arcs.push((u, v));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut switches = 0u64;
    for sample in 0..options.budget {
        let mut done = 0;
        let mut attempts = 0;
        while done < steps.max(1) && attempts < 1000 * steps.max(1) && !arcs.is_empty() {
            attempts += 1;
            let (x, y) = (rng.gen_range(0..arcs.len()), rng.gen_range(0..arcs.len()));
            let ((a, b), (c, d)) = (arcs[x], arcs[y]);
            let has = |u: usize, v: usize| (adj[u] >> v) & 1 == 1;
            if a == c || b == d || a == d || c == b || has(a, d) || has(c, b) {
                continue;
            }
            if oriented && (has(d, a) || has(b, c)) {
                continue;
            }
            adj[a] ^= (1 << b) | (1 << d);
            adj[c] ^= (1 << d) | (1 << b);
            arcs[x] = (a, d);
            arcs[y] = (c, b);
            done += 1;
        }
        switches += done as u64;
        let graph = rows_to_digraph(&adj);
        if is_rigid_fast(&graph)? {
            return Ok((ExploreStatus::Found, Some(graph), sample + 1, switches));
        }
    }
    Ok((
        ExploreStatus::BudgetExceeded,
        None,
        options.budget,
        switches,
    ))
}
