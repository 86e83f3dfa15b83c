//! Depth-first search over connection matrices, row by row, with column-sum
//! and orientation pruning. The depth-1 subtrees (choices of row 0) are
//! independent and may run in parallel; results are merged in branch order
//! so that the outcome does not depend on scheduling.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::rows::{enumerate_rows, inverse_mask, RowAssignment, MAX_SEARCH_GROUP_ORDER};
use crate::autgroup::{automorphism_group, automorphism_search, AutSearch};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mcayley::{ConnectionMatrix, ConnectionMatrixJson, MCayleyDigraph};

/// Default cap on the number of row combinations before pruning.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// The problem instance: connection matrices over `group` with `m` blocks
/// and valency `k`.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub group: FiniteGroup,
    pub m: usize,
    pub k: usize,
    pub require_oriented: bool,
    pub require_connected: bool,
}

impl SearchSpace {
    /// Valency 3, oriented, connectivity not required.
    pub fn new(group: FiniteGroup, m: usize) -> Self {
        SearchSpace {
            group,
            m,
            k: 3,
            require_oriented: true,
            require_connected: false,
        }
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor {
            group_order: self.group.order(),
            group_fingerprint: format!("{:016x}", self.group.fingerprint()),
            m: self.m,
            k: self.k,
            require_oriented: self.require_oriented,
            require_connected: self.require_connected,
        }
    }
}

/// Serializable identity of a [`SearchSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub group_order: usize,
    pub group_fingerprint: String,
    pub m: usize,
    pub k: usize,
    pub require_oriented: bool,
    pub require_connected: bool,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum row-combination estimate accepted.
    pub budget: u128,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    pub jobs: usize,
    /// Resume from and record progress to this file.
    pub checkpoint: Option<PathBuf>,
    /// Compute `|Aut|` exactly for every candidate instead of stopping as
    /// soon as it is known to exceed `|G|`.
    pub exact_histogram: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            jobs: 0,
            checkpoint: None,
            exact_histogram: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Found,
    Exhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounts {
    /// Complete matrices that survived pruning.
    pub candidates_tested: u64,
    /// Candidates dropped because the digraph is disconnected (only when
    /// connectivity is required).
    pub disconnected_skipped: u64,
    /// Exact `|Aut|` values seen.
    pub aut_order_histogram: BTreeMap<u64, u64>,
    /// Candidates whose search stopped once `|Aut| > |G|` was certain.
    pub above_group_order: u64,
}

impl SearchCounts {
    fn merge(&mut self, other: &SearchCounts) {
        self.candidates_tested += other.candidates_tested;
        self.disconnected_skipped += other.disconnected_skipped;
        self.above_group_order += other.above_group_order;
        for (&k, &v) in &other.aut_order_histogram {
            *self.aut_order_histogram.entry(k).or_default() += v;
        }
    }

    /// Every evaluated candidate is known to have `|Aut| > order`.
    pub fn all_above(&self, order: usize) -> bool {
        self.aut_order_histogram.keys().all(|&k| k > order as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<ConnectionMatrixJson>,
    #[serde(flatten)]
    pub counts: SearchCounts,
    /// Product of the per-row option counts.
    pub estimate: u128,
    pub branches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub space: SpaceDescriptor,
    pub exact_histogram: bool,
    pub last_completed_branch: Option<usize>,
    pub counts: SearchCounts,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map(Some)
                .map_err(|e| Error::Malformed(format!("checkpoint {}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Malformed(format!(
                "checkpoint {}: {e}",
                path.display()
            ))),
        }
    }

    fn store(&self, path: &Path) -> Result<()> {
        let io =
            |e: std::io::Error| Error::Malformed(format!("checkpoint {}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        std::fs::write(
            &tmp,
            serde_json::to_string_pretty(self).expect("serializable"),
        )
        .map_err(io)?;
        std::fs::rename(&tmp, path).map_err(io)
    }
}

struct Context<'a> {
    space: &'a SearchSpace,
    rows: Vec<Vec<RowAssignment>>,
    /// `inverses[i][r][j]` is the inverse set of cell `j` of row option `r`.
    inverses: Vec<Vec<Vec<u64>>>,
    /// `suffix_capacity[i][j]`: most that rows `i..m` can add to column `j`.
    suffix_capacity: Vec<Vec<usize>>,
    exact: bool,
}

impl<'a> Context<'a> {
    fn new(space: &'a SearchSpace, exact: bool) -> Result<Self> {
        let (g, m, k) = (&space.group, space.m, space.k);
        if g.order() > MAX_SEARCH_GROUP_ORDER {
            return Err(Error::Precondition(format!(
                "exhaustive search supports |G| <= {MAX_SEARCH_GROUP_ORDER}"
            )));
        }
        if m == 0 {
            return Err(Error::Precondition("m must be positive".into()));
        }
        let rows: Vec<Vec<RowAssignment>> = (0..m)
            .map(|i| enumerate_rows(g, m, k, i, space.require_oriented))
            .collect();
        let inverses = rows
            .iter()
            .map(|opts| {
                opts.iter()
                    .map(|r| r.cells.iter().map(|&c| inverse_mask(g, c)).collect())
                    .collect()
            })
            .collect();
        let cell_cap: Vec<Vec<usize>> = rows
            .iter()
            .map(|opts| {
                (0..m)
                    .map(|j| {
                        opts.iter()
                            .map(|r| r.cells[j].count_ones() as usize)
                            .max()
                            .unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        let mut suffix_capacity = vec![vec![0; m]; m + 1];
        for i in (0..m).rev() {
            for j in 0..m {
                suffix_capacity[i][j] = suffix_capacity[i + 1][j] + cell_cap[i][j];
            }
        }
        Ok(Context {
            space,
            rows,
            inverses,
            suffix_capacity,
            exact,
        })
    }

    fn estimate(&self) -> u128 {
        self.rows
            .iter()
            .fold(1u128, |acc, r| acc.saturating_mul(r.len() as u128))
    }

    fn matrix(&self, chosen: &[usize]) -> ConnectionMatrix {
        let m = self.space.m;
        let mut t = ConnectionMatrix::empty(m);
        for (i, &r) in chosen.iter().enumerate() {
            for j in 0..m {
                t.set(i, j, super::rows::bits(self.rows[i][r].cells[j]));
            }
        }
        t
    }

    /// Whether row option `r` can follow `chosen` in row `chosen.len()`.
    fn compatible(&self, chosen: &[usize], colsum: &[usize], r: usize) -> bool {
        let i = chosen.len();
        let row = &self.rows[i][r];
        let k = self.space.k;
        if row.sizes().zip(colsum).any(|(s, &c)| s + c > k) {
            return false;
        }
        if self.space.require_oriented {
            for (j, &rj) in chosen.iter().enumerate() {
                if row.cells[j] & self.inverses[j][rj][i] != 0 {
                    return false;
                }
            }
        }
        row.sizes()
            .zip(colsum)
            .enumerate()
            .all(|(j, (s, &c))| k - (s + c) <= self.suffix_capacity[i + 1][j])
    }

    fn evaluate(&self, t: &ConnectionMatrix, counts: &mut SearchCounts) -> bool {
        counts.candidates_tested += 1;
        let g = &self.space.group;
        let gamma = MCayleyDigraph::build(g, t).expect("elements in range");
        if self.space.require_connected && !gamma.graph().is_weakly_connected() {
            counts.disconnected_skipped += 1;
            return false;
        }
        let n = g.order() as u128;
        let order = if self.exact {
            Some(
                automorphism_group(gamma.graph(), None)
                    .expect("valid digraph")
                    .order(),
            )
        } else {
            match automorphism_search(gamma.graph(), None, Some(n)).expect("valid digraph") {
                AutSearch::Complete(a) => Some(a.order()),
                AutSearch::LimitExceeded { .. } => None,
            }
        };
        match order {
            Some(o) => {
                *counts
                    .aut_order_histogram
                    .entry(u64::try_from(o).unwrap_or(u64::MAX))
                    .or_default() += 1;
                o == n
            }
            None => {
                counts.above_group_order += 1;
                false
            }
        }
    }
}

#[derive(Debug, Default)]
struct BranchResult {
    counts: SearchCounts,
    witness: Option<ConnectionMatrix>,
    cancelled: bool,
}

struct Branch<'c, 'a> {
    ctx: &'c Context<'a>,
    chosen: Vec<usize>,
    colsum: Vec<usize>,
    result: BranchResult,
}

impl Branch<'_, '_> {
    fn dfs(&mut self, cancel: &dyn Fn() -> bool) {
        let m = self.ctx.space.m;
        if self.chosen.len() == m {
            let t = self.ctx.matrix(&self.chosen);
            if self.ctx.evaluate(&t, &mut self.result.counts) {
                self.result.witness = Some(t);
            }
            return;
        }
        if cancel() {
            self.result.cancelled = true;
            return;
        }
        let i = self.chosen.len();
        for r in 0..self.ctx.rows[i].len() {
            if !self.ctx.compatible(&self.chosen, &self.colsum, r) {
                continue;
            }
            self.push(r);
            self.dfs(cancel);
            self.pop();
            if self.result.witness.is_some() || self.result.cancelled {
                return;
            }
        }
    }

    fn push(&mut self, r: usize) {
        let i = self.chosen.len();
        for (c, s) in self.colsum.iter_mut().zip(self.ctx.rows[i][r].sizes()) {
            *c += s;
        }
        self.chosen.push(r);
    }

    fn pop(&mut self) {
        let r = self.chosen.pop().unwrap();
        let i = self.chosen.len();
        for (c, s) in self.colsum.iter_mut().zip(self.ctx.rows[i][r].sizes()) {
            *c -= s;
        }
    }
}

fn run_branch(ctx: &Context, b: usize, cancel: &dyn Fn() -> bool) -> BranchResult {
    let mut branch = Branch {
        ctx,
        chosen: Vec::with_capacity(ctx.space.m),
        colsum: vec![0; ctx.space.m],
        result: BranchResult::default(),
    };
    if ctx.compatible(&[], &branch.colsum, b) {
        branch.push(b);
        branch.dfs(cancel);
    }
    branch.result
}

/// Completed-prefix bookkeeping shared by the workers.
struct Progress<'p> {
    results: BTreeMap<usize, BranchResult>,
    prefix: usize,
    prefix_counts: SearchCounts,
    checkpoint: Option<(&'p Path, SpaceDescriptor, bool)>,
}

impl Progress<'_> {
    fn record(&mut self, b: usize, result: BranchResult) -> Result<()> {
        self.results.insert(b, result);
        let mut advanced = false;
        while let Some(r) = self.results.get(&self.prefix) {
            if r.witness.is_some() || r.cancelled {
                break;
            }
            let r = self.results.remove(&self.prefix).unwrap();
            self.prefix_counts.merge(&r.counts);
            self.prefix += 1;
            advanced = true;
        }
        if let (true, Some((path, space, exact))) = (advanced, &self.checkpoint) {
            Checkpoint {
                space: space.clone(),
                exact_histogram: *exact,
                last_completed_branch: Some(self.prefix - 1),
                counts: self.prefix_counts.clone(),
            }
            .store(path)?;
        }
        Ok(())
    }
}

/// Searches `space` for a matrix whose digraph has `|Aut| = |G|`.
///
/// Returns `FOUND` with the witness from the smallest depth-1 branch that
/// contains one (and its first witness in search order), otherwise
/// `EXHAUSTED`. Counts cover exactly the part of the tree searched up to
/// that witness, so the outcome is identical for any number of jobs.
pub fn exhaustive_search(space: &SearchSpace, options: &SearchOptions) -> Result<SearchOutcome> {
    let ctx = Context::new(space, options.exact_histogram)?;
    let estimate = ctx.estimate();
    if estimate > options.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: options.budget,
        });
    }
    let branches = ctx.rows[0].len();
    let descriptor = space.descriptor();

    let (start, initial) = match &options.checkpoint {
        Some(path) => match Checkpoint::load(path)? {
            Some(cp) => {
                if cp.space != descriptor || cp.exact_histogram != options.exact_histogram {
                    return Err(Error::Malformed(
                        "checkpoint belongs to a different search".into(),
                    ));
                }
                (cp.last_completed_branch.map_or(0, |b| b + 1), cp.counts)
            }
            None => (0, SearchCounts::default()),
        },
        None => (0, SearchCounts::default()),
    };

    let found = AtomicUsize::new(usize::MAX);
    let progress = Mutex::new(Progress {
        results: BTreeMap::new(),
        prefix: start,
        prefix_counts: initial,
        checkpoint: options
            .checkpoint
            .as_deref()
            .map(|p| (p, descriptor, options.exact_histogram)),
    });
    let work = |b: usize| -> Result<()> {
        let cancel = || found.load(Ordering::Relaxed) < b;
        let result = run_branch(&ctx, b, &cancel);
        if result.witness.is_some() {
            found.fetch_min(b, Ordering::Relaxed);
        }
        progress.lock().unwrap().record(b, result)
    };
    run_all(start..branches, options.jobs, &work)?;

    let mut progress = progress.into_inner().unwrap();
    let mut counts = progress.prefix_counts.clone();
    let witness_branch = found.into_inner();
    let (status, witness) = if witness_branch == usize::MAX {
        (SearchStatus::Exhausted, None)
    } else {
        let r = progress
            .results
            .remove(&witness_branch)
            .expect("witness branch recorded");
        counts.merge(&r.counts);
        (SearchStatus::Found, r.witness)
    };
    Ok(SearchOutcome {
        status,
        witness: witness.map(|t| t.to_json()),
        counts,
        estimate,
        branches,
    })
}

fn run_all(
    range: std::ops::Range<usize>,
    jobs: usize,
    work: &(dyn Fn(usize) -> Result<()> + Sync),
) -> Result<()> {
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        return pool.install(|| range.into_par_iter().try_for_each(work));
    }
    let _ = jobs;
    range.into_iter().try_for_each(work)
}

/// Every complete matrix of `space` that satisfies the row, column and
/// orientation constraints, found with pruning (`pruned = true`) or by
/// filtering the full product of legal rows.
pub fn enumerate_candidates(
    space: &SearchSpace,
    pruned: bool,
    budget: u128,
) -> Result<Vec<ConnectionMatrix>> {
    let ctx = Context::new(space, false)?;
    let estimate = ctx.estimate();
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let m = space.m;
    let mut out = Vec::new();
    if pruned {
        fn go(
            ctx: &Context,
            chosen: &mut Vec<usize>,
            colsum: &mut Vec<usize>,
            out: &mut Vec<ConnectionMatrix>,
        ) {
            let i = chosen.len();
            if i == ctx.space.m {
                out.push(ctx.matrix(chosen));
                return;
            }
            for r in 0..ctx.rows[i].len() {
                if ctx.compatible(chosen, colsum, r) {
                    let sizes: Vec<usize> = ctx.rows[i][r].sizes().collect();
                    colsum.iter_mut().zip(&sizes).for_each(|(c, s)| *c += s);
                    chosen.push(r);
                    go(ctx, chosen, colsum, out);
                    chosen.pop();
                    colsum.iter_mut().zip(&sizes).for_each(|(c, s)| *c -= s);
                }
            }
        }
        go(&ctx, &mut Vec::new(), &mut vec![0; m], &mut out);
    } else {
        let mut idx = vec![0usize; m];
        if ctx.rows.iter().any(|r| r.is_empty()) {
            return Ok(out);
        }
        loop {
            let t = ctx.matrix(&idx);
            if crate::mcayley::profile_is_k_regular(&t, space.k)
                && (!space.require_oriented
                    || crate::mcayley::connection_is_oriented(&space.group, &t))
            {
                out.push(t);
            }
            let mut pos = m;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < ctx.rows[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    Ok(out)
}
