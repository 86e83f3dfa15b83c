//! Ordered partitions and equitable refinement for digraphs.
//!
//! A cell is split by the pair (out-neighbours in the splitter, in-neighbours
//! in the splitter) of each of its vertices. Fragments are ordered by that
//! pair, so the outcome depends only on the digraph structure and the
//! incoming cell order, never on vertex labels.

use std::collections::VecDeque;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// An ordered list of disjoint cells covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            cells: if n == 0 {
                Vec::new()
            } else {
                vec![(0..n).collect()]
            },
        }
    }

    pub fn discrete(n: usize) -> Self {
        OrderedPartition {
            cells: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn from_cells(n: usize, mut cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for cell in &mut cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} repeated or out of range"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition(
                "cells do not cover every vertex".into(),
            ));
        }
        Ok(OrderedPartition { cells })
    }

    /// One cell per distinct colour, ordered by colour value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let mut keys: Vec<usize> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut cells = vec![Vec::new(); keys.len()];
        for (v, c) in colors.iter().enumerate() {
            cells[keys.binary_search(c).unwrap()].push(v);
        }
        OrderedPartition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn vertex_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Cell index of every vertex.
    pub fn cell_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.vertex_count()];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                index[v] = i;
            }
        }
        index
    }

    /// Direct check that every vertex of a cell has the same numbers of
    /// out- and in-neighbours in every cell.
    pub fn is_equitable(&self, graph: &Digraph) -> bool {
        let index = self.cell_index();
        let k = self.cells.len();
        let profile = |v: usize| {
            let mut counts = vec![(0usize, 0usize); k];
            for &w in graph.out_neighbors(v) {
                counts[index[w]].0 += 1;
            }
            for &w in graph.in_neighbors(v) {
                counts[index[w]].1 += 1;
            }
            counts
        };
        self.cells.iter().all(|cell| {
            let first = profile(cell[0]);
            cell[1..].iter().all(|&v| profile(v) == first)
        })
    }
}

/// Coarsest equitable refinement of `partition`.
pub fn refine(graph: &Digraph, partition: &OrderedPartition) -> Result<OrderedPartition> {
    if partition.vertex_count() != graph.vertex_count() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, digraph has {}",
            partition.vertex_count(),
            graph.vertex_count()
        )));
    }
    let mut work = Refiner::new(graph.vertex_count());
    let mut state = WorkPartition::from_ordered(partition);
    let all: Vec<usize> = state.cell_starts().collect();
    work.refine(graph, &mut state, &all);
    Ok(state.to_ordered())
}

/// Array-backed partition used inside the search: `lab` lists vertices cell
/// by cell, and a cell is identified by the position where it starts.
#[derive(Debug, Clone)]
pub(crate) struct WorkPartition {
    pub(crate) lab: Vec<usize>,
    pos: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Length of the cell starting at each start position; 0 elsewhere.
    cell_len: Vec<usize>,
    cell_count: usize,
}

impl WorkPartition {
    pub(crate) fn from_ordered(p: &OrderedPartition) -> Self {
        let n = p.vertex_count();
        let mut wp = WorkPartition {
            lab: Vec::with_capacity(n),
            pos: vec![0; n],
            cell_of: vec![0; n],
            cell_len: vec![0; n],
            cell_count: p.cells().len(),
        };
        for cell in p.cells() {
            let start = wp.lab.len();
            wp.cell_len[start] = cell.len();
            for &v in cell {
                wp.pos[v] = wp.lab.len();
                wp.cell_of[v] = start;
                wp.lab.push(v);
            }
        }
        wp
    }

    pub(crate) fn to_ordered(&self) -> OrderedPartition {
        let cells = self
            .cell_starts()
            .map(|s| {
                let mut c = self.lab[s..s + self.cell_len[s]].to_vec();
                c.sort_unstable();
                c
            })
            .collect();
        OrderedPartition { cells }
    }

    pub(crate) fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.lab.len() {
                return None;
            }
            let here = s;
            s += self.cell_len[s];
            Some(here)
        })
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cell_count == self.lab.len()
    }

    pub(crate) fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.cell_len[start]]
    }

    /// Cell lengths in order; equal shapes are a necessary condition for two
    /// search nodes to be related by an automorphism.
    pub(crate) fn shape(&self) -> Vec<usize> {
        self.cell_starts().map(|s| self.cell_len[s]).collect()
    }

    /// First largest non-singleton cell.
    pub(crate) fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.cell_starts() {
            let len = self.cell_len[s];
            if len > 1 && best.is_none_or(|b| len > self.cell_len[b]) {
                best = Some(s);
            }
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the singleton's start.
    pub(crate) fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let len = self.cell_len[start];
        debug_assert!(len > 1);
        let p = self.pos[v];
        let other = self.lab[start];
        self.lab.swap(start, p);
        self.pos[other] = p;
        self.pos[v] = start;
        self.cell_len[start] = 1;
        self.cell_len[start + 1] = len - 1;
        for q in start + 1..start + len {
            self.cell_of[self.lab[q]] = start + 1;
        }
        self.cell_count += 1;
        start
    }
}

/// Scratch space for refinement, reused across search nodes.
pub(crate) struct Refiner {
    out_into: Vec<u32>,
    in_into: Vec<u32>,
    touched: Vec<usize>,
    touched_cells: Vec<usize>,
    in_queue: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Refiner {
    pub(crate) fn new(n: usize) -> Self {
        Refiner {
            out_into: vec![0; n],
            in_into: vec![0; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Refines `p` using the given cells as initial splitters and returns a
    /// label-independent hash of the splitting trace.
    pub(crate) fn refine(
        &mut self,
        graph: &Digraph,
        p: &mut WorkPartition,
        splitters: &[usize],
    ) -> u64 {
        let mut trace = Trace::new();
        for &s in splitters {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                self.queue.push_back(s);
            }
        }
        while let Some(s) = self.queue.pop_front() {
            self.in_queue[s] = false;
            if p.is_discrete() {
                continue;
            }
            let splitter_len = p.cell_len[s];
            for i in s..s + splitter_len {
                let v = p.lab[i];
                for &w in graph.in_neighbors(v) {
                    if self.out_into[w] == 0 && self.in_into[w] == 0 {
                        self.touched.push(w);
                    }
                    self.out_into[w] += 1;
                }
                for &w in graph.out_neighbors(v) {
                    if self.out_into[w] == 0 && self.in_into[w] == 0 {
                        self.touched.push(w);
                    }
                    self.in_into[w] += 1;
                }
            }
            self.touched_cells.clear();
            for &w in &self.touched {
                let c = p.cell_of[w];
                if p.cell_len[c] > 1 {
                    self.touched_cells.push(c);
                }
            }
            self.touched_cells.sort_unstable();
            self.touched_cells.dedup();
            trace.mix(s as u64);
            for ci in 0..self.touched_cells.len() {
                let c = self.touched_cells[ci];
                self.split_cell(p, c, &mut trace);
            }
            for &w in &self.touched {
                self.out_into[w] = 0;
                self.in_into[w] = 0;
            }
            self.touched.clear();
        }
        trace.finish(p.cell_count as u64)
    }

    fn split_cell(&mut self, p: &mut WorkPartition, start: usize, trace: &mut Trace) {
        let len = p.cell_len[start];
        let (out_into, in_into) = (&self.out_into, &self.in_into);
        let key = |v: usize| (out_into[v], in_into[v]);
        let first = key(p.lab[start]);
        if p.lab[start..start + len].iter().all(|&v| key(v) == first) {
            return;
        }
        let mut slice: Vec<(_, usize)> = p.lab[start..start + len]
            .iter()
            .map(|&v| (key(v), v))
            .collect();
        slice.sort_unstable();
        let was_queued = self.in_queue[start];
        let mut frag_start = start;
        let mut fragments = Vec::new();
        for i in 0..len {
            let (k, v) = slice[i];
            let at = start + i;
            p.lab[at] = v;
            p.pos[v] = at;
            if i > 0 && k != slice[i - 1].0 {
                p.cell_len[frag_start] = at - frag_start;
                let prev = slice[i - 1].0;
                trace.mix(((at - frag_start) as u64) << 32 | prev.0 as u64);
                trace.mix(prev.1 as u64);
                fragments.push(frag_start);
                frag_start = at;
                p.cell_count += 1;
            }
            p.cell_of[v] = frag_start;
        }
        p.cell_len[frag_start] = start + len - frag_start;
        let last = slice[len - 1].0;
        trace.mix(((start + len - frag_start) as u64) << 32 | last.0 as u64);
        trace.mix(last.1 as u64);
        for f in fragments {
            self.enqueue(f, was_queued && f == start);
        }
        self.enqueue(frag_start, false);
    }

    fn enqueue(&mut self, start: usize, already: bool) {
        if !already && !self.in_queue[start] {
            self.in_queue[start] = true;
            self.queue.push_back(start);
        }
    }
}

/// FNV-style running hash of refinement events.
struct Trace(u64);

impl Trace {
    fn new() -> Self {
        Trace(0xcbf2_9ce4_8422_2325)
    }

    fn mix(&mut self, x: u64) {
        self.0 ^= x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        self.0 = self.0.wrapping_mul(0x0100_0000_01b3).rotate_left(29);
    }

    fn finish(mut self, x: u64) -> u64 {
        self.mix(x);
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_cycle_stays_unit() {
        let g = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let r = refine(&g, &OrderedPartition::unit(5)).unwrap();
        assert_eq!(r, OrderedPartition::unit(5));
    }

    #[test]
    fn sink_is_isolated() {
        // 0 -> 1 -> 2 -> 3 -> 1: vertex 0 has in-degree 0, and the rest form a 3-cycle.
        let g = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 1), (4, 4)]).unwrap();
        let r = refine(&g, &OrderedPartition::unit(5)).unwrap();
        assert!(r.is_equitable(&g));
        assert!(r.cells().iter().any(|c| c == &vec![0]));
    }

    #[test]
    fn refinement_is_idempotent_and_equitable() {
        let g = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (5, 0), (5, 3)])
            .unwrap();
        let once = refine(&g, &OrderedPartition::unit(6)).unwrap();
        assert!(once.is_equitable(&g));
        assert_eq!(refine(&g, &once).unwrap(), once);
    }

    #[test]
    fn partition_validation() {
        assert!(OrderedPartition::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(OrderedPartition::from_cells(3, vec![vec![0, 1]]).is_err());
        assert!(OrderedPartition::from_cells(3, vec![vec![2], vec![1, 0]]).is_ok());
        let p = OrderedPartition::from_colors(&[5, 1, 5, 3]);
        assert_eq!(p.cells(), &[vec![1], vec![3], vec![0, 2]]);
    }
}
