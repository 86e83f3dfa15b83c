//! Connection tables kept as the ordered list of printed entries, so that
//! individual entries can be moved to another cell and re-checked.

use serde::Serialize;

use crate::group::{Element, ElementSet};
use crate::mcayley::ConnectionMatrix;

/// One printed assignment `T_{i,j} = set`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralEntry {
    pub cell: (usize, usize),
    pub set: ElementSet,
}

impl LiteralEntry {
    pub fn new(cell: (usize, usize), set: impl IntoIterator<Item = Element>) -> Self {
        LiteralEntry {
            cell,
            set: set.into_iter().collect(),
        }
    }
}

/// Moves entry number `entry` to cell `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relocation {
    pub entry: usize,
    pub to: (usize, usize),
}

/// An `m × m` table as a list of entries. Entries naming the same cell are
/// merged by union, and unlisted cells are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralTable {
    pub m: usize,
    pub entries: Vec<LiteralEntry>,
}

impl LiteralTable {
    pub fn new(m: usize) -> Self {
        LiteralTable {
            m,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, cell: (usize, usize), set: impl IntoIterator<Item = Element>) -> usize {
        self.entries.push(LiteralEntry::new(cell, set));
        self.entries.len() - 1
    }

    pub fn to_matrix(&self) -> ConnectionMatrix {
        let mut t = ConnectionMatrix::empty(self.m);
        for e in &self.entries {
            t.extend(e.cell.0, e.cell.1, e.set.iter().copied());
        }
        t
    }

    /// A copy with the given entries moved.
    pub fn relocated(&self, moves: &[Relocation]) -> LiteralTable {
        let mut out = self.clone();
        for mv in moves {
            out.entries[mv.entry].cell = mv.to;
        }
        out
    }

    /// Every move of a single entry to a different cell, row-major by
    /// entry then target cell.
    pub fn single_relocations(&self) -> impl Iterator<Item = Relocation> + '_ {
        let m = self.m;
        self.entries.iter().enumerate().flat_map(move |(k, e)| {
            (0..m * m)
                .map(move |c| (c / m, c % m))
                .filter(move |&to| to != e.cell)
                .map(move |to| Relocation { entry: k, to })
        })
    }
}
