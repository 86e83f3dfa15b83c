//! Structural checks on a candidate valency-3 connection table.

use serde::Serialize;

use super::literal::{LiteralTable, Relocation};
use crate::group::{Element, FiniteGroup};
use crate::mcayley::{valency_profile, ConnectionMatrix, MCayleyDigraph};

/// A reason a table cannot give an oriented 3-regular connected m-Cayley
/// digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ElementOutOfRange {
        element: Element,
    },
    RowSum {
        row: usize,
        sum: usize,
    },
    ColumnSum {
        column: usize,
        sum: usize,
    },
    /// `s ∈ T_{i,j}` with `s⁻¹ ∈ T_{j,i}`.
    NotOriented {
        from: usize,
        to: usize,
        element: Element,
    },
    Disconnected,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ElementOutOfRange { element } => write!(f, "element {element} out of range"),
            Violation::RowSum { row, sum } => write!(f, "row {row} sum = {sum}"),
            Violation::ColumnSum { column, sum } => write!(f, "column {column} sum = {sum}"),
            Violation::NotOriented { from, to, element } => {
                write!(
                    f,
                    "T_{{{from},{to}}} contains {element} whose inverse lies in T_{{{to},{from}}}"
                )
            }
            Violation::Disconnected => write!(f, "digraph is disconnected"),
        }
    }
}

/// All violations of: row and column sums 3, orientedness, and weak
/// connectivity of the built digraph. Empty means the table is valid.
pub fn validate_table(group: &FiniteGroup, t: &ConnectionMatrix) -> Vec<Violation> {
    let n = group.order();
    let mut out: Vec<Violation> = t
        .nonempty()
        .flat_map(|(_, s)| s.iter().copied())
        .filter(|&e| e >= n)
        .map(|element| Violation::ElementOutOfRange { element })
        .collect();
    if !out.is_empty() {
        out.sort_by_key(|v| match v {
            Violation::ElementOutOfRange { element } => *element,
            _ => 0,
        });
        out.dedup();
        return out;
    }

    let (rows, cols) = valency_profile(t);
    for (row, &sum) in rows.iter().enumerate().filter(|(_, &s)| s != 3) {
        out.push(Violation::RowSum { row, sum });
    }
    for (column, &sum) in cols.iter().enumerate().filter(|(_, &s)| s != 3) {
        out.push(Violation::ColumnSum { column, sum });
    }
    let m = t.m();
    for i in 0..m {
        for j in i..m {
            let back = t.get(j, i);
            for &s in t.get(i, j) {
                if back.contains(&group.inv(s)) {
                    out.push(Violation::NotOriented {
                        from: i,
                        to: j,
                        element: s,
                    });
                }
            }
        }
    }
    let connected = MCayleyDigraph::build(group, t)
        .map(|g| g.graph().is_weakly_connected())
        .unwrap_or(false);
    if !connected {
        out.push(Violation::Disconnected);
    }
    out
}

/// Every single-entry relocation of `table` that clears all violations.
pub fn single_entry_fixes(group: &FiniteGroup, table: &LiteralTable) -> Vec<Relocation> {
    table
        .single_relocations()
        .filter(|mv| validate_table(group, &table.relocated(&[*mv]).to_matrix()).is_empty())
        .collect()
}
