//! Connection tables over `Z₂ = {1, x}` for `5 ≤ m ≤ 10`, kept exactly as
//! originally printed, plus the subscript corrections applied on top.
//!
//! Each table lists the cells holding `{1}` and the cells holding `{x}`.

use super::literal::{LiteralEntry, LiteralTable, Relocation};

const ONE: usize = 0;
const X: usize = 1;

type Printed = (usize, &'static [(usize, usize)], &'static [(usize, usize)]);

const PRINTED: [Printed; 6] = [
    (
        5,
        &[
            (0, 1),
            (0, 3),
            (2, 0),
            (2, 1),
            (2, 4),
            (3, 1),
            (3, 2),
            (3, 4),
            (4, 1),
        ],
        &[(1, 0), (1, 2), (1, 3), (1, 4), (4, 3), (4, 2)],
    ),
    (
        6,
        &[
            (1, 0),
            (0, 3),
            (0, 5),
            (1, 4),
            (2, 0),
            (2, 3),
            (2, 5),
            (3, 1),
            (4, 3),
            (5, 4),
        ],
        &[
            (1, 0),
            (1, 2),
            (3, 2),
            (3, 4),
            (4, 1),
            (4, 5),
            (5, 0),
            (5, 2),
        ],
    ),
    (
        7,
        &[
            (0, 1),
            (2, 1),
            (2, 0),
            (2, 5),
            (3, 1),
            (3, 2),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 4),
            (6, 0),
        ],
        &[
            (0, 6),
            (0, 3),
            (1, 0),
            (1, 2),
            (1, 3),
            (4, 3),
            (4, 6),
            (5, 2),
            (5, 4),
            (6, 5),
        ],
    ),
    (
        8,
        &[
            (0, 1),
            (1, 5),
            (2, 0),
            (2, 3),
            (2, 5),
            (3, 1),
            (3, 4),
            (4, 6),
            (5, 6),
            (6, 7),
            (7, 4),
            (7, 0),
        ],
        &[
            (0, 3),
            (0, 7),
            (1, 0),
            (1, 2),
            (3, 2),
            (4, 3),
            (4, 7),
            (5, 1),
            (5, 2),
            (6, 4),
            (6, 5),
            (7, 6),
        ],
    ),
    (
        9,
        &[
            (0, 1),
            (2, 0),
            (2, 1),
            (2, 5),
            (3, 1),
            (3, 2),
            (3, 4),
            (4, 6),
            (5, 6),
            (5, 7),
            (6, 7),
            (7, 8),
            (8, 0),
            (8, 1),
        ],
        &[
            (0, 3),
            (0, 8),
            (1, 0),
            (1, 2),
            (1, 3),
            (4, 3),
            (4, 8),
            (5, 2),
            (6, 4),
            (6, 5),
            (7, 5),
            (7, 6),
            (8, 7),
        ],
    ),
    (
        10,
        &[
            (0, 1),
            (1, 4),
            (2, 0),
            (2, 3),
            (2, 5),
            (3, 1),
            (3, 4),
            (5, 6),
            (5, 7),
            (6, 7),
            (6, 8),
            (7, 8),
            (8, 9),
            (9, 4),
            (9, 0),
        ],
        &[
            (0, 3),
            (0, 9),
            (1, 0),
            (1, 2),
            (3, 2),
            (4, 1),
            (4, 3),
            (4, 9),
            (5, 2),
            (6, 5),
            (7, 5),
            (7, 6),
            (8, 6),
            (8, 7),
            (9, 8),
        ],
    ),
];

/// The table for `m` as printed; `None` outside `5..=10`.
pub fn printed(m: usize) -> Option<LiteralTable> {
    let (_, ones, xs) = PRINTED.iter().find(|(mm, _, _)| *mm == m)?;
    let entries = ones
        .iter()
        .map(|&cell| LiteralEntry::new(cell, [ONE]))
        .chain(xs.iter().map(|&cell| LiteralEntry::new(cell, [X])))
        .collect();
    Some(LiteralTable { m, entries })
}

/// Subscript corrections applied to the printed table for `m`. Entry
/// indices count the `{1}` list first, then the `{x}` list.
pub fn corrections(m: usize) -> Vec<Relocation> {
    match m {
        // T_{4,1} = {1} belongs in T_{4,0}; T_{1,4} = {x} belongs in T_{0,4}.
        5 => vec![
            Relocation {
                entry: 8,
                to: (4, 0),
            },
            Relocation {
                entry: 12,
                to: (0, 4),
            },
        ],
        // The {1}-list opens with a second T_{1,0}; it is T_{0,1}.
        6 => vec![Relocation {
            entry: 0,
            to: (0, 1),
        }],
        // T_{8,1} = {1} belongs in T_{8,4}.
        9 => vec![Relocation {
            entry: 13,
            to: (8, 4),
        }],
        _ => Vec::new(),
    }
}

/// The corrected table for `m`.
pub fn corrected(m: usize) -> Option<LiteralTable> {
    Some(printed(m)?.relocated(&corrections(m)))
}
