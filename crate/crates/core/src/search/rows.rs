//! Legal rows of a connection matrix, as per-cell bitmasks over the group.

use crate::group::FiniteGroup;

/// Largest group order the bitmask search supports.
pub const MAX_SEARCH_GROUP_ORDER: usize = 64;

/// One row `(T_{i,0}, …, T_{i,m-1})`, each cell a bitmask of elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowAssignment {
    pub cells: Vec<u64>,
}

impl RowAssignment {
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|c| c.count_ones() as usize)
    }
}

pub(crate) fn inverse_mask(group: &FiniteGroup, mask: u64) -> u64 {
    bits(mask).fold(0, |acc, e| acc | 1 << group.inv(e))
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Subsets of `0..n` with at most `k` elements, in increasing numeric order
/// of their bitmask.
pub(crate) fn small_subsets(n: usize, k: usize) -> Vec<u64> {
    fn go(n: usize, k: usize, from: usize, acc: u64, out: &mut Vec<u64>) {
        out.push(acc);
        if k == 0 {
            return;
        }
        for b in from..n {
            go(n, k - 1, b + 1, acc | 1 << b, out);
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, 0, &mut out);
    out.sort_unstable();
    out
}

/// A subset is allowed on the diagonal when it avoids the identity and,
/// for oriented spaces, meets its own inverse set trivially.
pub(crate) fn diagonal_allowed(group: &FiniteGroup, mask: u64, oriented: bool) -> bool {
    if mask & 1 != 0 {
        return false;
    }
    !oriented || mask & inverse_mask(group, mask) == 0
}

/// Every row `i` with `Σ_j |T_{i,j}| = k` and an allowed diagonal cell,
/// ordered cell by cell (left to right) and by bitmask within a cell.
pub fn enumerate_rows(
    group: &FiniteGroup,
    m: usize,
    k: usize,
    row: usize,
    oriented: bool,
) -> Vec<RowAssignment> {
    assert!(
        group.order() <= MAX_SEARCH_GROUP_ORDER,
        "group too large for bitmask search"
    );
    let subsets = small_subsets(group.order(), k);
    let diagonal: Vec<u64> = subsets
        .iter()
        .copied()
        .filter(|&s| diagonal_allowed(group, s, oriented))
        .collect();
    let mut out = Vec::new();
    let mut cells = vec![0u64; m];
    fill(&subsets, &diagonal, row, 0, k, &mut cells, &mut out);
    out
}

fn fill(
    subsets: &[u64],
    diagonal: &[u64],
    row: usize,
    j: usize,
    remaining: usize,
    cells: &mut Vec<u64>,
    out: &mut Vec<RowAssignment>,
) {
    if j == cells.len() {
        if remaining == 0 {
            out.push(RowAssignment {
                cells: cells.clone(),
            });
        }
        return;
    }
    let options = if j == row { diagonal } else { subsets };
    for &s in options {
        let size = s.count_ones() as usize;
        if size <= remaining {
            cells[j] = s;
            fill(subsets, diagonal, row, j + 1, remaining - size, cells, out);
        }
    }
    cells[j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_row_counts() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        for i in 0..4 {
            let rows = enumerate_rows(&z2, 4, 3, i, true);
            assert_eq!(rows.len(), 20);
            assert!(rows.iter().all(|r| r.cells[i] == 0));
        }
        assert!(enumerate_rows(&z2, 2, 3, 0, true).is_empty());
    }

    #[test]
    fn zero_valency_gives_the_empty_row() {
        let g = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(
            enumerate_rows(&g, 3, 0, 1, true),
            vec![RowAssignment { cells: vec![0; 3] }]
        );
    }

    #[test]
    fn order_is_cell_major_then_bitmask() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let rows = enumerate_rows(&g, 2, 3, 0, true);
        let mut sorted = rows.clone();
        sorted.sort();
        assert_eq!(rows, sorted);
        // Diagonal of Z3 can hold {1} or {2} but not both and not the identity.
        assert!(rows.iter().all(|r| [0, 0b010, 0b100].contains(&r.cells[0])));
    }

    #[test]
    fn subsets_and_inverses() {
        assert_eq!(small_subsets(3, 1), vec![0, 1, 2, 4]);
        assert_eq!(small_subsets(4, 4).len(), 16);
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(inverse_mask(&z5, 0b00110), 0b11000);
        assert_eq!(bits(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
