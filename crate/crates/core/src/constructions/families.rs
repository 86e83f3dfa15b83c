//! The valency-3 connection tables, one function per family.
//!
//! Inverses and powers are always computed in the group, so the cyclic
//! families work for any generator order.

use super::literal::{LiteralTable, Relocation};
use super::z2_tables;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GeneratorSpec};
use crate::mcayley::ConnectionMatrix;

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn require_z2(group: &FiniteGroup) -> Result<()> {
    require(group.order() == 2, "group must be Z2")
}

fn require_klein(group: &FiniteGroup, spec: &GeneratorSpec) -> Result<(usize, usize)> {
    require(group.is_klein_four(), "group must be Z2 x Z2")?;
    let y = spec
        .y
        .ok_or_else(|| Error::Precondition("Z2 x Z2 needs generators x and y".into()))?;
    require(spec.generates(group), "x and y must generate the group")?;
    Ok((spec.x, y))
}

/// The tables for `Z₂` and `5 ≤ m ≤ 10`, with the subscript corrections.
pub fn z2_table(group: &FiniteGroup, m: usize) -> Result<ConnectionMatrix> {
    require_z2(group)?;
    z2_tables::corrected(m)
        .map(|t| t.to_matrix())
        .ok_or_else(|| Error::Precondition(format!("Z2 tables cover 5 <= m <= 10, got m = {m}")))
}

/// `Z₂`, `m ≥ 11`: `T_{i,i+1} = {1}`, `T_{i,i-2} = {1,x}` except that rows
/// 2 and 7 use `T_{2,5} = T_{7,0} = {1,x}`.
pub fn z2_general(group: &FiniteGroup, m: usize) -> Result<ConnectionMatrix> {
    require_z2(group)?;
    require(m >= 11, "Z2 general family needs m >= 11")?;
    let (one, x) = (group.identity(), 1);
    let mut t = ConnectionMatrix::empty(m);
    for i in 0..m {
        t.set(i, (i + 1) % m, [one]);
        let j = match i {
            2 => 5,
            7 => 0,
            _ => (i + m - 2) % m,
        };
        t.set(i, j, [one, x]);
    }
    Ok(t)
}

/// Cyclic `G = ⟨x⟩`, `o(x) ≥ 5`, `m = 2`.
pub fn cyclic_m2(group: &FiniteGroup, spec: &GeneratorSpec) -> Result<ConnectionMatrix> {
    let x = spec.x;
    require(
        group.element_order(x) == group.order(),
        "x must generate the group",
    )?;
    require(group.order() >= 5, "cyclic m = 2 family needs o(x) >= 5")?;
    let p = |k| group.pow(x, k);
    let mut t = ConnectionMatrix::empty(2);
    t.set(0, 0, [p(1), p(2)]);
    t.set(0, 1, [group.identity()]);
    t.set(1, 1, [p(-1), p(-2)]);
    t.set(1, 0, [p(1)]);
    Ok(t)
}

/// The cyclic `m ≥ 3` table as originally printed, whose last entry is
/// `T_{m-1,1} = {x, x⁻¹}`.
pub fn cyclic_general_printed(
    group: &FiniteGroup,
    spec: &GeneratorSpec,
    m: usize,
) -> Result<LiteralTable> {
    let x = spec.x;
    require(
        group.element_order(x) == group.order(),
        "x must generate the group",
    )?;
    require(group.order() >= 3, "cyclic general family needs o(x) >= 3")?;
    require(m >= 3, "cyclic general family needs m >= 3")?;
    let (one, xi) = (group.identity(), group.inv(x));
    let mut t = LiteralTable::new(m);
    t.push((0, 0), [x]);
    for i in 1..m {
        t.push((i, i), [xi]);
    }
    for i in 0..m - 1 {
        t.push((i, i + 1), [one, xi]);
    }
    t.push((m - 1, 1), [x, xi]);
    Ok(t)
}

/// The correction for [`cyclic_general_printed`]: the last entry belongs
/// in `T_{m-1,0}`.
pub fn cyclic_general_correction(table: &LiteralTable) -> Relocation {
    Relocation {
        entry: table.entries.len() - 1,
        to: (table.m - 1, 0),
    }
}

/// Cyclic `G = ⟨x⟩`, `o(x) ≥ 3`, `m ≥ 3`.
pub fn cyclic_general(
    group: &FiniteGroup,
    spec: &GeneratorSpec,
    m: usize,
) -> Result<ConnectionMatrix> {
    let printed = cyclic_general_printed(group, spec, m)?;
    Ok(printed
        .relocated(&[cyclic_general_correction(&printed)])
        .to_matrix())
}

/// `Z₂²`, `m = 3`.
pub fn klein_m3(group: &FiniteGroup, spec: &GeneratorSpec) -> Result<ConnectionMatrix> {
    let (x, y) = require_klein(group, spec)?;
    let (one, xy) = (group.identity(), group.mul(x, y));
    let mut t = ConnectionMatrix::empty(3);
    t.set(0, 1, [one]);
    t.set(0, 2, [xy, x]);
    t.set(1, 0, [x, y]);
    t.set(1, 2, [one]);
    t.set(2, 0, [y]);
    t.set(2, 1, [x, y]);
    Ok(t)
}

/// `Z₂²`, `m = 4`.
pub fn klein_m4(group: &FiniteGroup, spec: &GeneratorSpec) -> Result<ConnectionMatrix> {
    let (x, y) = require_klein(group, spec)?;
    let (one, xy) = (group.identity(), group.mul(x, y));
    let mut t = ConnectionMatrix::empty(4);
    t.set(0, 1, [one, x]);
    t.set(0, 2, [xy]);
    t.set(1, 0, [y]);
    t.set(1, 3, [one, y]);
    t.set(2, 0, [one, x]);
    t.set(2, 3, [x]);
    t.set(3, 1, [x]);
    t.set(3, 2, [one, y]);
    Ok(t)
}

/// `Z₂²`, `m ≥ 5`: `T_{0,1} = {y}`, `T_{i,i+1} = {1}` for `i ≠ 0`,
/// `T_{i,i-2} = {1,x}`.
pub fn klein_general(
    group: &FiniteGroup,
    spec: &GeneratorSpec,
    m: usize,
) -> Result<ConnectionMatrix> {
    let (x, y) = require_klein(group, spec)?;
    require(m >= 5, "Z2 x Z2 general family needs m >= 5")?;
    let one = group.identity();
    let mut t = ConnectionMatrix::empty(m);
    t.set(0, 1, [y]);
    for i in 1..m {
        t.set(i, (i + 1) % m, [one]);
    }
    for i in 0..m {
        t.set(i, (i + m - 2) % m, [one, x]);
    }
    Ok(t)
}

fn check_two_generated(group: &FiniteGroup, spec: &GeneratorSpec, m: usize) -> Result<usize> {
    let y = spec
        .y
        .ok_or_else(|| Error::Precondition("two-generated family needs x and y".into()))?;
    require(spec.generates(group), "x and y must generate the group")?;
    require(
        group.element_order(spec.x) != group.order(),
        "x alone must not generate the group",
    )?;
    require(!group.is_klein_four(), "group must not be Z2 x Z2")?;
    require(
        group.element_order(spec.x) >= 3,
        "two-generated family needs o(x) >= 3",
    )?;
    require(m >= 2, "two-generated family needs m >= 2")?;
    Ok(y)
}

/// The two-generator table as originally printed, whose last entry is
/// `T_{m-1,1} = {x, y}`.
pub fn two_generated_printed(
    group: &FiniteGroup,
    spec: &GeneratorSpec,
    m: usize,
) -> Result<LiteralTable> {
    let y = check_two_generated(group, spec, m)?;
    let (one, x) = (group.identity(), spec.x);
    let mut t = LiteralTable::new(m);
    for i in 0..m {
        t.push((i, i), [x]);
    }
    for i in 0..m - 1 {
        t.push((i, i + 1), [one, x]);
    }
    t.push((m - 1, 1), [x, y]);
    Ok(t)
}

/// The correction for [`two_generated_printed`]: the last entry belongs in
/// `T_{m-1,0}`.
pub fn two_generated_correction(table: &LiteralTable) -> Relocation {
    Relocation {
        entry: table.entries.len() - 1,
        to: (table.m - 1, 0),
    }
}

/// `G = ⟨x, y⟩ ≠ ⟨x⟩`, `G ≇ Z₂²`, `o(x) ≥ 3`, `m ≥ 2`.
pub fn two_generated(
    group: &FiniteGroup,
    spec: &GeneratorSpec,
    m: usize,
) -> Result<ConnectionMatrix> {
    let printed = two_generated_printed(group, spec, m)?;
    Ok(printed
        .relocated(&[two_generated_correction(&printed)])
        .to_matrix())
}
