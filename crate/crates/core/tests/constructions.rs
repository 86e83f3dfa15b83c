use std::collections::BTreeSet;

use omsr_core::autgroup::{automorphism_group, check_block_stabilizer_criterion};
use omsr_core::constructions::{
    self, construct_omsr, single_entry_fixes, validate_table, z2_tables, Dispatch, Family,
    Relocation, Violation,
};
use omsr_core::group::{catalog, FiniteGroup, GeneratorSpec};
use omsr_core::mcayley::{
    connection_is_oriented, profile_is_k_regular, ConnectionMatrix, MCayleyDigraph,
};

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2).unwrap()
}

fn klein() -> FiniteGroup {
    FiniteGroup::direct_product(&z2(), &z2())
}

fn aut_order(g: &FiniteGroup, t: &ConnectionMatrix) -> u128 {
    let gamma = MCayleyDigraph::build(g, t).unwrap();
    automorphism_group(gamma.graph(), None).unwrap().order()
}

fn assert_valid(g: &FiniteGroup, t: &ConnectionMatrix) {
    assert!(connection_is_oriented(g, t));
    assert!(profile_is_k_regular(t, 3));
    assert_eq!(validate_table(g, t), vec![]);
}

/// Out-neighbourhood (k steps) of `(g, i)` as a set of `(element, block)`.
fn neighborhood(
    g: &FiniteGroup,
    t: &ConnectionMatrix,
    v: (usize, usize),
    k: usize,
) -> BTreeSet<(usize, usize)> {
    let gamma = MCayleyDigraph::build(g, t).unwrap();
    gamma
        .graph()
        .iterated_out_neighborhood(gamma.vertex(v.0, v.1), k)
        .unwrap()
        .into_iter()
        .map(|w| gamma.label(w))
        .collect()
}

#[test]
fn z2_tables_are_valid_and_rigid_up_to_translation() {
    let g = z2();
    for m in 5..=10 {
        let t = constructions::z2_table(&g, m).unwrap();
        assert_valid(&g, &t);
        assert_eq!(aut_order(&g, &t), 2, "m = {m}");
    }
}

#[test]
fn z2_table_m5_has_one_and_x_in_opposite_cells() {
    let t = constructions::z2_table(&z2(), 5).unwrap();
    assert_eq!(t.get(0, 1), &BTreeSet::from([0]));
    assert_eq!(t.get(1, 0), &BTreeSet::from([1]));
}

#[test]
fn printed_z2_m6_table_violations() {
    let g = z2();
    let printed = z2_tables::printed(6).unwrap().to_matrix();
    let v = validate_table(&g, &printed);
    assert!(v.contains(&Violation::RowSum { row: 0, sum: 2 }));
    assert!(v.contains(&Violation::ColumnSum { column: 0, sum: 4 }));
}

#[test]
fn printed_z2_tables_that_needed_no_correction_are_valid() {
    for m in [7, 8, 10] {
        assert!(z2_tables::corrections(m).is_empty());
        assert!(validate_table(&z2(), &z2_tables::printed(m).unwrap().to_matrix()).is_empty());
    }
    for m in [5, 6, 9] {
        assert!(!validate_table(&z2(), &z2_tables::printed(m).unwrap().to_matrix()).is_empty());
    }
}

#[test]
fn z2_m6_correction_is_a_fix_among_the_single_entry_fixes() {
    let printed = z2_tables::printed(6).unwrap();
    let fixes = single_entry_fixes(&z2(), &printed);
    assert!(fixes.contains(&Relocation {
        entry: 0,
        to: (0, 1)
    }));
    // Restricted to moves of the {1}-list entry the correction is unique.
    let ones_list: Vec<_> = fixes
        .iter()
        .filter(|f| printed.entries[f.entry].set.contains(&0))
        .collect();
    assert_eq!(
        ones_list,
        vec![&Relocation {
            entry: 0,
            to: (0, 1)
        }]
    );
}

#[test]
fn z2_general_family() {
    let g = z2();
    let t11 = constructions::z2_general(&g, 11).unwrap();
    assert_valid(&g, &t11);
    assert_eq!(
        neighborhood(&g, &t11, (0, 0), 1),
        BTreeSet::from([(0, 1), (0, 9), (1, 9)])
    );
    let t12 = constructions::z2_general(&g, 12).unwrap();
    assert_eq!(aut_order(&g, &t12), 2);
}

#[test]
fn cyclic_m2_family() {
    let g = FiniteGroup::cyclic(5).unwrap();
    let t = constructions::cyclic_m2(&g, &g.generators()).unwrap();
    assert_valid(&g, &t);
    assert_eq!(
        neighborhood(&g, &t, (0, 0), 1),
        BTreeSet::from([(1, 0), (2, 0), (0, 1)])
    );
    // x^{-k} = 5 - k in Z5.
    let expected = BTreeSet::from([
        (0, 0),
        (4, 0),
        (2, 0),
        (3, 0),
        (1, 1),
        (3, 1),
        (2, 1),
        (1, 1),
    ]);
    assert_eq!(neighborhood(&g, &t, (0, 1), 2), expected);
    assert_eq!(aut_order(&g, &t), 5);
    let g9 = FiniteGroup::cyclic(9).unwrap();
    assert_valid(
        &g9,
        &constructions::cyclic_m2(&g9, &g9.generators()).unwrap(),
    );
}

#[test]
fn cyclic_general_family() {
    for n in 3..=7 {
        let g = FiniteGroup::cyclic(n).unwrap();
        let x = 1;
        let xi = n - 1;
        for m in 3..=5 {
            let t = constructions::cyclic_general(&g, &g.generators(), m).unwrap();
            assert_valid(&g, &t);
            assert_eq!(
                neighborhood(&g, &t, (0, 0), 1),
                BTreeSet::from([(x, 0), (0, 1), (xi, 1)])
            );
            assert_eq!(
                neighborhood(&g, &t, (0, m - 1), 1),
                BTreeSet::from([(xi, m - 1), (x, 0), (xi, 0)])
            );
        }
    }
    let g6 = FiniteGroup::cyclic(6).unwrap();
    assert_eq!(
        aut_order(
            &g6,
            &constructions::cyclic_general(&g6, &g6.generators(), 4).unwrap()
        ),
        6
    );
}

#[test]
fn cyclic_general_printed_table_is_invalid_and_correction_is_unique() {
    for n in 3..=6 {
        let g = FiniteGroup::cyclic(n).unwrap();
        for m in 3..=5 {
            let printed = constructions::cyclic_general_printed(&g, &g.generators(), m).unwrap();
            assert!(!validate_table(&g, &printed.to_matrix()).is_empty());
            // The printed last row sends 1_{m-1} into block 1, not block 0.
            let lit = neighborhood(&g, &printed.to_matrix(), (0, m - 1), 1);
            assert!(!lit.contains(&(1, 0)));
            assert_eq!(
                single_entry_fixes(&g, &printed),
                vec![constructions::cyclic_general_correction(&printed)]
            );
        }
    }
}

#[test]
fn klein_families() {
    let g = klein();
    let spec = g.generators();
    let (x, y) = (spec.x, spec.y.unwrap());
    let xy = g.mul(x, y);
    let t3 = constructions::klein_m3(&g, &spec).unwrap();
    assert_valid(&g, &t3);
    assert_eq!(
        neighborhood(&g, &t3, (0, 0), 1),
        BTreeSet::from([(0, 1), (x, 2), (xy, 2)])
    );
    // 1_1 is reached again through x_2 -> (x·x)_1.
    assert_eq!(
        neighborhood(&g, &t3, (0, 0), 2),
        BTreeSet::from([
            (0, 2),
            (x, 0),
            (y, 0),
            (xy, 0),
            (xy, 1),
            (y, 1),
            (x, 1),
            (0, 1)
        ])
    );
    assert_eq!(aut_order(&g, &t3), 4);
    let t4 = constructions::klein_m4(&g, &spec).unwrap();
    assert_valid(&g, &t4);
    assert_eq!(aut_order(&g, &t4), 4);
    let t5 = constructions::klein_general(&g, &spec, 5).unwrap();
    assert_eq!(
        neighborhood(&g, &t5, (0, 0), 1),
        BTreeSet::from([(y, 1), (0, 3), (x, 3)])
    );
    assert_eq!(aut_order(&g, &t5), 4);
    assert_valid(&g, &constructions::klein_general(&g, &spec, 8).unwrap());
}

#[test]
fn two_generated_family() {
    let s3 = catalog::symmetric3();
    let spec = s3.generators();
    assert_eq!(s3.element_order(spec.x), 3);
    let y = spec.y.unwrap();
    let t2 = constructions::two_generated(&s3, &spec, 2).unwrap();
    assert_valid(&s3, &t2);
    assert_eq!(
        neighborhood(&s3, &t2, (0, 1), 1),
        BTreeSet::from([(spec.x, 1), (spec.x, 0), (y, 0)])
    );
    assert_eq!(
        aut_order(&s3, &constructions::two_generated(&s3, &spec, 3).unwrap()),
        6
    );
    let d4 = catalog::dihedral(4).unwrap();
    assert_valid(
        &d4,
        &constructions::two_generated(&d4, &d4.generators(), 4).unwrap(),
    );
}

#[test]
fn two_generated_printed_table_is_invalid_and_correction_is_unique() {
    let groups = [
        catalog::symmetric3(),
        catalog::dihedral(4).unwrap(),
        catalog::quaternion(),
    ];
    for g in &groups {
        let spec = g.generators().with_long_x(g);
        for m in 2..=4 {
            let printed = constructions::two_generated_printed(g, &spec, m).unwrap();
            assert!(!validate_table(g, &printed.to_matrix()).is_empty());
            assert_eq!(
                single_entry_fixes(g, &printed),
                vec![constructions::two_generated_correction(&printed)]
            );
        }
    }
}

#[test]
fn dispatcher_examples() {
    let z5 = FiniteGroup::cyclic(5).unwrap();
    let c = construct_omsr(&z5, &z5.generators(), 2)
        .unwrap()
        .built()
        .unwrap();
    assert_eq!(c.family, Family::CyclicM2);
    assert_eq!(aut_order(&z5, &c.matrix), 5);
    assert!(matches!(
        construct_omsr(&z2(), &z2().generators(), 3).unwrap(),
        Dispatch::Exception(_)
    ));
    assert!(matches!(
        construct_omsr(&klein(), &klein().generators(), 2).unwrap(),
        Dispatch::Exception(_)
    ));
    let c = construct_omsr(&klein(), &klein().generators(), 5)
        .unwrap()
        .built()
        .unwrap();
    assert_eq!(c.family, Family::KleinGeneral);
    assert!(construct_omsr(&z5, &GeneratorSpec::single(0), 3).is_err());
}

#[test]
fn block_criterion_agrees_on_families() {
    let cases: Vec<(FiniteGroup, usize)> = vec![
        (z2(), 7),
        (z2(), 13),
        (FiniteGroup::cyclic(7).unwrap(), 2),
        (FiniteGroup::cyclic(4).unwrap(), 5),
        (klein(), 3),
        (klein(), 6),
        (catalog::quaternion(), 3),
    ];
    for (g, m) in cases {
        let c = construct_omsr(&g, &g.generators(), m)
            .unwrap()
            .built()
            .unwrap();
        let gamma = MCayleyDigraph::build(&g, &c.matrix).unwrap();
        let aut = automorphism_group(gamma.graph(), None).unwrap();
        let reps: Vec<usize> = (0..m).map(|i| gamma.vertex(0, i)).collect();
        let check = check_block_stabilizer_criterion(&gamma, &aut, &reps).unwrap();
        assert!(check.holds(), "{:?} m = {m}", c.family);
        assert!(check.conclusion_holds());
    }
}

#[test]
fn bundled_quaternion_file_is_q8() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/groups/q8.json");
    let g = omsr_core::input::parse_group_spec(&format!("perm:{path}"))
        .unwrap()
        .group;
    assert_eq!(g.order(), 8);
    assert!(!g.is_abelian());
    assert_eq!(g.elements().filter(|&e| g.element_order(e) == 2).count(), 1);
}
