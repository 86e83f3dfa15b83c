use omsr_core::autgroup::{
    automorphism_group, brute_force_automorphisms, refine, OrderedPartition, Permutation,
};
use omsr_core::digraph::Digraph;
use omsr_core::group::{catalog, FiniteGroup};
use omsr_core::mcayley::{
    connection_is_oriented, profile_is_k_regular, ConnectionMatrix, MCayleyDigraph,
};
use proptest::prelude::*;

fn groups() -> Vec<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    vec![
        FiniteGroup::cyclic(1).unwrap(),
        z2.clone(),
        FiniteGroup::cyclic(3).unwrap(),
        FiniteGroup::cyclic(4).unwrap(),
        FiniteGroup::direct_product(&z2, &z2),
        FiniteGroup::cyclic(5).unwrap(),
        catalog::symmetric3(),
        FiniteGroup::cyclic(7).unwrap(),
        catalog::dihedral(4).unwrap(),
        catalog::quaternion(),
    ]
}

fn any_group() -> impl Strategy<Value = FiniteGroup> {
    let all = groups();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn group_and_matrix() -> impl Strategy<Value = (FiniteGroup, ConnectionMatrix)> {
    (any_group(), 1usize..=4).prop_flat_map(|(g, m)| {
        let n = g.order();
        proptest::collection::vec(proptest::collection::vec(0..n, 0..3), m * m).prop_map(
            move |cells| {
                let mut t = ConnectionMatrix::empty(m);
                for (idx, set) in cells.into_iter().enumerate() {
                    t.set(idx / m, idx % m, set);
                }
                (g.clone(), t)
            },
        )
    })
}

fn digraph(max_nv: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_nv, 0.1f64..0.9).prop_flat_map(|(nv, density)| {
        proptest::collection::vec(proptest::bool::weighted(density), nv * nv).prop_map(
            move |bits| {
                let arcs = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| (i / nv, i % nv))
                    .filter(|(u, v)| u != v);
                Digraph::from_arcs(nv, arcs).unwrap()
            },
        )
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(g in any_group(), seed in any::<[usize; 3]>()) {
        let n = g.order();
        let (a, b, c) = (seed[0] % n, seed[1] % n, seed[2] % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(n % g.element_order(a), 0);
    }

    #[test]
    fn generated_subgroup_is_closed_idempotent_and_monotone(g in any_group(), s in proptest::collection::vec(0usize..64, 0..3), extra in 0usize..64) {
        let n = g.order();
        let s: Vec<_> = s.into_iter().map(|e| e % n).collect();
        let h = g.generated_subgroup(s.iter().copied());
        prop_assert_eq!(n % h.len(), 0);
        for &a in &h {
            for &b in &h {
                prop_assert!(h.contains(&g.mul(a, b)));
            }
        }
        prop_assert_eq!(g.generated_subgroup(h.iter().copied()), h.clone());
        let bigger = g.generated_subgroup(s.iter().copied().chain([extra % n]));
        prop_assert!(h.is_subset(&bigger));
    }

    #[test]
    fn oriented_and_regular_match_the_built_digraph((g, t) in group_and_matrix()) {
        let d = MCayleyDigraph::build(&g, &t).unwrap();
        let graph = d.graph();
        prop_assert_eq!(connection_is_oriented(&g, &t), graph.is_oriented());
        for k in 0..=3 {
            prop_assert_eq!(profile_is_k_regular(&t, k), graph.is_k_regular(k));
        }
        for v in 0..graph.vertex_count() {
            let (e, i) = d.label(v);
            prop_assert_eq!(d.vertex(e, i), v);
        }
    }

    #[test]
    fn right_translations_are_automorphisms((g, t) in group_and_matrix(), seed in any::<(usize, usize)>()) {
        let d = MCayleyDigraph::build(&g, &t).unwrap();
        let n = g.order();
        let (a, b) = (seed.0 % n, seed.1 % n);
        let ra = d.right_translation(a).unwrap();
        let rb = d.right_translation(b).unwrap();
        prop_assert!(ra.is_automorphism_of(d.graph()));
        prop_assert_eq!(ra.then(&rb), d.right_translation(g.mul(a, b)).unwrap());
        let regular = d.regular_action_group();
        prop_assert_eq!(regular.order(), n as u128);
        prop_assert!(regular.is_semiregular());
        let aut = automorphism_group(d.graph(), None).unwrap();
        for r in regular.generators() {
            prop_assert!(aut.contains(r).unwrap());
        }
    }

    #[test]
    fn arc_counts_balance(graph in digraph(12)) {
        let out: usize = (0..graph.vertex_count()).map(|v| graph.out_degree(v)).sum();
        let inn: usize = (0..graph.vertex_count()).map(|v| graph.in_degree(v)).sum();
        prop_assert_eq!(out, graph.arc_count());
        prop_assert_eq!(inn, graph.arc_count());
        for v in 0..graph.vertex_count() {
            let step: Vec<_> = graph.iterated_out_neighborhood(v, 1).unwrap().into_iter().collect();
            prop_assert_eq!(step.as_slice(), graph.out_neighbors(v));
            for &w in graph.out_neighbors(v) {
                prop_assert!(graph.in_neighbors(w).contains(&v));
            }
        }
        if graph.is_oriented() {
            prop_assert!(!graph.has_loop());
            prop_assert_eq!(graph.digon_count(), 0);
        }
    }

    #[test]
    fn refinement_is_equitable_and_idempotent(graph in digraph(12)) {
        let unit = OrderedPartition::unit(graph.vertex_count());
        let once = refine(&graph, &unit).unwrap();
        prop_assert!(once.is_equitable(&graph));
        prop_assert_eq!(refine(&graph, &once).unwrap(), once);
    }

    #[test]
    fn engine_matches_brute_force(graph in digraph(8)) {
        let engine = automorphism_group(&graph, None).unwrap();
        for s in engine.generators() {
            prop_assert!(s.is_automorphism_of(&graph));
        }
        prop_assert_eq!(engine.order(), brute_force_automorphisms(&graph).unwrap().order());
    }

    #[test]
    fn engine_respects_initial_colors(graph in digraph(8), colors in proptest::collection::vec(0usize..2, 8)) {
        let nv = graph.vertex_count();
        let colors = &colors[..nv];
        let partition = OrderedPartition::from_colors(colors);
        let aut = automorphism_group(&graph, Some(&partition)).unwrap();
        for s in aut.generators() {
            for v in 0..nv {
                prop_assert_eq!(colors[s.apply(v)], colors[v]);
            }
        }
    }

    #[test]
    fn permutation_inverse_and_composition(p in permutation(9), q in permutation(9)) {
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.then(&q).inverse(), q.inverse().then(&p.inverse()));
        for x in 0..9 {
            prop_assert_eq!(p.then(&q).apply(x), q.apply(p.apply(x)));
        }
    }
}
