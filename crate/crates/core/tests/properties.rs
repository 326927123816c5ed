use std::collections::BTreeSet;

use proptest::prelude::*;
use rolemetric::datasets::karate_club;
use rolemetric::graph::{to_edge_list, to_pajek};
use rolemetric::{
    automorphic_distances, automorphic_run, canonical_labeling, cross_network_distances, initial_labeling,
    initial_table, is_stabilized, next_table, parse_edge_list, parse_pajek, refine_step, rolesim_distances,
    rolesim_similarities, Graph, LabelId,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_index_edges(n, edges).unwrap()
        })
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(u, v)| {
            let (a, b) = (g.node_id(u).to_owned(), g.node_id(v).to_owned());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn pajek_round_trip(g in arb_graph(12)) {
        let back = parse_pajek(&to_pajek(&g)).unwrap();
        prop_assert_eq!(back.node_ids(), g.node_ids());
        prop_assert_eq!(edge_set(&back), edge_set(&g));
    }

    #[test]
    fn edge_list_round_trip_without_isolated_nodes(g in arb_graph(12)) {
        prop_assume!(g.degrees().iter().all(|&d| d > 0));
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(edge_set(&back), edge_set(&g));
        prop_assert_eq!(back.node_count(), g.node_count());
    }

    /// Each refinement step only splits classes.
    #[test]
    fn refinement_is_monotone(g in arb_graph(14)) {
        let mut prev = initial_labeling(&g);
        for _ in 0..=g.node_count() {
            let next = refine_step(&g, &prev);
            for x in 0..g.node_count() {
                for y in 0..g.node_count() {
                    if next.label(x) == next.label(y) {
                        prop_assert_eq!(prev.label(x), prev.label(y));
                    }
                }
            }
            if is_stabilized(&prev, &next) {
                break;
            }
            prev = next;
        }
    }

    #[test]
    fn refinement_is_deterministic(g in arb_graph(14)) {
        let (a, steps_a) = canonical_labeling(&g).unwrap();
        let (b, steps_b) = canonical_labeling(&g).unwrap();
        prop_assert_eq!(a.labels(), b.labels());
        prop_assert_eq!(steps_a, steps_b);
    }

    /// Every intermediate table is a metric on its labels.
    #[test]
    fn every_table_is_a_metric(g in arb_graph(12)) {
        let mut labels = initial_labeling(&g);
        let mut table = initial_table(&labels, &labels.label_degrees(&g)).unwrap();
        loop {
            let ls = table.labels().to_vec();
            for &a in &ls {
                prop_assert_eq!(table.get(a, a), Some(0));
                for &b in &ls {
                    let ab = table.get(a, b).unwrap();
                    prop_assert_eq!(ab, table.get(b, a).unwrap());
                    prop_assert_eq!(ab == 0, a == b);
                    for &c in &ls {
                        prop_assert!(table.get(a, c).unwrap() <= ab + table.get(b, c).unwrap());
                    }
                }
            }
            let next = refine_step(&g, &labels);
            if is_stabilized(&labels, &next) {
                break;
            }
            table = next_table(&table, &next).unwrap();
            labels = next;
        }
    }

    #[test]
    fn peak_live_tables_is_at_most_two(g in arb_graph(16)) {
        prop_assert!(automorphic_run(&g).unwrap().peak_live_tables <= 2);
    }

    /// Relabelling nodes permutes the distance matrix accordingly.
    #[test]
    fn distances_are_invariant_under_relabelling(g in arb_graph(10), seed in any::<u64>()) {
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_index_edges(n, edges).unwrap();
        let (dg, dh) = (automorphic_distances(&g).unwrap(), automorphic_distances(&h).unwrap());
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(dg.get(x, y), dh.get(perm[x], perm[y]));
            }
        }
    }
}

#[test]
fn isolated_nodes_keep_the_empty_label() {
    let g = Graph::from_index_edges(4, [(0, 1)]).unwrap();
    let (labeling, _) = canonical_labeling(&g).unwrap();
    assert_eq!(labeling.label(2), LabelId::EMPTY);
    assert_eq!(labeling.label(3), LabelId::EMPTY);
    let d = automorphic_distances(&g).unwrap();
    assert_eq!(d.get(2, 3), 0);
    assert_eq!(d.get(0, 2), 1);
}

// Regression values, cross-checked against an independent implementation
// (scipy assignment solver) when first recorded.
#[test]
fn karate_regression() {
    let g = karate_club();
    let run = automorphic_run(&g).unwrap();
    assert_eq!(run.steps, 2);
    assert_eq!(run.canonical.class_count(), 27);
    let (a, b, c) = (g.index_of("1").unwrap(), g.index_of("34").unwrap(), g.index_of("2").unwrap());
    assert_eq!(run.distances.get(a, b), 14);
    assert_eq!(run.distances.get(a, c), 31);
    assert_eq!(run.distances.values().iter().max(), Some(&65));

    let sim = rolesim_similarities(&g, 1e-4, 100);
    assert!(sim.converged);
    assert_eq!(sim.iterations_run, 21);
    let d = rolesim_distances(&sim);
    assert!((d.get(a, b) - 0.498100067489).abs() < 1e-11);
}

#[test]
fn cross_network_of_a_graph_with_itself_has_zero_diagonal() {
    let g = karate_club();
    let cross = cross_network_distances(&g, &g).unwrap();
    let own = automorphic_distances(&g).unwrap();
    for x in 0..g.node_count() {
        assert_eq!(cross.get(x, x), 0);
        for y in 0..g.node_count() {
            assert_eq!(cross.get(x, y), own.get(x, y));
        }
    }
}

#[test]
fn cross_network_against_an_empty_graph() {
    let g = parse_edge_list("a b\nb c").unwrap();
    let cross = cross_network_distances(&g, &Graph::empty()).unwrap();
    assert_eq!((cross.rows(), cross.cols()), (3, 0));
}
