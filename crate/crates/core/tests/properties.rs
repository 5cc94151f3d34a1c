mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_extremal::equitable::{coarsest_equitable_partition, divisibility};
use spectral_extremal::families::{make_complete, make_cycle, make_h_cycle_triangle};
use spectral_extremal::graph::{canonical_form, from_graph6, from_graph6_with_cap, to_graph6, Graph};
use spectral_extremal::spectral::{compare_largest_roots, graph_char_poly, largest_real_root, spectral_radius};
use spectral_extremal::subgraph::contains_subgraph;

fn graph_from(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

fn connected_from(seed: u64, n: usize) -> Graph {
    common::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.35)
}

fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permuted(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph6_round_trips(seed in any::<u64>(), n in 0usize..70, p in 0.0f64..1.0) {
        let g = graph_from(seed, n, p);
        prop_assert_eq!(from_graph6_with_cap(&to_graph6(&g), 128).unwrap(), g.clone());
        prop_assert_eq!(from_graph6(&to_graph6(&g)).is_ok(), n <= 64);
    }

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>(), shuffle in any::<u64>(), n in 1usize..12, p in 0.0f64..1.0) {
        let g = graph_from(seed, n, p);
        prop_assert_eq!(canonical_form(&g), canonical_form(&shuffled(&g, shuffle)));
    }

    #[test]
    fn deleting_an_edge_lowers_rho(seed in any::<u64>(), n in 2usize..11, pick in any::<prop::sample::Index>()) {
        let g = connected_from(seed, n);
        let edges = g.edges();
        let (a, b) = edges[pick.index(edges.len())];
        let mut h = g.clone();
        h.remove_edge(a, b);
        let rg = spectral_radius(&g, 1e-10).unwrap().rho;
        let rh = spectral_radius(&h, 1e-10).unwrap().rho;
        prop_assert!(rh < rg);
        if h.size() > 0 {
            prop_assert_eq!(compare_largest_roots(&graph_char_poly(&g), &graph_char_poly(&h)).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn power_iteration_agrees_with_char_poly(seed in any::<u64>(), n in 2usize..12) {
        let g = connected_from(seed, n);
        let s = spectral_radius(&g, 1e-11).unwrap();
        let root = largest_real_root(&graph_char_poly(&g), 1e-12).unwrap();
        prop_assert!((s.rho - root).abs() < 1e-8, "{} vs {}", s.rho, root);
        prop_assert!(s.perron.iter().all(|&x| x > 0.0));
        let norm: f64 = s.perron.iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rho_is_bounded_by_degrees(seed in any::<u64>(), n in 1usize..14, p in 0.0f64..1.0) {
        let g = graph_from(seed, n, p);
        let rho = spectral_radius(&g, 1e-10).unwrap().rho;
        let d = g.degree_stats();
        prop_assert!(rho <= d.max as f64 + 1e-9);
        prop_assert!(rho + 1e-9 >= 2.0 * g.size() as f64 / n as f64);
    }

    #[test]
    fn coarsest_partition_divides(seed in any::<u64>(), n in 1usize..11, p in 0.0f64..1.0) {
        let g = graph_from(seed, n, p);
        let d = divisibility(&g, &coarsest_equitable_partition(&g)).unwrap();
        prop_assert!(d.divides);
    }

    #[test]
    fn containment_matches_brute_force(seed in any::<u64>(), n in 1usize..9, p in 0.2f64..0.9, induced in any::<bool>()) {
        let g = graph_from(seed, n, p);
        for pat in [make_complete(3).unwrap(), make_cycle(5).unwrap(), make_h_cycle_triangle(3).unwrap()] {
            let found = contains_subgraph(&g, &pat, induced).unwrap();
            prop_assert_eq!(found.is_some(), common::brute_contains(&g, &pat, induced));
            if let Some(e) = found {
                prop_assert!(e.is_valid(&g, &pat, induced));
            }
        }
    }
}
