use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use spantree::connectivity::edge_connectivity;
use spantree::exact::{isolate_real_roots, rat};
use spantree::graph::{crossing_edges, Graph, VertexPartition};
use spantree::randgen::{random_regular, GenConfig};
use spantree::spectra::{
    adjacency_char_poly, adjacency_spectrum, check_interlacing, is_equitable, lambda2,
    laplacian_spectrum, quotient_matrix, unmatched_eigenvalues,
};
use spantree::treepack::sigma;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(e, _)| *e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn graph_with_partition(max_n: usize) -> impl Strategy<Value = (Graph, VertexPartition)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        proptest::collection::vec(0usize..4, n)
            .prop_map(move |labels| (g.clone(), VertexPartition::from_labels(&labels)))
    })
}

fn regular() -> impl Strategy<Value = Graph> {
    (3usize..=6, 0usize..6, any::<u64>()).prop_map(|(d, extra, seed)| {
        let mut n = d + 2 + extra;
        if n * d % 2 == 1 {
            n += 1;
        }
        random_regular(&GenConfig::new(d, n, seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjacency_is_simple_and_consistent(g in graph(10)) {
        let a = g.adjacency_matrix();
        for (u, row) in a.iter().enumerate() {
            prop_assert_eq!(row[u], 0.0);
            for (v, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, a[v][u]);
            }
            prop_assert_eq!(row.iter().sum::<f64>() as usize, g.degree(u));
        }
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn handshake_over_crossing_edges((g, p) in graph_with_partition(10)) {
        let c = crossing_edges(&g, &p);
        prop_assert_eq!(c.boundary.iter().sum::<usize>(), 2 * c.total);
        let covered: usize = p.blocks().iter().map(Vec::len).sum();
        prop_assert_eq!(covered, g.vertex_count());
        prop_assert!(p.blocks().iter().all(|b| !b.is_empty()));
    }

    #[test]
    fn crossing_total_ignores_block_order((g, p) in graph_with_partition(10)) {
        let mut blocks = p.blocks().to_vec();
        blocks.reverse();
        let q = VertexPartition::new(g.vertex_count(), blocks).unwrap();
        prop_assert_eq!(crossing_edges(&g, &p).total, crossing_edges(&g, &q).total);
    }

    #[test]
    fn whole_vertex_set(g in graph(10)) {
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        let want = BigRational::new(BigInt::from(2 * g.edge_count()), BigInt::from(g.vertex_count()));
        prop_assert_eq!(g.average_degree(&all).unwrap(), want);
        prop_assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn jacobi_matches_sturm(g in graph(8)) {
        let floats = adjacency_spectrum(&g).unwrap();
        let mut exact: Vec<f64> = isolate_real_roots(&adjacency_char_poly(&g), &rat(1, 1_000_000_000_000))
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.interval.midpoint_f64(), r.multiplicity))
            .collect();
        exact.reverse();
        prop_assert_eq!(exact.len(), floats.len());
        for (a, b) in floats.values.iter().zip(&exact) {
            prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
        }
    }

    #[test]
    fn quotient_interlaces((g, p) in graph_with_partition(10)) {
        let spectrum = adjacency_spectrum(&g).unwrap();
        let q = quotient_matrix(&g, &p).eigenvalues().unwrap();
        prop_assert!(check_interlacing(&spectrum, &q).unwrap().holds);
        if is_equitable(&g, &p) {
            prop_assert!(unmatched_eigenvalues(&q, &spectrum, 1e-8).is_empty());
        }
        let singletons = VertexPartition::singletons(g.vertex_count());
        let s = quotient_matrix(&g, &singletons).eigenvalues().unwrap();
        prop_assert!(unmatched_eigenvalues(&s, &spectrum, 1e-8).is_empty());
    }

    #[test]
    fn sigma_monotone_under_deletion(g in graph(9), pick in any::<usize>()) {
        prop_assume!(g.edge_count() > 0);
        let e = g.edges()[pick % g.edge_count()];
        let h = g.remove_edges(&[e]).unwrap();
        prop_assert!(sigma(&h).sigma <= sigma(&g).sigma);
    }

    #[test]
    fn kundu_and_min_degree(g in graph(10)) {
        prop_assume!(g.vertex_count() >= 2);
        let k = edge_connectivity(&g).unwrap().value;
        prop_assert!(k <= g.min_degree());
        prop_assert!(sigma(&g).sigma >= k / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_graph_properties(g in regular()) {
        let d = g.regular_degree().unwrap();
        let n = g.vertex_count();
        let spectrum = adjacency_spectrum(&g).unwrap();
        if g.is_connected() {
            prop_assert!((spectrum.lambda(1).unwrap() - d as f64).abs() < 1e-9);
        }
        // μ_i = d - λ_i
        let lap = laplacian_spectrum(&g).unwrap();
        for i in 1..=n {
            prop_assert!((lap.mu(i).unwrap() - (d as f64 - spectrum.lambda(i).unwrap())).abs() < 1e-8);
        }
        // rows of any quotient sum to d
        let labels: Vec<usize> = (0..n).map(|v| v % 3).collect();
        let q = quotient_matrix(&g, &VertexPartition::from_labels(&labels)).exact();
        for i in 0..q.rows() {
            let s: BigRational = q.row(i).iter().sum();
            prop_assert_eq!(s, rat(d as i64, 1));
        }
        // λ₂ < d - 2(r-1)/(d+1) implies r-edge-connectivity
        let l2 = lambda2(&g).unwrap();
        let kappa = edge_connectivity(&g).unwrap().value;
        for r in 2..=d {
            let bound = d as f64 - 2.0 * (r as f64 - 1.0) / (d as f64 + 1.0);
            if l2 < bound - 1e-9 {
                prop_assert!(kappa >= r, "λ₂ = {} but κ′ = {} < {}", l2, kappa, r);
            }
        }
    }
}
