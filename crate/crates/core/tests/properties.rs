use corona_core::corona::{corona, CoronaKind};
use corona_core::linalg::{group_inverse_laplacian, kron, DenseMatrix};
use corona_core::metrics::{
    kf_edge_corona_regular, kf_vertex_corona, kirchhoff_oracle, neighbor_identity_check, resistance_oracle,
    CoronaResistance, PairSumReading,
};
use corona_core::one_inverse::laplacian_of_product;
use corona_core::{Graph, Tolerances};
use proptest::prelude::*;

/// Any simple graph on 1..=max_n vertices.
fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges = pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A random spanning tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        let extra = proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2);
        (parents, extra).prop_map(move |(parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if extra[k] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn regular_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        Just(Graph::complete(2)),
        Just(Graph::cycle(3)),
        Just(Graph::cycle(4)),
        Just(Graph::cycle(5)),
        Just(Graph::complete(4)),
        Just(Graph::new(4, [(0, 1), (2, 3)]).unwrap()),
        Just(Graph::new(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()),
    ]
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    proptest::collection::vec(-3.0f64..3.0, rows * cols)
        .prop_map(move |v| DenseMatrix::from_row_major(rows, cols, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn incidence_products(g in any_graph(6)) {
        let r = g.incidence_matrix();
        let rrt = &r * &r.transpose();
        let signless = &g.degree_matrix() + &g.adjacency_matrix();
        prop_assert_eq!(rrt.max_abs_diff(&signless), 0.0);
        let rtr = &r.transpose() * &r;
        let line = &DenseMatrix::identity(g.edge_count()).scale(2.0) + &g.line_graph().adjacency_matrix();
        prop_assert_eq!(rtr.max_abs_diff(&line), 0.0);
    }

    #[test]
    fn subdivision_shape(g in any_graph(6)) {
        let s = g.subdivision();
        prop_assert_eq!(s.vertex_count(), g.vertex_count() + g.edge_count());
        prop_assert_eq!(s.edge_count(), 2 * g.edge_count());
        prop_assert!(s.two_coloring().is_some());
        for e in g.vertex_count()..s.vertex_count() {
            prop_assert_eq!(s.degree(e), 2);
        }
    }

    #[test]
    fn edge_list_round_trip(g in any_graph(7)) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn product_counts(g1 in any_graph(4), g2 in any_graph(4)) {
        let (n1, m1, n2, m2) = (g1.vertex_count(), g1.edge_count(), g2.vertex_count(), g2.edge_count());
        let v = corona(CoronaKind::Vertex, &g1, &g2).unwrap();
        prop_assert_eq!(v.product.vertex_count(), n1 * (1 + n2 + m2));
        prop_assert_eq!(v.product.edge_count(), m1 + n1 * n2 + 2 * n1 * m2);
        let e = corona(CoronaKind::Edge, &g1, &g2).unwrap();
        prop_assert_eq!(e.product.vertex_count(), n1 * (1 + n2 + m2));
        prop_assert_eq!(e.product.edge_count(), m1 + 3 * n1 * m2);
        prop_assert_eq!(laplacian_of_product(&v).max_abs_diff(&v.product.laplacian()), 0.0);
        prop_assert_eq!(laplacian_of_product(&e).max_abs_diff(&e.product.laplacian()), 0.0);
    }

    #[test]
    fn group_inverse_identities(g in connected_graph(7)) {
        let m = g.laplacian();
        let x = group_inverse_laplacian(&m).unwrap();
        prop_assert!((&(&m * &x) * &m).max_abs_diff(&m) < 1e-8);
        prop_assert!((&(&x * &m) * &x).max_abs_diff(&x) < 1e-8);
        prop_assert!((&m * &x).max_abs_diff(&(&x * &m)) < 1e-8);
        prop_assert!((&x * &DenseMatrix::ones_column(g.vertex_count())).max_abs() < 1e-10);
    }

    #[test]
    fn oracle_is_a_metric(g in connected_graph(7)) {
        let r = resistance_oracle(&g).unwrap();
        prop_assert!(r.metric_violation() < 1e-10);
        prop_assert!(neighbor_identity_check(&g, &r, PairSumReading::Unordered) < 1e-9);
        let kf = kirchhoff_oracle(&g, &Tolerances::default()).unwrap();
        prop_assert!((kf.value - r.pair_sum()).abs() < 1e-8 * (1.0 + kf.value));
    }

    #[test]
    fn kron_is_bilinear(a in small_matrix(2, 3), b in small_matrix(2, 3), c in small_matrix(3, 2), s in -2.0f64..2.0) {
        let lhs = kron(&(&a + &b.scale(s)), &c);
        let rhs = &kron(&a, &c) + &kron(&b, &c).scale(s);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let lhs = kron(&c, &(&a + &b.scale(s)));
        let rhs = &kron(&c, &a) + &kron(&c, &b).scale(s);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_is_associative_and_mixes(a in small_matrix(2, 2), b in small_matrix(2, 3), c in small_matrix(3, 2), d in small_matrix(3, 1)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
        let mixed = &kron(&a, &b) * &kron(&a, &d);
        let split = kron(&(&a * &a), &(&b * &d));
        prop_assert!(mixed.max_abs_diff(&split) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertex_corona_inverse_and_resistances(g1 in connected_graph(3), g2 in any_graph(4)) {
        let layout = corona(CoronaKind::Vertex, &g1, &g2).unwrap();
        let eval = CoronaResistance::new(&layout, &Tolerances::default()).unwrap();
        let l = layout.product.laplacian();
        prop_assert!(eval.one_inverse().one_inverse_residual(&l).unwrap() < 1e-8);
        let oracle = resistance_oracle(&layout.product).unwrap();
        prop_assert!(eval.one_inverse_matrix().unwrap().max_abs_diff(&oracle) < 1e-9);
        prop_assert!(eval.matrix().unwrap().max_abs_diff(&oracle) < 1e-9);
        let kf = kf_vertex_corona(&g1, &g2, &Tolerances::default()).unwrap().value;
        let want = kirchhoff_oracle(&layout.product, &Tolerances::default()).unwrap().value;
        prop_assert!((kf - want).abs() < 1e-8 * (1.0 + want));
    }

    #[test]
    fn edge_corona_inverse_and_resistances(g1 in connected_graph(3), g2 in regular_graph()) {
        let layout = corona(CoronaKind::Edge, &g1, &g2).unwrap();
        let eval = CoronaResistance::new(&layout, &Tolerances::default()).unwrap();
        let l = layout.product.laplacian();
        prop_assert!(eval.one_inverse().one_inverse_residual(&l).unwrap() < 1e-8);
        // G2 may be disconnected here; the product is still connected through the base vertex.
        let oracle = resistance_oracle(&layout.product).unwrap();
        prop_assert!(eval.one_inverse_matrix().unwrap().max_abs_diff(&oracle) < 1e-9);
        prop_assert!(eval.matrix().unwrap().max_abs_diff(&oracle) < 1e-9);
        let kf = kf_edge_corona_regular(&g1, &g2, &Tolerances::default()).unwrap().value;
        let want = kirchhoff_oracle(&layout.product, &Tolerances::default()).unwrap().value;
        prop_assert!((kf - want).abs() < 1e-8 * (1.0 + want));
    }
}
