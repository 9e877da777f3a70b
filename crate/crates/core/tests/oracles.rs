use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use fractal_tutte::graph::{
    build, build_psw_copy_merge, build_psw_edge_expansion, build_sierpinski, degree_histogram, edge_count,
    vertex_count,
};
use fractal_tutte::oracle::{
    matrix_tree_count, partition_subgraph_sum, reliability_enumeration, run_oracle, subset_census,
    tutte_deletion_contraction, tutte_subgraph_sum, CheckKind, CheckStatus, HubPattern,
};
use fractal_tutte::recursion::{psw_state, state_to_partition, tutte_psw};
use fractal_tutte::reliability::{psw_rel_exact, sg_rel_exact};
use fractal_tutte::{Family, Graph, HubGraph};

/// Connected simple graphs: a random spanning tree plus a few extra edges.
fn connected_graph(max_edges: usize) -> impl Strategy<Value = Graph> {
    (2usize..=7)
        .prop_flat_map(move |v| {
            let parents: Vec<_> = (1..v).map(|i| 0..i).collect();
            let extra = prop::collection::vec((0..v, 0..v), 0..=max_edges);
            (Just(v), parents, extra)
        })
        .prop_map(move |(v, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && edges.len() < max_edges && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            Graph::new(v, edges).unwrap()
        })
}

fn family_graphs(max_edges: u64) -> Vec<HubGraph> {
    let mut out = Vec::new();
    for n in 0..=2 {
        if edge_count(n) > max_edges {
            continue;
        }
        out.push(build_psw_edge_expansion(n).unwrap());
        out.push(build_psw_copy_merge(n).unwrap());
        out.push(build_sierpinski(n).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn deletion_contraction_on_random_graphs(g in connected_graph(10)) {
        prop_assert!(g.is_connected());
        prop_assert_eq!(tutte_deletion_contraction(&g).unwrap(), tutte_subgraph_sum(&g).unwrap());
    }

    #[test]
    fn matrix_tree_on_random_graphs(g in connected_graph(12)) {
        let t = tutte_subgraph_sum(&g).unwrap();
        prop_assert_eq!(matrix_tree_count(&g).unwrap(), t.eval_integer(&BigInt::one(), &BigInt::one()));
    }
}

#[test]
fn deletion_contraction_on_families() {
    for g in family_graphs(10) {
        assert_eq!(tutte_deletion_contraction(g.graph()).unwrap(), tutte_subgraph_sum(g.graph()).unwrap());
    }
}

#[test]
fn matrix_tree_on_families() {
    for g in family_graphs(12) {
        let t = tutte_subgraph_sum(g.graph()).unwrap();
        assert_eq!(matrix_tree_count(g.graph()).unwrap(), t.eval_integer(&BigInt::one(), &BigInt::one()));
    }
    // larger graphs only against the recursion
    for n in 2..=3 {
        let t = tutte_psw(n).unwrap();
        let g = build_psw_edge_expansion(n).unwrap();
        assert_eq!(matrix_tree_count(g.graph()).unwrap(), t.eval_integer(&BigInt::one(), &BigInt::one()));
    }
}

#[test]
fn partition_sums_match_recursion() {
    for n in 0..=1 {
        let g = build_psw_edge_expansion(n).unwrap();
        let sums = partition_subgraph_sum(&g).unwrap();
        let t = state_to_partition(&psw_state(n).unwrap());
        assert_eq!(sums.t1, t.t1);
        assert_eq!(sums.t2a, t.t2);
        assert_eq!(sums.t2b, t.t2);
        assert_eq!(sums.t2c, t.t2);
        assert_eq!(sums.t3, t.t3);
        assert_eq!(sums.total(), tutte_psw(n).unwrap());
    }
    for n in 0..=1 {
        let g = build_sierpinski(n).unwrap();
        let sums = partition_subgraph_sum(&g).unwrap();
        assert_eq!(sums.total(), tutte_subgraph_sum(g.graph()).unwrap());
        assert_eq!(sums.t2a, sums.t2b);
        assert_eq!(sums.t2b, sums.t2c);
    }
}

#[test]
fn census_counts_every_subset() {
    let g = build_sierpinski(1).unwrap();
    let census = subset_census(&g).unwrap();
    assert_eq!(census.total(), 1 << 9);
    let together = census.tutte_restricted(&[HubPattern::Together]);
    assert_eq!(together, partition_subgraph_sum(&g).unwrap().t1);
}

#[test]
fn enumerated_reliability_matches_recursions() {
    let probes = [(1, 10), (1, 3), (1, 2), (3, 4), (9, 10)];
    for n in 0..=1 {
        let psw = build(Family::Psw, n).unwrap();
        let sg = build(Family::Sierpinski, n).unwrap();
        for (a, b) in probes {
            let p = BigRational::new(a.into(), b.into());
            let e = reliability_enumeration(&psw, &p).unwrap();
            let s = psw_rel_exact(n, &p).unwrap();
            assert_eq!(e.connected, s.r.to_ratio());
            assert_eq!(e.split_bc_a, s.b.to_ratio());
            assert_eq!(e.split_ac_b, s.b.to_ratio());
            assert_eq!(e.split_ab_c, s.b.to_ratio());
            let e = reliability_enumeration(&sg, &p).unwrap();
            let s = sg_rel_exact(n, &p).unwrap();
            assert_eq!(e.connected, s.rs.to_ratio());
            assert_eq!(e.split_bc_a, s.bs.to_ratio());
            assert_eq!(e.separate, s.ts.to_ratio());
        }
    }
}

#[test]
fn constructions_agree() {
    for n in 0..=8 {
        let a = build_psw_edge_expansion(n).unwrap();
        let b = build_psw_copy_merge(n).unwrap();
        let s = build_sierpinski(n).unwrap();
        assert_eq!(a.num_vertices() as u64, vertex_count(n));
        assert_eq!(a.num_edges() as u64, edge_count(n));
        assert_eq!(b.num_vertices(), a.num_vertices());
        assert_eq!(b.num_edges(), a.num_edges());
        let (mut da, mut db) = (a.graph().degrees(), b.graph().degrees());
        da.sort_unstable();
        db.sort_unstable();
        assert_eq!(da, db, "n = {n}");
        assert_eq!(s.num_vertices(), a.num_vertices());
        assert_eq!(s.num_edges(), a.num_edges());
        if n >= 1 {
            let hist = degree_histogram(s.graph());
            assert_eq!(hist.get(&2), Some(&3));
            assert_eq!(hist.keys().copied().collect::<Vec<_>>(), vec![2, 4]);
        }
        for h in s.hubs() {
            assert_eq!(s.graph().degrees()[h], 2);
        }
    }
}

#[test]
fn edge_lists_round_trip() {
    for family in [Family::Psw, Family::Sierpinski] {
        for n in 0..=3 {
            let g = build(family, n).unwrap();
            let text = g.to_edge_list();
            let back = HubGraph::from_edge_list(&text).unwrap();
            assert_eq!(back.to_edge_list(), text);
            assert_eq!(back.generation(), Some(n));
        }
    }
    assert!(HubGraph::from_edge_list("3 3\nH 0 1 2\n0 1\n0 1\n1 2\n").is_err());
    assert!(HubGraph::from_edge_list("2 1\nH 0 1 1\n0 0\n").is_err());
}

#[test]
fn full_oracle_reports_pass() {
    for family in [Family::Psw, Family::Sierpinski] {
        for n in 0..=1 {
            let report = run_oracle(family, n, &CheckKind::ALL).unwrap();
            assert!(report.passed, "{}", report.to_text());
            assert!(report.checks.iter().all(|c| c.status != CheckStatus::Fail));
        }
    }
}
