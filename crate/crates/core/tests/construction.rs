use num_bigint::BigUint;
use proptest::prelude::*;
use tfseg::construction::{
    build_structure_with, probe_count_formula, projected_vertex_count, total_weight_formula,
    BuildConfig, Step,
};
use tfseg::error::ConstructionError;
use tfseg::{blow_up, build_structure, build_tilde, Graph, WeightMap};

#[test]
fn level_one() {
    let s = build_structure(1).unwrap();
    assert_eq!(s.vertex_count(), 1);
    assert_eq!(s.graph.edge_count(), 0);
    assert_eq!(s.probes.len(), 1);
    assert_eq!(s.probes[0].members(), &[0]);
    assert_eq!(s.weights.total(), BigUint::from(1u32));
}

#[test]
fn level_two_by_hand() {
    // u = 0 (base), v = 1 (copy), d_Q = 2 adjacent to v.
    let s = build_structure(2).unwrap();
    assert_eq!(s.graph.edges(), &[(1, 2)]);
    let probes: Vec<&[u32]> = s.probes.iter().map(|p| p.members()).collect();
    assert_eq!(probes, vec![&[0, 1][..], &[0, 2][..]]);
    assert_eq!(s.weights.as_slice(), &[1, 1, 1]);
    assert_eq!(s.provenance[2].steps(), &[Step::InCopyOf(0), Step::Diagonal(0)]);
    assert!(s.provenance[2].is_diagonal());
}

#[test]
fn level_three_and_four_counts() {
    let s = build_structure(3).unwrap();
    assert_eq!(s.vertex_count(), 13);
    assert_eq!(s.graph.edge_count(), 11);
    assert_eq!(s.probes.len(), 8);
    let mut sizes: Vec<usize> = s.probes.iter().map(|p| p.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![3, 3, 3, 3, 4, 4, 4, 4]);
    assert_eq!(s.weights.total(), BigUint::from(16u32));

    let s = build_structure(4).unwrap();
    assert_eq!(s.vertex_count(), 181);
    assert_eq!(s.probes.len(), 128);
    assert_eq!(s.weights.total(), BigUint::from(320u32));
}

#[test]
fn level_five_counts() {
    let s = build_structure(5).unwrap();
    assert_eq!(s.vertex_count(), 39733);
    assert_eq!(s.probes.len(), 32768);
    assert_eq!(s.weights.total(), BigUint::from(98304u32));
}

#[test]
fn tilde_small_levels() {
    let t = build_tilde(&build_structure(1).unwrap()).unwrap();
    assert_eq!(t.graph.edges(), &[(0, 1)]);
    assert_eq!(t.weights.total(), BigUint::from(2u32));

    // The completed second level is a 5-cycle.
    let t = build_tilde(&build_structure(2).unwrap()).unwrap();
    assert_eq!(t.vertex_count(), 5);
    assert_eq!(t.graph.edge_count(), 5);
    assert!(t.graph.vertices().all(|v| t.graph.degree(v) == 2));
    assert_eq!(t.weights.total(), BigUint::from(5u32));

    let t = build_tilde(&build_structure(3).unwrap()).unwrap();
    assert_eq!(t.vertex_count(), 21);
    assert_eq!(t.weights.total(), BigUint::from(24u32));
    assert_eq!(t.weights.total(), total_weight_formula(3, true));
}

#[test]
fn tilde_diagonals_match_their_probes() {
    for k in 1..=4 {
        let s = build_structure(k).unwrap();
        let t = build_tilde(&s).unwrap();
        let n = s.vertex_count();
        assert_eq!(t.vertex_count(), n + s.probes.len());
        for (i, p) in s.probes.iter().enumerate() {
            let d = (n + i) as u32;
            assert_eq!(t.graph.neighbors(d), p.members());
            assert_eq!(t.weights.get(d), 1);
        }
    }
}

#[test]
fn tilde_of_tilde_is_rejected() {
    let t = build_tilde(&build_structure(2).unwrap()).unwrap();
    assert_eq!(build_tilde(&t).unwrap_err(), ConstructionError::AlreadyTilde);
}

#[test]
fn level_zero_and_oversized_levels_are_rejected() {
    assert_eq!(build_structure(0).unwrap_err(), ConstructionError::LevelZero);
    assert!(matches!(
        build_structure(9),
        Err(ConstructionError::LevelTooLarge { k: 9, .. })
    ));
    assert!(matches!(
        build_structure_with(4, BuildConfig { max_vertices: 100 }),
        Err(ConstructionError::LevelTooLarge { k: 4, .. })
    ));
}

#[test]
fn projected_counts() {
    let expected = [1u32, 3, 13, 181, 39733];
    for (k, n) in (1..=5).zip(expected) {
        assert_eq!(projected_vertex_count(k), BigUint::from(n));
    }
    assert!(projected_vertex_count(9) > BigUint::from(u64::MAX));
}

#[test]
fn formulas() {
    assert_eq!(probe_count_formula(1), BigUint::from(1u32));
    assert_eq!(probe_count_formula(3), BigUint::from(8u32));
    assert_eq!(probe_count_formula(5), BigUint::from(32768u32));
    assert_eq!(total_weight_formula(2, false), BigUint::from(3u32));
    assert_eq!(total_weight_formula(5, false), BigUint::from(98304u32));
    assert_eq!(total_weight_formula(2, true), BigUint::from(5u32));
    assert_eq!(total_weight_formula(4, true), BigUint::from(448u32));
}

#[test]
fn builds_are_deterministic() {
    for k in 1..=4 {
        assert_eq!(build_structure(k).unwrap(), build_structure(k).unwrap());
    }
}

#[test]
fn blow_up_examples() {
    let s = build_structure(2).unwrap();
    let b = blow_up(&s.graph, &s.weights);
    assert_eq!(b.graph, s.graph);

    let s = build_structure(3).unwrap();
    assert_eq!(blow_up(&s.graph, &s.weights).graph.vertex_count(), 16);

    let g = Graph::from_edges(2, [(0, 1)]).unwrap();
    let b = blow_up(&g, &WeightMap::new(vec![2, 3]).unwrap());
    assert_eq!(b.graph.vertex_count(), 5);
    assert_eq!(b.graph.edge_count(), 6);
}

#[test]
fn json_export() {
    let s = build_structure(2).unwrap();
    let v = serde_json::to_value(s.to_json()).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["n"], 3);
    assert_eq!(v["edges"], serde_json::json!([[1, 2]]));
    assert_eq!(v["probes"], serde_json::json!([[0, 1], [0, 2]]));
    assert_eq!(v["weights"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["provenance"], serde_json::json!(["base", "copy[0]", "copy[0]/diag[0]"]));
}

fn arb_weighted_graph() -> impl Strategy<Value = (Graph, WeightMap)> {
    (1usize..10).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        (
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(1u64..5, n),
        )
            .prop_map(move |(mask, w)| {
                let edges = pairs.iter().zip(mask).filter(|(_, b)| *b).map(|(e, _)| *e);
                (
                    Graph::from_edges(n, edges).unwrap(),
                    WeightMap::new(w).unwrap(),
                )
            })
    })
}

proptest! {
    #[test]
    fn blow_up_edge_count((g, w) in arb_weighted_graph()) {
        let b = blow_up(&g, &w);
        let expected: u64 = g.edges().iter().map(|&(u, v)| w.get(u) * w.get(v)).sum();
        prop_assert_eq!(b.graph.edge_count() as u64, expected);
        prop_assert_eq!(BigUint::from(b.graph.vertex_count()), w.total());
        for &(u, v) in b.graph.edges() {
            let (cu, cv) = (b.class[u as usize].0, b.class[v as usize].0);
            prop_assert!(g.has_edge(cu, cv));
        }
    }
}
