use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tfseg::certificate::{Verdict, Witness};
use tfseg::construction::Probe;
use tfseg::error::OracleError;
use tfseg::oracle::{
    certify_coloring_forcing, check_probe_hit_inequality, check_probe_hits_exhaustive,
    check_probe_hits_sampled, check_probes_independent, chromatic_number,
    enumerate_independent_sets, exists_coloring_all_probes_below, independence_polynomial,
    independence_ratio, is_triangle_free, max_weight_independent_set,
    max_weight_independent_set_with, IndependentSet,
};
use tfseg::{blow_up, build_structure, build_tilde, Graph, WeightMap};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn brute_force_mwis(g: &Graph, w: &WeightMap) -> u64 {
    enumerate_independent_sets(g)
        .unwrap()
        .map(|s| w.weight_of(s.members()))
        .max()
        .unwrap()
}

#[test]
fn triangle_checks() {
    let cert = is_triangle_free(&Graph::complete(3));
    assert_eq!(cert.verdict, Verdict::Fail);
    assert_eq!(cert.witness, Some(Witness::Vertices(vec![0, 1, 2])));
    for k in 1..=4 {
        let s = build_structure(k).unwrap();
        assert!(is_triangle_free(&s.graph).passed());
        assert!(is_triangle_free(&build_tilde(&s).unwrap().graph).passed());
    }
}

#[test]
fn probe_independence() {
    assert!(check_probes_independent(&build_structure(2).unwrap()).passed());
    assert!(check_probes_independent(&build_structure(4).unwrap()).passed());

    // A probe containing a diagonal together with a member of its probe.
    let mut s = build_structure(2).unwrap();
    s.probes.push(Probe::new(vec![1, 2]));
    let cert = check_probes_independent(&s);
    assert!(cert.failed());
    assert_eq!(cert.witness, Some(Witness::ProbeEdge { probe: 2, edge: (1, 2) }));
}

#[test]
fn max_weight_examples() {
    let s = build_structure(2).unwrap();
    assert_eq!(max_weight_independent_set(&s.graph, &s.weights).unwrap().0, 2);
    let s = build_structure(3).unwrap();
    assert_eq!(max_weight_independent_set(&s.graph, &s.weights).unwrap().0, 8);
    let t = build_tilde(&build_structure(2).unwrap()).unwrap();
    assert_eq!(max_weight_independent_set(&t.graph, &t.weights).unwrap().0, 2);
}

#[test]
fn max_weight_matches_enumeration_on_construction_graphs() {
    for k in 1..=3 {
        let s = build_structure(k).unwrap();
        let t = build_tilde(&s).unwrap();
        for st in [&s, &t] {
            let (best, set) = max_weight_independent_set(&st.graph, &st.weights).unwrap();
            assert!(st.graph.is_independent(set.members()));
            assert_eq!(best, brute_force_mwis(&st.graph, &st.weights), "k={k}");
        }
    }
}

#[test]
fn max_weight_matches_enumeration_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..100 {
        let n = rng.gen_range(1..=20);
        let p = rng.gen_range(0.05..0.6);
        let g = random_graph(&mut rng, n, p);
        let w = WeightMap::new((0..n).map(|_| rng.gen_range(1..20)).collect()).unwrap();
        let (best, set) = max_weight_independent_set(&g, &w).unwrap();
        assert!(g.is_independent(set.members()), "round {round}");
        assert_eq!(w.weight_of(set.members()), best, "round {round}");
        assert_eq!(best, brute_force_mwis(&g, &w), "round {round}");
    }
}

#[test]
fn node_budget() {
    let t = build_tilde(&build_structure(3).unwrap()).unwrap();
    assert_eq!(
        max_weight_independent_set_with(&t.graph, &t.weights, 1).unwrap_err(),
        OracleError::BudgetExceeded { budget: 1 }
    );
}

#[test]
fn probe_hit_inequality_examples() {
    let s = build_structure(1).unwrap();
    let cert = check_probe_hit_inequality(&s, &IndependentSet::new(vec![0])).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.bounds["hits"], "1");

    let s = build_structure(2).unwrap();
    let cert = check_probe_hit_inequality(&s, &IndependentSet::new(vec![0, 1])).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.bounds["hits"], "2");
    assert_eq!(cert.bounds["weight"], "2");

    assert_eq!(
        check_probe_hit_inequality(&s, &IndependentSet::new(vec![1, 2])).unwrap_err(),
        OracleError::NotIndependent(1, 2)
    );
}

#[test]
fn probe_hits_exhaustive_counts_every_set() {
    for k in 1..=3 {
        let s = build_structure(k).unwrap();
        let cert = check_probe_hits_exhaustive(&s, 25).unwrap();
        assert!(cert.passed(), "k={k}");
        let total: u64 = independence_polynomial(&s.graph).unwrap().iter().sum();
        assert_eq!(cert.bounds["sets_checked"], total.to_string());
    }
    let s = build_structure(4).unwrap();
    assert!(matches!(
        check_probe_hits_exhaustive(&s, 25),
        Err(OracleError::TooLargeForExhaustive { n: 181, cap: 25 })
    ));
}

#[test]
fn probe_hits_sampled_at_level_four() {
    let s = build_structure(4).unwrap();
    let a = check_probe_hits_sampled(&s, 2000, 11);
    assert!(a.passed());
    let b = check_probe_hits_sampled(&s, 2000, 11);
    assert_eq!(a.bounds, b.bounds);
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_independent_sets(&Graph::empty(2)).unwrap().count(), 4);
    let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
    let sets: Vec<_> = enumerate_independent_sets(&edge).unwrap().collect();
    assert_eq!(sets.len(), 3);
    assert!(sets.contains(&IndependentSet::new(vec![])));
    assert!(matches!(
        enumerate_independent_sets(&Graph::empty(30)),
        Err(OracleError::TooLargeForExhaustive { n: 30, .. })
    ));
}

#[test]
fn enumeration_matches_polynomial() {
    for k in 1..=3 {
        let s = build_structure(k).unwrap();
        let t = build_tilde(&s).unwrap();
        for g in [&s.graph, &t.graph] {
            let mut by_size = vec![0u64; g.vertex_count() + 1];
            for set in enumerate_independent_sets(g).unwrap() {
                assert!(g.is_independent(set.members()));
                by_size[set.len()] += 1;
            }
            assert_eq!(by_size, independence_polynomial(g).unwrap());
        }
    }
}

#[test]
fn coloring_forcing() {
    let s2 = build_structure(2).unwrap();
    assert_eq!(exists_coloring_all_probes_below(&s2, 2).unwrap(), None);
    let col = exists_coloring_all_probes_below(&s2, 3).unwrap().unwrap();
    assert!(col.is_proper(&s2.graph));
    for k in 1..=3 {
        let s = build_structure(k).unwrap();
        assert_eq!(exists_coloring_all_probes_below(&s, k as usize).unwrap(), None, "k={k}");
        let col = exists_coloring_all_probes_below(&s, k as usize + 1).unwrap().unwrap();
        assert!(col.is_proper(&s.graph));
        assert!(s.probes.iter().all(|p| col.distinct_on(p.members()) <= k as usize));
        assert!(certify_coloring_forcing(&s, k as usize, 25).passed());
        assert!(certify_coloring_forcing(&s, k as usize + 1, 25).failed());
    }
    let s4 = build_structure(4).unwrap();
    assert_eq!(certify_coloring_forcing(&s4, 4, 25).verdict, Verdict::Skipped);
}

#[test]
fn chromatic_numbers() {
    for k in 1..=3u32 {
        let t = build_tilde(&build_structure(k).unwrap()).unwrap();
        assert_eq!(chromatic_number(&t.graph).unwrap(), k as usize + 1);
    }
    assert_eq!(chromatic_number(&Graph::cycle(5)).unwrap(), 3);
    assert_eq!(chromatic_number(&Graph::complete(4)).unwrap(), 4);
    assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
}

#[test]
fn ratios() {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let s = build_structure(2).unwrap();
    assert_eq!(independence_ratio(&s.graph, &s.weights).unwrap(), r(2, 3));
    let t = build_tilde(&s).unwrap();
    assert_eq!(independence_ratio(&t.graph, &t.weights).unwrap(), r(2, 5));
    let s = build_structure(4).unwrap();
    assert!(independence_ratio(&s.graph, &s.weights).unwrap() <= r(2, 5));
}

#[test]
fn blow_up_preserves_ratio_on_construction_graphs() {
    for k in 1..=4 {
        let s = build_structure(k).unwrap();
        let b = blow_up(&s.graph, &s.weights).graph;
        assert_eq!(
            independence_ratio(&b, &WeightMap::unit(b.vertex_count())).unwrap(),
            independence_ratio(&s.graph, &s.weights).unwrap(),
            "k={k}"
        );
    }
}

fn arb_weighted_graph(max_n: usize) -> impl Strategy<Value = (Graph, WeightMap)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        (
            proptest::collection::vec(any::<bool>(), pairs.len()),
            proptest::collection::vec(1u64..4, n),
        )
            .prop_map(move |(mask, w)| {
                let edges = pairs.iter().zip(mask).filter(|(_, b)| *b).map(|(e, _)| *e);
                (Graph::from_edges(n, edges).unwrap(), WeightMap::new(w).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mwis_agrees_with_enumeration((g, w) in arb_weighted_graph(16)) {
        let (best, set) = max_weight_independent_set(&g, &w).unwrap();
        prop_assert!(g.is_independent(set.members()));
        prop_assert_eq!(best, brute_force_mwis(&g, &w));
    }

    #[test]
    fn blow_up_preserves_ratio((g, w) in arb_weighted_graph(7)) {
        let b = blow_up(&g, &w).graph;
        prop_assert_eq!(
            independence_ratio(&b, &WeightMap::unit(b.vertex_count())).unwrap(),
            independence_ratio(&g, &w).unwrap()
        );
    }

    #[test]
    fn chromatic_number_coloring_is_proper((g, _) in arb_weighted_graph(10)) {
        let chi = chromatic_number(&g).unwrap();
        let col = tfseg::oracle::find_coloring(&g, chi).unwrap();
        prop_assert!(col.is_proper(&g));
        if chi > 0 {
            prop_assert!(tfseg::oracle::find_coloring(&g, chi - 1).is_none());
        }
    }
}
