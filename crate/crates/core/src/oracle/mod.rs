//! Independent exact checks of the combinatorial claims: triangle-freeness,
//! probe independence, the probe-hit inequality, coloring forcing and
//! independence bounds.

mod coloring;
mod enumerate;
mod mwis;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use coloring::{
    chromatic_number, chromatic_number_with, exists_coloring_all_probes_below,
    exists_coloring_all_probes_below_with, find_coloring, Coloring, DEFAULT_COLORING_CAP,
};
pub use enumerate::{
    enumerate_independent_sets, enumerate_independent_sets_with, independence_polynomial,
    is_maximal, IndependentSets, DEFAULT_EXHAUSTIVE_CAP,
};
pub use mwis::{
    max_weight_independent_set, max_weight_independent_set_with, SearchStats,
    DEFAULT_NODE_BUDGET,
};

use crate::certificate::{Certificate, Witness};
use crate::construction::Structure;
use crate::error::OracleError;
use crate::graph::{Graph, VertexId, WeightMap};

/// Sorted set of vertices, independent in the graph it was taken from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndependentSet(Vec<VertexId>);

impl IndependentSet {
    pub fn new(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        members.dedup();
        IndependentSet(members)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A triangle, if the graph has one.
pub fn find_triangle(g: &Graph) -> Option<[VertexId; 3]> {
    for &(u, v) in g.edges() {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let mut t = [u, v, a[i]];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}

pub fn is_triangle_free(g: &Graph) -> Certificate {
    let start = Instant::now();
    let cert = match find_triangle(g) {
        None => Certificate::pass("triangle_free"),
        Some(t) => Certificate::fail("triangle_free", Witness::Vertices(t.to_vec())),
    };
    cert.with_bound("vertices", g.vertex_count())
        .with_bound("edges", g.edge_count())
        .timed(start)
}

pub fn check_probes_independent(s: &Structure) -> Certificate {
    let start = Instant::now();
    for (i, p) in s.probes.iter().enumerate() {
        if let Some(edge) = s.graph.edge_within(p.members()) {
            return Certificate::fail("probes_independent", Witness::ProbeEdge { probe: i, edge })
                .timed(start);
        }
    }
    Certificate::pass("probes_independent")
        .with_bound("probes", s.probes.len())
        .timed(start)
}

/// Number of probes meeting `set`.
pub fn probes_hit(s: &Structure, set: &[VertexId]) -> usize {
    s.probes
        .iter()
        .filter(|p| set.iter().any(|&v| p.contains(v)))
        .count()
}

/// Checks that the independent set `i` meets at least as many probes as its
/// weight.
pub fn check_probe_hit_inequality(
    s: &Structure,
    i: &IndependentSet,
) -> Result<Certificate, OracleError> {
    let start = Instant::now();
    if let Some((u, v)) = s.graph.edge_within(i.members()) {
        return Err(OracleError::NotIndependent(u, v));
    }
    let hits = probes_hit(s, i.members()) as u64;
    let weight = s.weights.weight_of(i.members());
    let cert = if hits >= weight {
        Certificate::pass("probe_hits")
    } else {
        Certificate::fail("probe_hits", Witness::Vertices(i.members().to_vec()))
    };
    Ok(cert
        .with_bound("hits", hits)
        .with_bound("weight", weight)
        .timed(start))
}

/// Runs the probe-hit inequality over every independent set of the graph.
pub fn check_probe_hits_exhaustive(s: &Structure, cap: usize) -> Result<Certificate, OracleError> {
    let start = Instant::now();
    let by_vertex = s.probes_by_vertex();
    let mut stamp = vec![usize::MAX; s.probes.len()];
    let mut checked = 0u64;
    for (round, set) in enumerate_independent_sets_with(&s.graph, cap)?.enumerate() {
        checked += 1;
        let (hits, weight) = hits_and_weight(s, &by_vertex, &mut stamp, round, set.members());
        if hits < weight {
            return Ok(Certificate::fail(
                "probe_hits_exhaustive",
                Witness::Vertices(set.members().to_vec()),
            )
            .with_bound("hits", hits)
            .with_bound("weight", weight)
            .timed(start));
        }
    }
    Ok(Certificate::pass("probe_hits_exhaustive")
        .with_bound("sets_checked", checked)
        .with_bound("violations", 0)
        .timed(start))
}

/// Random maximal independent sets by greedy insertion in a shuffled order;
/// each must satisfy the probe-hit inequality.
pub fn check_probe_hits_sampled(s: &Structure, samples: u64, seed: u64) -> Certificate {
    let start = Instant::now();
    let by_vertex = s.probes_by_vertex();
    let mut stamp = vec![usize::MAX; s.probes.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.vertex_count();
    let mut order: Vec<VertexId> = (0..n as VertexId).collect();
    let mut blocked = vec![usize::MAX; n];
    let mut set = Vec::new();
    let mut heaviest = 0;
    for round in 0..samples as usize {
        order.shuffle(&mut rng);
        set.clear();
        for &v in &order {
            if blocked[v as usize] != round {
                set.push(v);
                blocked[v as usize] = round;
                for &u in s.graph.neighbors(v) {
                    blocked[u as usize] = round;
                }
            }
        }
        let (hits, weight) = hits_and_weight(s, &by_vertex, &mut stamp, round, &set);
        heaviest = heaviest.max(weight);
        if hits < weight {
            let mut members = set.clone();
            members.sort_unstable();
            return Certificate::fail("probe_hits_sampled", Witness::Vertices(members))
                .with_bound("hits", hits)
                .with_bound("weight", weight)
                .timed(start);
        }
    }
    Certificate::pass("probe_hits_sampled")
        .with_bound("samples", samples)
        .with_bound("seed", seed)
        .with_bound("heaviest_sampled", heaviest)
        .timed(start)
}

fn hits_and_weight(
    s: &Structure,
    by_vertex: &[Vec<u32>],
    stamp: &mut [usize],
    round: usize,
    set: &[VertexId],
) -> (u64, u64) {
    let mut hits = 0u64;
    let mut weight = 0u64;
    for &v in set {
        weight += s.weights.get(v);
        for &p in &by_vertex[v as usize] {
            if stamp[p as usize] != round {
                stamp[p as usize] = round;
                hits += 1;
            }
        }
    }
    (hits, weight)
}

/// Passes when every proper coloring puts at least `c` colors on some probe;
/// a failure carries the coloring that avoids it.
pub fn certify_coloring_forcing(s: &Structure, c: usize, cap: usize) -> Certificate {
    let start = Instant::now();
    let check = format!("coloring_forces_{c}_colors");
    match exists_coloring_all_probes_below_with(s, c, cap) {
        Ok(None) => Certificate::pass(check).timed(start),
        Ok(Some(col)) => Certificate::fail(check, Witness::Coloring(col.0)).timed(start),
        Err(e) => Certificate::skipped(check, e.to_string()).timed(start),
    }
}

/// Exact `max independent weight / total weight`.
pub fn independence_ratio(g: &Graph, w: &WeightMap) -> Result<BigRational, OracleError> {
    independence_ratio_with(g, w, DEFAULT_NODE_BUDGET)
}

pub fn independence_ratio_with(
    g: &Graph,
    w: &WeightMap,
    budget: u64,
) -> Result<BigRational, OracleError> {
    let (best, _, _) = max_weight_independent_set_with(g, w, budget)?;
    Ok(BigRational::new(
        BigInt::from(best),
        BigInt::from(w.total()),
    ))
}
