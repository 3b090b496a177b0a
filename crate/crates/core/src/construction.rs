//! The recursive triangle-free construction with probes and weights.
//!
//! Level 1 is a single vertex with one probe `{v}`. Level `k` takes a base
//! copy `G` of level `k-1`, one more copy `G_P` per probe `P` of the base,
//! and for every probe `Q` of `G_P` a diagonal vertex `d_Q` adjacent to the
//! members of `Q`. The probes of level `k` are `P ∪ Q` and `P ∪ {d_Q}`.
//!
//! Weights: base-copy weights are multiplied by the number of probes of
//! level `k-1`, inner copies keep their weights and diagonals weigh 1.
//!
//! Vertex ids follow construction order: the base copy, then each probe's
//! copy in probe order, then the diagonals in `(P, Q)` order. Probes are
//! emitted as `P ∪ Q` followed by `P ∪ {d_Q}` for each `P`, then each `Q`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::graph::{Graph, VertexId, WeightMap};

/// Default cap on the number of vertices a level may have; admits `k <= 5`.
pub const DEFAULT_MAX_VERTICES: usize = 50_000;

/// One step of a vertex's origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Inside the base copy of the previous level.
    Base,
    /// Inside the copy attached to the given probe of the base copy.
    InCopyOf(u32),
    /// The diagonal added for the given probe (of the enclosing copy, or of
    /// the whole structure for the completion diagonals).
    Diagonal(u32),
}

/// Path of copy-steps from the top level down to the vertex. The single
/// vertex of level 1 has the empty path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Provenance(pub Vec<Step>);

impl Provenance {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// True for vertices created as a diagonal at any level.
    pub fn is_diagonal(&self) -> bool {
        matches!(self.0.last(), Some(Step::Diagonal(_)))
    }

    fn prefixed(&self, first: Step) -> Provenance {
        let mut steps = Vec::with_capacity(self.0.len() + 1);
        steps.push(first);
        steps.extend_from_slice(&self.0);
        Provenance(steps)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("v");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            match step {
                Step::Base => f.write_str("base")?,
                Step::InCopyOf(p) => write!(f, "copy[{p}]")?,
                Step::Diagonal(q) => write!(f, "diag[{q}]")?,
            }
        }
        Ok(())
    }
}

/// A probe: a nonempty, sorted set of vertices that is independent in the
/// graph it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Probe(Vec<VertexId>);

impl Probe {
    /// Sorts and deduplicates the members.
    pub fn new(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Probe(members)
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

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// One level of the construction: graph, probes, weights and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub k: u32,
    pub graph: Graph,
    pub probes: Vec<Probe>,
    pub weights: WeightMap,
    pub provenance: Vec<Provenance>,
    pub tilde: bool,
}

impl Structure {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// For each vertex, the indices of the probes containing it.
    pub fn probes_by_vertex(&self) -> Vec<Vec<u32>> {
        let mut by_vertex = vec![Vec::new(); self.vertex_count()];
        for (i, p) in self.probes.iter().enumerate() {
            for &v in p.members() {
                by_vertex[v as usize].push(i as u32);
            }
        }
        by_vertex
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            k: self.k,
            tilde: self.tilde,
            n: self.vertex_count(),
            edges: self.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            probes: self.probes.iter().map(|p| p.members().to_vec()).collect(),
            weights: self.weights.as_slice().to_vec(),
            provenance: self.provenance.iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(Some(&self.weights))
    }
}

/// JSON form of a [`Structure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub k: u32,
    pub tilde: bool,
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub probes: Vec<Vec<VertexId>>,
    pub weights: Vec<u64>,
    pub provenance: Vec<String>,
}

/// Size limits for [`build_structure_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    pub max_vertices: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// Vertex count of level `k` by the recurrence `n_k = n_{k-1} + p(n_{k-1} + p)`
/// with `p = |probes of level k-1|`.
pub fn projected_vertex_count(k: u32) -> BigUint {
    assert!(k >= 1);
    let mut n = BigUint::one();
    let mut p = BigUint::one();
    for _ in 1..k {
        n = &n + &p * (&n + &p);
        p = &p * &p * 2u32;
    }
    n
}

/// Builds level `k` with the default vertex cap.
pub fn build_structure(k: u32) -> Result<Structure, ConstructionError> {
    build_structure_with(k, BuildConfig::default())
}

pub fn build_structure_with(k: u32, config: BuildConfig) -> Result<Structure, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::LevelZero);
    }
    let projected = projected_vertex_count(k);
    if projected > BigUint::from(config.max_vertices) {
        return Err(ConstructionError::LevelTooLarge {
            k,
            projected,
            cap: config.max_vertices,
        });
    }
    let mut s = level_one();
    for _ in 1..k {
        s = next_level(&s);
    }
    Ok(s)
}

fn level_one() -> Structure {
    Structure {
        k: 1,
        graph: Graph::empty(1),
        probes: vec![Probe(vec![0])],
        weights: WeightMap::unit(1),
        provenance: vec![Provenance::default()],
        tilde: false,
    }
}

fn next_level(prev: &Structure) -> Structure {
    let n0 = prev.vertex_count() as VertexId;
    let p = prev.probes.len() as VertexId;
    let copy_offset = |i: VertexId| n0 + i * n0;
    let diagonal = |i: VertexId, j: VertexId| n0 + p * n0 + i * p + j;
    let n = (n0 + p * n0 + p * p) as usize;

    let mut edges = Vec::with_capacity(prev.graph.edge_count() * (1 + p as usize));
    edges.extend_from_slice(prev.graph.edges());
    for i in 0..p {
        let off = copy_offset(i);
        edges.extend(prev.graph.edges().iter().map(|&(u, v)| (u + off, v + off)));
    }
    for i in 0..p {
        let off = copy_offset(i);
        for (j, q) in prev.probes.iter().enumerate() {
            let d = diagonal(i, j as VertexId);
            edges.extend(q.members().iter().map(|&m| (m + off, d)));
        }
    }
    edges.sort_unstable();
    let graph = Graph::from_sorted_unique(n, edges);

    let mut probes = Vec::with_capacity((2 * p * p) as usize);
    for (i, outer) in prev.probes.iter().enumerate() {
        let off = copy_offset(i as VertexId);
        for (j, inner) in prev.probes.iter().enumerate() {
            // outer ids < off <= shifted inner ids < every diagonal id
            let mut union = outer.members().to_vec();
            union.extend(inner.members().iter().map(|&m| m + off));
            probes.push(Probe(union));
            let mut with_diag = outer.members().to_vec();
            with_diag.push(diagonal(i as VertexId, j as VertexId));
            probes.push(Probe(with_diag));
        }
    }

    let scale = u64::from(p);
    let mut weights = WeightMap::unit(0);
    for &w in prev.weights.as_slice() {
        weights.push(w * scale);
    }
    for _ in 0..p {
        for &w in prev.weights.as_slice() {
            weights.push(w);
        }
    }
    for _ in 0..p * p {
        weights.push(1);
    }

    let mut provenance = Vec::with_capacity(n);
    provenance.extend(prev.provenance.iter().map(|pv| pv.prefixed(Step::Base)));
    for i in 0..p {
        provenance.extend(prev.provenance.iter().map(|pv| pv.prefixed(Step::InCopyOf(i))));
    }
    for i in 0..p {
        for j in 0..p {
            provenance.push(Provenance(vec![Step::InCopyOf(i), Step::Diagonal(j)]));
        }
    }

    Structure {
        k: prev.k + 1,
        graph,
        probes,
        weights,
        provenance,
        tilde: false,
    }
}

/// Adds a diagonal `d_P` of weight 1 for every probe `P`, adjacent to exactly
/// the members of `P`. Probes are kept as they are.
pub fn build_tilde(s: &Structure) -> Result<Structure, ConstructionError> {
    if s.tilde {
        return Err(ConstructionError::AlreadyTilde);
    }
    let n0 = s.vertex_count() as VertexId;
    let n = s.vertex_count() + s.probes.len();
    let mut edges = s.graph.edges().to_vec();
    for (t, probe) in s.probes.iter().enumerate() {
        edges.extend(probe.members().iter().map(|&m| (m, n0 + t as VertexId)));
    }
    edges.sort_unstable();
    let mut weights = s.weights.clone();
    let mut provenance = s.provenance.clone();
    for t in 0..s.probes.len() {
        weights.push(1);
        provenance.push(Provenance(vec![Step::Diagonal(t as u32)]));
    }
    Ok(Structure {
        k: s.k,
        graph: Graph::from_sorted_unique(n, edges),
        probes: s.probes.clone(),
        weights,
        provenance,
        tilde: true,
    })
}

fn exponent(k: u32) -> u32 {
    assert!((1..=24).contains(&k), "closed forms are evaluated for 1 <= k <= 24");
    (1u32 << (k - 1)) - 1
}

/// `2^(2^(k-1) - 1)`: the number of probes at level `k`, which is also the
/// bound on the weight of any independent set.
pub fn probe_count_formula(k: u32) -> BigUint {
    BigUint::one() << exponent(k)
}

/// `(k+1)/2 * 2^(2^(k-1)-1)`, or `(k+3)/2 * ...` for the completed variant.
pub fn total_weight_formula(k: u32, tilde: bool) -> BigUint {
    let factor = if tilde { k + 3 } else { k + 1 };
    (probe_count_formula(k) * factor) >> 1u32
}

/// Convenience: closed-form vertex count as `usize` when it fits.
pub fn projected_vertex_count_usize(k: u32) -> Option<usize> {
    projected_vertex_count(k).to_usize()
}
