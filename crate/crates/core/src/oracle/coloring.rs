//! Exact coloring searches by backtracking.
//!
//! Colors are assigned in canonical first-use order: a vertex may take color
//! `c` only if colors `0..c` already appear earlier, so permutations of color
//! names are never explored twice.

use serde::{Deserialize, Serialize};

use crate::construction::Structure;
use crate::error::OracleError;
use crate::graph::{Graph, VertexId};

pub const DEFAULT_COLORING_CAP: usize = 25;

/// A color (0-based) per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn color(&self, v: VertexId) -> u32 {
        self.0[v as usize]
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.color(u) != self.color(v))
    }

    pub fn color_count(&self) -> usize {
        self.0.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// Number of distinct colors on `set`.
    pub fn distinct_on(&self, set: &[VertexId]) -> usize {
        let mut seen: Vec<u32> = set.iter().map(|&v| self.color(v)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

// Vertex order: repeatedly take the vertex with most already-ordered
// neighbors, breaking ties by degree, then id.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v as VertexId), usize::MAX - v))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &u in g.neighbors(v as VertexId) {
            links[u as usize] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<Option<u32>>,
    // Probe constraints: per vertex the probes containing it, and per probe
    // the multiplicity of each color and the number of distinct colors.
    probes_of: Vec<Vec<usize>>,
    probe_counts: Vec<Vec<u32>>,
    probe_distinct: Vec<usize>,
    probe_limit: usize,
    max_colors: usize,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let top = (used + 1).min(self.max_colors);
        for c in 0..top {
            if self.g
                .neighbors(v as VertexId)
                .iter()
                .any(|&u| self.colors[u as usize] == Some(c as u32))
            {
                continue;
            }
            if !self.assign_probes(v, c) {
                self.unassign_probes(v, c);
                continue;
            }
            self.colors[v] = Some(c as u32);
            if self.run(depth + 1, used.max(c + 1)) {
                return true;
            }
            self.colors[v] = None;
            self.unassign_probes(v, c);
        }
        false
    }

    // Returns false when some probe now shows `probe_limit` distinct colors.
    // The caller undoes the update either way on backtrack.
    fn assign_probes(&mut self, v: usize, c: usize) -> bool {
        let mut ok = true;
        for &p in &self.probes_of[v] {
            let counts = &mut self.probe_counts[p];
            if counts[c] == 0 {
                self.probe_distinct[p] += 1;
                if self.probe_distinct[p] >= self.probe_limit {
                    ok = false;
                }
            }
            counts[c] += 1;
        }
        ok
    }

    fn unassign_probes(&mut self, v: usize, c: usize) {
        for &p in &self.probes_of[v] {
            let counts = &mut self.probe_counts[p];
            counts[c] -= 1;
            if counts[c] == 0 {
                self.probe_distinct[p] -= 1;
            }
        }
    }

    fn coloring(&self) -> Coloring {
        Coloring(self.colors.iter().map(|c| c.expect("complete")).collect())
    }
}

fn new_search<'a>(
    g: &'a Graph,
    probes: &[Vec<VertexId>],
    probe_limit: usize,
    max_colors: usize,
) -> Search<'a> {
    let n = g.vertex_count();
    let mut probes_of = vec![Vec::new(); n];
    for (i, p) in probes.iter().enumerate() {
        for &v in p {
            probes_of[v as usize].push(i);
        }
    }
    Search {
        g,
        order: search_order(g),
        colors: vec![None; n],
        probes_of,
        probe_counts: vec![vec![0; n.max(1)]; probes.len()],
        probe_distinct: vec![0; probes.len()],
        probe_limit,
        max_colors,
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        Err(OracleError::TooLargeForSearch { n, cap })
    } else {
        Ok(())
    }
}

/// Searches for a proper coloring (any number of colors) under which every
/// probe carries fewer than `c` distinct colors. `None` means every proper
/// coloring puts at least `c` colors on some probe.
pub fn exists_coloring_all_probes_below(
    s: &Structure,
    c: usize,
) -> Result<Option<Coloring>, OracleError> {
    exists_coloring_all_probes_below_with(s, c, DEFAULT_COLORING_CAP)
}

pub fn exists_coloring_all_probes_below_with(
    s: &Structure,
    c: usize,
    cap: usize,
) -> Result<Option<Coloring>, OracleError> {
    let n = s.vertex_count();
    check_cap(n, cap)?;
    if c == 0 {
        return Ok(None);
    }
    let probes: Vec<Vec<VertexId>> = s.probes.iter().map(|p| p.members().to_vec()).collect();
    let mut search = new_search(&s.graph, &probes, c, n.max(1));
    Ok(search.run(0, 0).then(|| search.coloring()))
}

/// A proper coloring with at most `colors` colors, if one exists.
pub fn find_coloring(g: &Graph, colors: usize) -> Option<Coloring> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Coloring(Vec::new()));
    }
    if colors == 0 {
        return None;
    }
    let mut search = new_search(g, &[], usize::MAX, colors);
    search.run(0, 0).then(|| search.coloring())
}

/// Exact chromatic number by trying `1, 2, ...` colors.
pub fn chromatic_number(g: &Graph) -> Result<usize, OracleError> {
    chromatic_number_with(g, DEFAULT_COLORING_CAP).map(|(chi, _)| chi)
}

/// Chromatic number together with an optimal coloring.
pub fn chromatic_number_with(g: &Graph, cap: usize) -> Result<(usize, Coloring), OracleError> {
    let n = g.vertex_count();
    check_cap(n, cap)?;
    for c in 0..=n {
        if let Some(col) = find_coloring(g, c) {
            return Ok((c, col));
        }
    }
    unreachable!("n colors always suffice")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::cycle(7)).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete(5)).unwrap(), 5);
    }

    #[test]
    fn returned_coloring_is_proper() {
        let g = Graph::cycle(9);
        let (chi, col) = chromatic_number_with(&g, 25).unwrap();
        assert_eq!(chi, 3);
        assert!(col.is_proper(&g));
        assert_eq!(col.color_count(), 3);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            chromatic_number_with(&Graph::empty(30), 25).unwrap_err(),
            OracleError::TooLargeForSearch { n: 30, cap: 25 }
        );
    }
}
