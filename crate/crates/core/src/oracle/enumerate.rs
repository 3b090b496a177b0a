//! Exhaustive enumeration of independent sets and the independence
//! polynomial, for small graphs only.

use std::collections::HashMap;

use crate::error::OracleError;
use crate::graph::{Graph, VertexId};

use super::IndependentSet;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 25;

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Streams every independent set exactly once, the empty set first. Each set
/// is produced by adding vertices in increasing order, so no set is reached
/// twice.
pub struct IndependentSets {
    n: usize,
    nbrs: Vec<u64>,
    // (members, blocked, next vertex to consider)
    stack: Vec<(u64, u64, usize)>,
}

impl Iterator for IndependentSets {
    type Item = IndependentSet;

    fn next(&mut self) -> Option<IndependentSet> {
        let (mask, blocked, start) = self.stack.pop()?;
        for v in (start..self.n).rev() {
            if blocked >> v & 1 == 0 {
                self.stack
                    .push((mask | 1 << v, blocked | self.nbrs[v] | 1 << v, v + 1));
            }
        }
        Some(IndependentSet::from_mask(mask))
    }
}

pub fn enumerate_independent_sets(g: &Graph) -> Result<IndependentSets, OracleError> {
    enumerate_independent_sets_with(g, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn enumerate_independent_sets_with(
    g: &Graph,
    cap: usize,
) -> Result<IndependentSets, OracleError> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(OracleError::TooLargeForExhaustive { n, cap });
    }
    Ok(IndependentSets {
        n,
        nbrs: neighbor_masks(g),
        stack: vec![(0, 0, 0)],
    })
}

/// Coefficients of the independence polynomial: entry `i` counts the
/// independent sets of size `i`. Computed by the deletion recurrence
/// `I(G) = I(G - v) + x * I(G - N[v])` with memoization on the vertex set.
pub fn independence_polynomial(g: &Graph) -> Result<Vec<u64>, OracleError> {
    let n = g.vertex_count();
    if n > 63 {
        return Err(OracleError::TooLargeForExhaustive { n, cap: 63 });
    }
    let nbrs = neighbor_masks(g);
    let mut memo = HashMap::new();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut poly = poly_rec(full, &nbrs, &mut memo);
    poly.resize(n + 1, 0);
    Ok(poly)
}

fn poly_rec(set: u64, nbrs: &[u64], memo: &mut HashMap<u64, Vec<u64>>) -> Vec<u64> {
    if set == 0 {
        return vec![1];
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let v = set.trailing_zeros() as usize;
    let without = poly_rec(set & !(1 << v), nbrs, memo);
    let with = poly_rec(set & !(1 << v) & !nbrs[v], nbrs, memo);
    let mut out = without;
    if out.len() < with.len() + 1 {
        out.resize(with.len() + 1, 0);
    }
    for (i, c) in with.into_iter().enumerate() {
        out[i + 1] += c;
    }
    memo.insert(set, out.clone());
    out
}

/// True when no vertex outside `set` could be added.
pub fn is_maximal(g: &Graph, set: &IndependentSet) -> bool {
    let members = set.members();
    g.vertices().all(|v| {
        members.binary_search(&v).is_ok()
            || g.neighbors(v).iter().any(|u| members.binary_search(u).is_ok())
    })
}

impl IndependentSet {
    fn from_mask(mut mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            members.push(mask.trailing_zeros() as VertexId);
            mask &= mask - 1;
        }
        IndependentSet::new(members)
    }
}
