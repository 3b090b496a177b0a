//! Exact maximum-weight independent set by branch and bound.
//!
//! Each search node applies forced reductions (isolated vertices, pendant
//! vertices at least as heavy as their neighbor), splits the candidate set
//! into connected components and solves them separately, and otherwise
//! branches on a vertex of maximum degree, include-branch first. Subtrees
//! are cut with a weighted edge-clique-cover bound: in a triangle-free graph
//! the only cliques are vertices and edges.

use crate::bits::Bits;
use crate::error::OracleError;
use crate::graph::{Graph, VertexId, WeightMap};

use super::IndependentSet;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Statistics of one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

struct Solver<'a> {
    adj: Vec<Bits>,
    weights: &'a [u64],
    nodes: u64,
    budget: u64,
}

type Found = Option<(i64, Vec<VertexId>)>;

impl Solver<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OracleError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn weight(&self, v: usize) -> i64 {
        self.weights[v] as i64
    }

    /// Optimum over `cand` if it exceeds `floor`, else `None`.
    fn solve(&mut self, mut cand: Bits, floor: i64) -> Result<Found, OracleError> {
        self.tick()?;
        let mut taken = Vec::new();
        let mut taken_weight = 0i64;
        self.reduce(&mut cand, &mut taken, &mut taken_weight);
        let floor = floor - taken_weight;

        let found = if cand.is_empty() {
            (0 > floor).then(|| (0, Vec::new()))
        } else {
            let components = self.components(&cand);
            if components.len() > 1 {
                self.solve_components(components, floor)?
            } else {
                self.branch(cand, floor)?
            }
        };
        Ok(found.map(|(w, mut set)| {
            set.extend(taken);
            (w + taken_weight, set)
        }))
    }

    fn reduce(&self, cand: &mut Bits, taken: &mut Vec<VertexId>, taken_weight: &mut i64) {
        loop {
            let mut changed = false;
            let verts: Vec<usize> = cand.iter().collect();
            for v in verts {
                if !cand.contains(v) {
                    continue;
                }
                let deg = self.adj[v].intersection_len(cand);
                if deg == 0 {
                    cand.remove(v);
                    taken.push(v as VertexId);
                    *taken_weight += self.weight(v);
                    changed = true;
                } else if deg == 1 {
                    let u = self.adj[v].iter().find(|&u| cand.contains(u)).unwrap();
                    if self.weight(v) >= self.weight(u) {
                        cand.remove(v);
                        cand.remove(u);
                        taken.push(v as VertexId);
                        *taken_weight += self.weight(v);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn components(&self, cand: &Bits) -> Vec<Bits> {
        let mut left = cand.clone();
        let mut out = Vec::new();
        loop {
            let Some(start) = left.iter().next() else {
                break;
            };
            let mut comp = Bits::new(self.adj.len());
            let mut stack = vec![start];
            left.remove(start);
            comp.insert(start);
            while let Some(v) = stack.pop() {
                let next: Vec<usize> = self.adj[v].iter().filter(|&u| left.contains(u)).collect();
                for u in next {
                    left.remove(u);
                    comp.insert(u);
                    stack.push(u);
                }
            }
            out.push(comp);
        }
        out
    }

    fn solve_components(&mut self, components: Vec<Bits>, floor: i64) -> Result<Found, OracleError> {
        let bounds: Vec<i64> = components.iter().map(|c| self.upper_bound(c)).collect();
        let mut rest_bound: i64 = bounds.iter().sum();
        if rest_bound <= floor {
            return Ok(None);
        }
        let mut exact = 0i64;
        let mut set = Vec::new();
        for (comp, bound) in components.into_iter().zip(bounds) {
            rest_bound -= bound;
            // The total beats `floor` only if this component beats `need`.
            let need = floor - exact - rest_bound;
            match self.solve(comp, need)? {
                Some((w, s)) => {
                    exact += w;
                    set.extend(s);
                }
                None => return Ok(None),
            }
        }
        Ok((exact > floor).then_some((exact, set)))
    }

    fn branch(&mut self, cand: Bits, mut floor: i64) -> Result<Found, OracleError> {
        if self.upper_bound(&cand) <= floor {
            return Ok(None);
        }
        let v = cand
            .iter()
            .max_by_key(|&v| (self.adj[v].intersection_len(&cand), self.weights[v], usize::MAX - v))
            .expect("nonempty candidate set");
        let mut best: Found = None;

        let mut with_v = cand.clone();
        with_v.difference_with(&self.adj[v]);
        with_v.remove(v);
        let wv = self.weight(v);
        if let Some((w, mut s)) = self.solve(with_v, floor - wv)? {
            s.push(v as VertexId);
            floor = w + wv;
            best = Some((w + wv, s));
        }

        let mut without_v = cand;
        without_v.remove(v);
        if let Some(found) = self.solve(without_v, floor)? {
            best = Some(found);
        }
        Ok(best)
    }

    /// Weighted cover of the candidate set by edges and single vertices.
    fn upper_bound(&self, cand: &Bits) -> i64 {
        let mut order: Vec<usize> = cand.iter().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.weights[v]));
        let mut residual: Vec<i64> = self.weights.iter().map(|&w| w as i64).collect();
        let mut bound = 0;
        for v in order {
            let r = residual[v];
            if r == 0 {
                continue;
            }
            bound += r;
            residual[v] = 0;
            let partner = self.adj[v]
                .iter()
                .filter(|&u| cand.contains(u) && residual[u] > 0)
                .max_by_key(|&u| residual[u]);
            if let Some(u) = partner {
                residual[u] = (residual[u] - r).max(0);
            }
        }
        bound
    }
}

/// Maximum-weight independent set with the default node budget.
pub fn max_weight_independent_set(
    g: &Graph,
    w: &WeightMap,
) -> Result<(u64, IndependentSet), OracleError> {
    max_weight_independent_set_with(g, w, DEFAULT_NODE_BUDGET).map(|(w, s, _)| (w, s))
}

/// Maximum-weight independent set, failing with `BudgetExceeded` once more
/// than `budget` search nodes are visited.
pub fn max_weight_independent_set_with(
    g: &Graph,
    w: &WeightMap,
    budget: u64,
) -> Result<(u64, IndependentSet, SearchStats), OracleError> {
    assert_eq!(g.vertex_count(), w.len(), "one weight per vertex");
    let n = g.vertex_count();
    let adj = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for &u in g.neighbors(v as VertexId) {
                b.insert(u as usize);
            }
            b
        })
        .collect();
    let mut solver = Solver {
        adj,
        weights: w.as_slice(),
        nodes: 0,
        budget,
    };
    let (weight, set) = solver
        .solve(Bits::full(n), -1)?
        .expect("the empty set beats floor -1");
    let stats = SearchStats {
        nodes: solver.nodes,
    };
    Ok((weight as u64, IndependentSet::new(set), stats))
}
