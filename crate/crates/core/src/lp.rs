//! Optimal vertex weightings via an exact rational linear program.
//!
//! For a graph `G`, the best achievable ratio between the heaviest
//! independent set and the total weight is
//!
//! ```text
//! minimize t  subject to  sum_v w_v = 1,
//!                          sum_{v in I} w_v <= t   for every maximal independent set I,
//!                          w >= 0.
//! ```
//!
//! Restricting to maximal sets loses nothing since weights are nonnegative.
//! We solve the equivalent packing problem `max sum_v u_v` subject to
//! `sum_{v in I} u_v <= 1`, `u >= 0`, whose optimum is the fractional
//! chromatic number `chi_f`; then `t = 1/chi_f` and `w = u/chi_f`. The dual
//! multipliers, scaled the same way, form a probability distribution over
//! maximal independent sets covering every vertex with probability at least
//! `t`, which proves by weak duality that no weighting does better.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Witness};
use crate::error::LpError;
use crate::graph::{Graph, VertexId, WeightMap};
use crate::oracle::IndependentSet;
use crate::rational::{format_q, Q};

pub const DEFAULT_MIS_CAP: usize = 30;

/// Nonnegative rational weights summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalWeighting(Vec<Q>);

impl RationalWeighting {
    /// Normalizes positive integer weights.
    pub fn from_weights(w: &WeightMap) -> Self {
        let total = Q::from_integer(w.total().into());
        RationalWeighting(
            w.as_slice()
                .iter()
                .map(|&x| Q::from_integer(x.into()) / &total)
                .collect(),
        )
    }

    pub fn get(&self, v: VertexId) -> &Q {
        &self.0[v as usize]
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn weight_of(&self, set: &[VertexId]) -> Q {
        set.iter().fold(Q::zero(), |acc, &v| acc + self.get(v))
    }
}

#[derive(Clone, Debug)]
pub struct LpResult {
    /// Least achievable ratio of heaviest independent set to total weight.
    pub ratio: Q,
    pub weighting: RationalWeighting,
    /// All maximal independent sets, one constraint each.
    pub constraints: Vec<IndependentSet>,
    /// Indices of constraints holding with equality at the optimum.
    pub tight: Vec<usize>,
    /// Nonzero dual multipliers `(constraint index, multiplier)`; they sum to 1.
    pub dual: Vec<(usize, Q)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualEntry {
    pub set: Vec<VertexId>,
    pub multiplier: String,
}

/// JSON form of an [`LpResult`]; every rational is a `p/q` string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpResultJson {
    pub ratio: String,
    pub weights: Vec<String>,
    pub constraint_count: usize,
    pub tight_sets: Vec<Vec<VertexId>>,
    pub dual: Vec<DualEntry>,
}

impl LpResult {
    pub fn to_json(&self) -> LpResultJson {
        LpResultJson {
            ratio: format_q(&self.ratio),
            weights: self.weighting.as_slice().iter().map(format_q).collect(),
            constraint_count: self.constraints.len(),
            tight_sets: self
                .tight
                .iter()
                .map(|&i| self.constraints[i].members().to_vec())
                .collect(),
            dual: self
                .dual
                .iter()
                .map(|(i, y)| DualEntry {
                    set: self.constraints[*i].members().to_vec(),
                    multiplier: format_q(y),
                })
                .collect(),
        }
    }

    /// Re-checks primal feasibility, dual feasibility and equality of the two
    /// objective values in exact arithmetic.
    pub fn verify(&self, g: &Graph) -> Result<(), LpError> {
        let reject = |msg: String| Err(LpError::CertificateRejected(msg));
        let w = self.weighting.as_slice();
        if w.len() != g.vertex_count() {
            return reject("weighting length differs from vertex count".into());
        }
        if w.iter().any(|x| x.is_negative()) {
            return reject("negative weight".into());
        }
        if w.iter().fold(Q::zero(), |a, x| a + x) != Q::one() {
            return reject("weights do not sum to 1".into());
        }
        let heaviest = self
            .constraints
            .iter()
            .map(|i| self.weighting.weight_of(i.members()))
            .max()
            .unwrap_or_else(Q::zero);
        if heaviest != self.ratio {
            return reject(format!(
                "heaviest set weighs {} but ratio is {}",
                format_q(&heaviest),
                format_q(&self.ratio)
            ));
        }
        if self.dual.iter().any(|(_, y)| y.is_negative()) {
            return reject("negative dual multiplier".into());
        }
        if self.dual.iter().fold(Q::zero(), |a, (_, y)| a + y) != Q::one() {
            return reject("dual multipliers do not sum to 1".into());
        }
        let mut cover = vec![Q::zero(); g.vertex_count()];
        for (i, y) in &self.dual {
            for &v in self.constraints[*i].members() {
                cover[v as usize] += y;
            }
        }
        let dual_value = cover.into_iter().min().unwrap_or_else(Q::zero);
        if dual_value != self.ratio {
            return reject(format!(
                "dual objective {} differs from primal {}",
                format_q(&dual_value),
                format_q(&self.ratio)
            ));
        }
        Ok(())
    }
}

/// All maximal independent sets, sorted, via Bron–Kerbosch with pivoting on
/// the complement graph.
pub fn enumerate_maximal_independent_sets(g: &Graph) -> Result<Vec<IndependentSet>, LpError> {
    enumerate_maximal_independent_sets_with(g, DEFAULT_MIS_CAP)
}

pub fn enumerate_maximal_independent_sets_with(
    g: &Graph,
    cap: usize,
) -> Result<Vec<IndependentSet>, LpError> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(LpError::TooLargeForEnumeration { n, cap });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let non_adj: Vec<u64> = g
        .vertices()
        .map(|v| {
            let adj = g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u);
            all & !adj & !(1 << v)
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(0, all, 0, &non_adj, &mut out);
    let mut sets: Vec<IndependentSet> = out
        .into_iter()
        .map(|mask| {
            IndependentSet::new((0..n as VertexId).filter(|&v| mask >> v & 1 == 1).collect())
        })
        .collect();
    sets.sort_unstable_by(|a, b| a.members().cmp(b.members()));
    Ok(sets)
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, nbr: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let mut px = p | x;
    let mut pivot = 0;
    let mut best = -1i64;
    while px != 0 {
        let u = px.trailing_zeros() as usize;
        px &= px - 1;
        let c = (p & nbr[u]).count_ones() as i64;
        if c > best {
            best = c;
            pivot = u;
        }
    }
    let mut candidates = p & !nbr[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(r | 1 << v, p & nbr[v], x & nbr[v], nbr, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Dictionary for `max c.x` subject to `A x <= b`, `x >= 0`, `b >= 0`:
/// `x_basic[i] = b[i] - sum_j a[i][j] x_nonbasic[j]`, `z = z0 + sum_j c[j] x_nonbasic[j]`.
struct Dictionary {
    a: Vec<Vec<Q>>,
    b: Vec<Q>,
    c: Vec<Q>,
    z0: Q,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Dictionary {
    /// Simplex with Bland's rule; returns `false` if unbounded.
    fn solve(&mut self) -> bool {
        loop {
            let entering = (0..self.c.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(e) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Q)> = None;
            for i in 0..self.b.len() {
                if !self.a[i][e].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][e];
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basic[i] < self.basic[*r])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((r, _)) = leaving else {
                return false;
            };
            self.pivot(r, e);
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = Q::one() / &self.a[r][e];
        let mut row = std::mem::take(&mut self.a[r]);
        for (j, x) in row.iter_mut().enumerate() {
            if j == e {
                *x = inv.clone();
            } else if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let br = &self.b[r] * &inv;

        for i in 0..self.b.len() {
            if i == r {
                continue;
            }
            let alpha = self.a[i][e].clone();
            if alpha.is_zero() {
                continue;
            }
            self.b[i] -= &alpha * &br;
            let target = &mut self.a[i];
            for (j, x) in row.iter().enumerate() {
                if j == e {
                    target[j] = -(&alpha * x);
                } else if !x.is_zero() {
                    target[j] -= &alpha * x;
                }
            }
        }
        let ce = self.c[e].clone();
        if !ce.is_zero() {
            self.z0 += &ce * &br;
            for (j, x) in row.iter().enumerate() {
                if j == e {
                    self.c[j] = -(&ce * x);
                } else if !x.is_zero() {
                    self.c[j] -= &ce * x;
                }
            }
        }
        self.a[r] = row;
        self.b[r] = br;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[e]);
    }
}

/// Solves the weighting LP exactly and verifies the dual certificate.
pub fn optimal_weighting(g: &Graph) -> Result<LpResult, LpError> {
    optimal_weighting_with(g, DEFAULT_MIS_CAP)
}

pub fn optimal_weighting_with(g: &Graph, cap: usize) -> Result<LpResult, LpError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(LpError::EmptyGraph);
    }
    let constraints = enumerate_maximal_independent_sets_with(g, cap)?;
    let m = constraints.len();

    let a = constraints
        .iter()
        .map(|set| {
            let mut row = vec![Q::zero(); n];
            for &v in set.members() {
                row[v as usize] = Q::one();
            }
            row
        })
        .collect();
    let mut dict = Dictionary {
        a,
        b: vec![Q::one(); m],
        c: vec![Q::one(); n],
        z0: Q::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };
    // Every vertex lies in some maximal independent set, so u_v <= 1.
    assert!(dict.solve(), "packing LP is bounded");

    let chi_f = dict.z0.clone();
    let mut weights = vec![Q::zero(); n];
    for (i, &var) in dict.basic.iter().enumerate() {
        if var < n {
            weights[var] = &dict.b[i] / &chi_f;
        }
    }
    let mut dual = Vec::new();
    for (j, &var) in dict.nonbasic.iter().enumerate() {
        if var >= n && !dict.c[j].is_zero() {
            dual.push((var - n, -&dict.c[j] / &chi_f));
        }
    }
    dual.sort_by_key(|(i, _)| *i);

    let ratio = Q::one() / chi_f;
    let weighting = RationalWeighting(weights);
    let tight = constraints
        .iter()
        .enumerate()
        .filter(|(_, set)| weighting.weight_of(set.members()) == ratio)
        .map(|(i, _)| i)
        .collect();
    let result = LpResult {
        ratio,
        weighting,
        constraints,
        tight,
        dual,
    };
    result.verify(g)?;
    Ok(result)
}

/// Ratio achieved by a given integer weighting: heaviest maximal independent
/// set over total weight.
pub fn achieved_ratio(constraints: &[IndependentSet], w: &WeightMap) -> BigRational {
    let normalized = RationalWeighting::from_weights(w);
    constraints
        .iter()
        .map(|set| normalized.weight_of(set.members()))
        .max()
        .unwrap_or_else(Q::zero)
}

/// Passes when `w` attains the optimal ratio of `g`, compared exactly.
pub fn verify_weighting_optimal(g: &Graph, w: &WeightMap) -> Result<Certificate, LpError> {
    verify_weighting_optimal_with(g, w, DEFAULT_MIS_CAP)
}

pub fn verify_weighting_optimal_with(
    g: &Graph,
    w: &WeightMap,
    cap: usize,
) -> Result<Certificate, LpError> {
    let start = Instant::now();
    let opt = optimal_weighting_with(g, cap)?;
    let achieved = achieved_ratio(&opt.constraints, w);
    let cert = if achieved == opt.ratio {
        Certificate::pass("weighting_optimal")
    } else {
        let heaviest = opt
            .constraints
            .iter()
            .max_by_key(|set| w.weight_of(set.members()))
            .map(|set| set.members().to_vec())
            .unwrap_or_default();
        Certificate::fail("weighting_optimal", Witness::Vertices(heaviest))
    };
    Ok(cert
        .with_bound("achieved_ratio", format_q(&achieved))
        .with_bound("optimal_ratio", format_q(&opt.ratio))
        .with_bound("maximal_independent_sets", opt.constraints.len())
        .timed(start))
}
