//! Outcome records for property checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check was not run because a cap excludes it.
    Skipped,
}

/// Evidence attached to a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertices(Vec<VertexId>),
    Edge(VertexId, VertexId),
    ProbeEdge {
        probe: usize,
        edge: (VertexId, VertexId),
    },
    Coloring(Vec<u32>),
    SegmentPair(usize, usize),
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Exact values relevant to the check, rendered as integers or `p/q`.
    pub bounds: BTreeMap<String, String>,
    pub millis: u128,
}

impl Certificate {
    pub fn pass(check: impl Into<String>) -> Self {
        Certificate {
            check: check.into(),
            verdict: Verdict::Pass,
            witness: None,
            bounds: BTreeMap::new(),
            millis: 0,
        }
    }

    /// A failing certificate always carries a witness.
    pub fn fail(check: impl Into<String>, witness: Witness) -> Self {
        Certificate {
            check: check.into(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            bounds: BTreeMap::new(),
            millis: 0,
        }
    }

    pub fn skipped(check: impl Into<String>, reason: impl Into<String>) -> Self {
        Certificate {
            check: check.into(),
            verdict: Verdict::Skipped,
            witness: Some(Witness::Note(reason.into())),
            bounds: BTreeMap::new(),
            millis: 0,
        }
    }

    pub fn with_bound(mut self, name: &str, value: impl ToString) -> Self {
        self.bounds.insert(name.to_string(), value.to_string());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.millis = start.elapsed().as_millis();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}
