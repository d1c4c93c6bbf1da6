//! Executable versions of the extraction procedures, each step checked.
//!
//! Every procedure works on vertex sets of one [`IntersectionGraph`] whose
//! vertices are the family's curves in basepoint order.

mod bfs;
mod bracket_system;
mod clique_system;
mod mcguinness;
mod skeleton;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

pub use bfs::{bfs_supported, BfsResult};
pub use bracket_system::attempt_bracket_system;
pub use clique_system::{attempt_clique_system, search_clique_system};
pub use mcguinness::{intersecting_gap_pair, mcguinness};
pub use skeleton::find_skeleton_supported;

use crate::geom::CurveFamily;
use crate::graph::{IntersectionGraph, VertexSet};
use crate::structures::StructureError;

/// How the hypothesis of the clique-system lemmas is discharged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisMode {
    /// Exhaustive search for the assumed clique system.
    #[default]
    Search,
    /// Recursion through the lemmas themselves, down to the empty system.
    Proof,
}

/// Induction parameters and procedure thresholds.
///
/// The optional fields replace thresholds computed from the recurrences,
/// which are far beyond anything a desk-scale family reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Clique bound: `ω(F) ≤ k`.
    pub k: u64,
    /// Chromatic bound for families with clique number at most `k − 1`.
    pub xi: u64,
    pub alpha: u64,
    pub beta: u64,
    pub n: u64,
    pub t: u64,
    /// Replaces `γ = f(α)`.
    #[serde(default)]
    pub gamma: Option<u64>,
    /// Replaces `β₀, …, β_{k+1}`.
    #[serde(default)]
    pub betas: Option<Vec<u64>>,
    /// Replaces the thresholds `f^{(m−i)}(β)` of the nested skeleton chain, `i = 1..m`.
    /// Missing trailing entries repeat the last one.
    #[serde(default)]
    pub skeleton_chain: Option<Vec<u64>>,
    /// Replaces the gap `(2^{mn+2} + 2m)ξ` required between clique anchors.
    #[serde(default)]
    pub gap: Option<u64>,
    #[serde(default)]
    pub hypothesis: HypothesisMode,
}

impl BoundParams {
    pub fn new(k: u64, xi: u64) -> Self {
        BoundParams {
            k,
            xi,
            alpha: 0,
            beta: 0,
            n: 0,
            t: 2,
            gamma: None,
            betas: None,
            skeleton_chain: None,
            gap: None,
            hypothesis: HypothesisMode::Search,
        }
    }

    pub fn validate(&self) -> Result<(), ExtractError> {
        if self.k < 1 || self.xi < 1 || self.t < 2 {
            return Err(ExtractError::InvalidParams("need k ≥ 1, ξ ≥ 1 and t ≥ 2".into()));
        }
        if let Some(b) = &self.betas {
            if b.len() != self.k as usize + 2 {
                return Err(ExtractError::InvalidParams(format!(
                    "betas must list β₀..β_{{k+1}} ({} values), got {}",
                    self.k + 2,
                    b.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    StructureFound,
    StepFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub name: String,
    pub chi_values: BTreeMap<String, u64>,
    pub chosen_ids: Vec<String>,
}

/// The first inequality or claim that did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFailure {
    pub step: String,
    /// The violated requirement, e.g. `χ(G_1) > 14`.
    pub threshold: String,
    pub measured: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub outcome: Outcome,
    pub steps: Vec<TraceStep>,
    pub failure: Option<StepFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<serde_json::Value>,
}

impl ExtractionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum ExtractError {
    #[error("precondition failed: {reason} (measured {measured})")]
    PreconditionFailure { reason: String, measured: u64 },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Trace under construction.
#[derive(Clone, Debug, Default)]
pub(crate) struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn step(&mut self, name: impl Into<String>, chi: &[(&str, u64)], chosen: Vec<String>) {
        self.steps.push(TraceStep {
            name: name.into(),
            chi_values: chi.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            chosen_ids: chosen,
        });
    }

    pub fn extend(&mut self, prefix: &str, other: Trace) {
        for mut s in other.steps {
            s.name = format!("{prefix}{}", s.name);
            self.steps.push(s);
        }
    }

    pub fn found(self, structure: serde_json::Value) -> ExtractionReport {
        ExtractionReport {
            outcome: Outcome::StructureFound,
            steps: self.steps,
            failure: None,
            structure: Some(structure),
        }
    }

    pub fn failed(self, failure: StepFailure) -> ExtractionReport {
        ExtractionReport {
            outcome: Outcome::StepFailure,
            steps: self.steps,
            failure: Some(failure),
            structure: None,
        }
    }
}

pub(crate) fn fail(step: impl Into<String>, threshold: impl Into<String>, measured: usize) -> StepFailure {
    StepFailure {
        step: step.into(),
        threshold: threshold.into(),
        measured: measured as u64,
    }
}

/// Checks `measured > threshold` for a possibly negative threshold.
pub(crate) fn exceeds(measured: usize, threshold: &BigInt) -> bool {
    BigInt::from(measured) > *threshold
}

pub(crate) fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

pub(crate) fn unsigned(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// Shared state: the family and its intersection graph.
pub(crate) struct Ctx<'a> {
    pub family: &'a CurveFamily,
    pub g: IntersectionGraph,
}

impl<'a> Ctx<'a> {
    pub fn new(family: &'a CurveFamily) -> Self {
        Ctx {
            family,
            g: crate::graph::intersection_graph(family),
        }
    }

    pub fn chi(&self, s: &VertexSet) -> usize {
        self.g.chi(s)
    }

    pub fn ids(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.g.id(v).to_string()).collect()
    }

    pub fn id(&self, v: usize) -> String {
        self.g.id(v).to_string()
    }

    pub fn index(&self, id: &str) -> usize {
        self.family.index_of(id).expect("id belongs to the family")
    }

    pub fn set_of<S: AsRef<str>>(&self, ids: &[S]) -> VertexSet {
        self.g.set(ids.iter().map(|x| self.index(x.as_ref())))
    }

    /// Vertices of `within` strictly between `u` and `v` in basepoint order.
    pub fn between(&self, within: &VertexSet, u: usize, v: usize) -> VertexSet {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.g.set(within.iter().filter(|&x| a < x && x < b))
    }

    /// Subfamily of the given vertices.
    pub fn subfamily(&self, s: &VertexSet) -> CurveFamily {
        self.family.subfamily(&s.to_vec())
    }
}
