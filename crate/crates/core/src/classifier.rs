//! Deciding mutation-cyclic versus mutation-acyclic for 3-vertex quivers.
//!
//! The decision procedure descends through the mutation class: while the
//! current quiver is cyclic with sorted parameters `a ≤ b ≤ c` and
//! `ab > c`, mutate at the vertex opposite `c`. If that lowers the arrow
//! count, continue from the mutated quiver; otherwise the current quiver
//! is a root (`2 ≤ a`, `ab ≥ 2c`) and the class is mutation-cyclic. An
//! acyclic quiver, or a cyclic one with `ab ≤ c`, ends the descent with a
//! mutation-acyclic verdict. Arrow counts strictly decrease, so the loop
//! terminates.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{ExchangeMatrix, SortedTriple};

/// Default bound on descent length. Reaching it signals a bug, not a verdict.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MutationCyclic,
    MutationAcyclic,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::MutationCyclic => "mutation-cyclic",
            Verdict::MutationAcyclic => "mutation-acyclic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationStep {
    /// 1-based mutation vertex.
    pub vertex: usize,
    /// Matrix after mutating the previous snapshot at `vertex`.
    pub result: ExchangeMatrix,
}

/// A replayable mutation sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationTrace {
    pub start: ExchangeMatrix,
    pub steps: Vec<MutationStep>,
}

impl MutationTrace {
    pub fn new(start: ExchangeMatrix) -> Self {
        MutationTrace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Last snapshot, or the start when there are no steps.
    pub fn end(&self) -> &ExchangeMatrix {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Mutates the current endpoint at `k` and records the step.
    pub fn push(&mut self, k: usize) -> Result<&ExchangeMatrix> {
        let result = self.end().mutate(k)?;
        self.steps.push(MutationStep { vertex: k, result });
        Ok(self.end())
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// The start followed by every step snapshot.
    pub fn snapshots(&self) -> impl Iterator<Item = &ExchangeMatrix> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.result))
    }

    /// No two consecutive steps use the same vertex.
    pub fn is_reduced(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].vertex != w[1].vertex)
    }

    /// Every snapshot equals the mutation of its predecessor.
    pub fn replays(&self) -> bool {
        let mut prev = &self.start;
        for step in &self.steps {
            match prev.mutate(step.vertex) {
                Ok(m) if m == step.result => prev = &step.result,
                _ => return false,
            }
        }
        true
    }
}

/// Verdict plus the certificate that justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Parameters of the root reached; present iff mutation-cyclic.
    pub root: Option<SortedTriple>,
    /// Acyclic quiver, or cyclic with `ab ≤ c`; present iff mutation-acyclic.
    pub witness: Option<ExchangeMatrix>,
    /// Trace from the input to the root or witness.
    pub certificate: MutationTrace,
    /// False when the input quiver is disconnected.
    pub connected: bool,
}

/// `2 ≤ a` and `ab ≥ 2c`.
pub fn is_root(t: &SortedTriple) -> bool {
    *t.a() >= BigInt::from(2) && t.a() * t.b() >= BigInt::from(2) * t.c()
}

/// Cyclic with `ab ≤ c`: one mutation opposite `c` makes it acyclic.
fn is_acyclic_gate(m: &ExchangeMatrix) -> bool {
    match m.cyclic_parameters() {
        Ok(t) => t.a() * t.b() <= *t.c(),
        Err(_) => false,
    }
}

/// Descent classifier with a configurable safety cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classifier {
    pub max_steps: u64,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier {
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl Classifier {
    pub fn with_max_steps(max_steps: u64) -> Self {
        Classifier { max_steps }
    }

    pub fn classify(&self, m: &ExchangeMatrix) -> Result<ClassificationResult> {
        if m.n() != 3 {
            return Err(Error::NotThreeVertices(m.n()));
        }
        let connected = m.is_connected();
        let mut trace = MutationTrace::new(m.clone());
        loop {
            let current = trace.end();
            if !current.is_cyclic() {
                return Ok(acyclic_result(trace, connected));
            }
            let params = current.cyclic_parameters()?;
            if params.a() * params.b() <= *params.c() {
                return Ok(acyclic_result(trace, connected));
            }
            let k = current.vertex_opposite_max()?;
            let next = current.mutate(k)?;
            if next.arrow_count() >= current.arrow_count() {
                if !is_root(&params) {
                    return Err(Error::Internal(format!(
                        "descent stopped at non-root parameters {params}"
                    )));
                }
                return Ok(ClassificationResult {
                    verdict: Verdict::MutationCyclic,
                    root: Some(params),
                    witness: None,
                    certificate: trace,
                    connected,
                });
            }
            if trace.len() as u64 >= self.max_steps {
                return Err(Error::StepLimit(self.max_steps));
            }
            trace.steps.push(MutationStep {
                vertex: k,
                result: next,
            });
        }
    }
}

fn acyclic_result(trace: MutationTrace, connected: bool) -> ClassificationResult {
    ClassificationResult {
        verdict: Verdict::MutationAcyclic,
        root: None,
        witness: Some(trace.end().clone()),
        certificate: trace,
        connected,
    }
}

/// Classifies a 3-vertex matrix with the default step cap.
pub fn classify(m: &ExchangeMatrix) -> Result<ClassificationResult> {
    Classifier::default().classify(m)
}

/// Replays the certificate from `m` and checks its endpoint.
pub fn verify_certificate(m: &ExchangeMatrix, r: &ClassificationResult) -> bool {
    let trace = &r.certificate;
    if m.n() != 3 || trace.start != *m || r.connected != m.is_connected() {
        return false;
    }
    if !trace.replays() || !trace.is_reduced() {
        return false;
    }
    let end = trace.end();
    match r.verdict {
        Verdict::MutationCyclic => {
            let Some(root) = &r.root else { return false };
            r.witness.is_none()
                && is_root(root)
                && end.cyclic_parameters().as_ref() == Ok(root)
        }
        Verdict::MutationAcyclic => {
            let Some(witness) = &r.witness else { return false };
            if r.root.is_some() || witness != end {
                return false;
            }
            if !end.is_cyclic() {
                return true;
            }
            is_acyclic_gate(end)
                && end
                    .vertex_opposite_max()
                    .and_then(|k| end.mutate(k))
                    .is_ok_and(|next| !next.is_cyclic())
        }
    }
}

/// Reaches a cyclic quiver from a connected 3-vertex quiver.
///
/// Cyclic input is returned unchanged. An acyclic quiver with a vertex
/// `k` on a path `i → k → j` becomes cyclic after mutating at `k`. If no
/// such vertex exists, one vertex is a common source or sink of the other
/// two; mutating first at the larger-indexed of those two and then at the
/// hub gives a cyclic quiver.
pub fn to_cyclic(m: &ExchangeMatrix) -> Result<(ExchangeMatrix, MutationTrace)> {
    if m.n() != 3 {
        return Err(Error::NotThreeVertices(m.n()));
    }
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut trace = MutationTrace::new(m.clone());
    if m.is_cyclic() {
        return Ok((m.clone(), trace));
    }
    if let Some(k) = middle_vertex(m) {
        trace.push(k)?;
    } else {
        let hub = (1..=3)
            .find(|&v| (1..=3).filter(|&w| w != v && !m.entry(v, w).is_zero()).count() == 2)
            .ok_or_else(|| Error::Internal("connected quiver without hub".into()))?;
        let leaf = (1..=3).rev().find(|&w| w != hub).expect("two leaves");
        trace.push(leaf)?;
        trace.push(hub)?;
    }
    let end = trace.end().clone();
    if !end.is_cyclic() {
        return Err(Error::Internal(format!("to_cyclic ended acyclic at {end}")));
    }
    Ok((end, trace))
}

/// A vertex with both an incoming and an outgoing arrow.
fn middle_vertex(m: &ExchangeMatrix) -> Option<usize> {
    (1..=3).find(|&k| {
        let others = (1..=3).filter(|&v| v != k);
        let incoming = others.clone().any(|v| m.entry(v, k) > &BigInt::ZERO);
        let outgoing = others.into_iter().any(|v| m.entry(k, v) > &BigInt::ZERO);
        incoming && outgoing
    })
}

/// Whether the mutation class of a connected 3-vertex quiver is finite.
///
/// Searches the class over canonical keys and answers `false` as soon as
/// a cyclic member has a side with three or more arrows; such a class
/// grows without bound.
pub fn is_mutation_finite(m: &ExchangeMatrix) -> Result<bool> {
    if m.n() != 3 {
        return Err(Error::NotThreeVertices(m.n()));
    }
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let three = BigInt::from(3);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m.canonical_key());
    queue.push_back(m.canonical_form());
    while let Some(q) = queue.pop_front() {
        if q.is_cyclic() && q.max_multiplicity() >= three {
            return Ok(false);
        }
        for k in 1..=3 {
            let next = q.mutate(k)?;
            if seen.insert(next.canonical_key()) {
                queue.push_back(next.canonical_form());
            }
        }
    }
    Ok(true)
}
