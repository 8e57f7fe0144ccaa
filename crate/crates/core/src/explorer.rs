//! Bounded exploration of mutation classes.
//!
//! Classes are searched breadth-first over canonical keys, so quivers are
//! identified up to relabeling and change of orientation. Each node keeps
//! its canonical form as representative; the vertex on an edge refers to
//! that representative's labeling.
//!
//! Random walks use `ChaCha8Rng::seed_from_u64(seed)`. The first step is
//! uniform over all vertices, every later step uniform over the vertices
//! other than the previous one.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::{classify, MutationTrace, Verdict};
use crate::error::{Error, Result};
use crate::quiver::{CanonicalKey, ExchangeMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Quivers with a larger arrow multiplicity are left out of the graph.
    pub max_multiplicity: u64,
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_multiplicity: 12,
            max_nodes: 100_000,
            max_depth: 64,
        }
    }
}

impl Caps {
    pub fn with_multiplicity(max_multiplicity: u64) -> Self {
        Caps {
            max_multiplicity,
            ..Caps::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassStatus {
    /// The node set is closed under mutation and lies inside the caps.
    Exhausted,
    /// Some mutation left the cap region.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNode {
    pub key: CanonicalKey,
    pub representative: ExchangeMatrix,
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassEdge {
    pub from: usize,
    pub vertex: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct ClassGraph {
    nodes: Vec<ClassNode>,
    index: HashMap<CanonicalKey, usize>,
    edges: Vec<ClassEdge>,
    status: ClassStatus,
    caps: Caps,
}

impl ClassGraph {
    pub fn nodes(&self) -> &[ClassNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[ClassEdge] {
        &self.edges
    }

    pub fn status(&self) -> ClassStatus {
        self.status
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn is_exhausted(&self) -> bool {
        self.status == ClassStatus::Exhausted
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index.contains_key(key)
    }

    pub fn node(&self, key: &CanonicalKey) -> Option<&ClassNode> {
        self.index.get(key).map(|&i| &self.nodes[i])
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.nodes.iter().map(|n| &n.key)
    }

    /// Graphviz rendering. Parallel mutation edges between the same pair of
    /// nodes are merged into one edge labelled with their vertices.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mutation_class {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", node_label(&node.representative));
        }
        let mut grouped: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in &self.edges {
            grouped.entry((e.from, e.to)).or_default().push(e.vertex);
        }
        for ((from, to), vertices) in grouped {
            let _ = writeln!(
                out,
                "  n{from} -> n{to} [label=\"{}\"];",
                vertices.iter().join(",")
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Sorted parameters for cyclic quivers, upper-triangular entries otherwise.
pub fn node_label(m: &ExchangeMatrix) -> String {
    match m.cyclic_parameters() {
        Ok(t) => format!("cyclic {t}"),
        Err(_) => format!("acyclic {}", m.upper().iter().join(",")),
    }
}

/// Breadth-first enumeration of the mutation class of `m` inside `caps`.
pub fn enumerate_class(m: &ExchangeMatrix, caps: Caps) -> Result<ClassGraph> {
    if m.n() != 3 {
        return Err(Error::NotThreeVertices(m.n()));
    }
    let mult_cap = BigInt::from(caps.max_multiplicity);
    let mut graph = ClassGraph {
        nodes: Vec::new(),
        index: HashMap::new(),
        edges: Vec::new(),
        status: ClassStatus::Exhausted,
        caps,
    };
    let seed_key = m.canonical_key();
    graph.index.insert(seed_key.clone(), 0);
    graph.nodes.push(ClassNode {
        representative: seed_key.to_matrix(),
        key: seed_key,
        depth: 0,
    });
    if m.max_multiplicity() > mult_cap {
        graph.status = ClassStatus::Truncated;
        return Ok(graph);
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let rep = graph.nodes[i].representative.clone();
        let depth = graph.nodes[i].depth;
        for k in 1..=3 {
            let next = rep.mutate(k)?;
            let key = next.canonical_key();
            if let Some(&j) = graph.index.get(&key) {
                graph.edges.push(ClassEdge { from: i, vertex: k, to: j });
                continue;
            }
            if next.max_multiplicity() > mult_cap
                || depth + 1 > caps.max_depth
                || graph.nodes.len() >= caps.max_nodes
            {
                graph.status = ClassStatus::Truncated;
                continue;
            }
            let j = graph.nodes.len();
            graph.index.insert(key.clone(), j);
            graph.nodes.push(ClassNode {
                representative: key.to_matrix(),
                key,
                depth: depth + 1,
            });
            graph.edges.push(ClassEdge { from: i, vertex: k, to: j });
            queue.push_back(j);
        }
    }
    Ok(graph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SameClass {
    Yes,
    No,
    Unknown,
}

/// Decides mutation equivalence (up to relabeling and orientation) where
/// the evidence allows it.
///
/// Mutation-cyclic classes are determined by their root parameters, so two
/// cyclic verdicts compare roots. Otherwise both classes are enumerated
/// within `caps`: a shared key means `Yes`, two exhausted disjoint classes
/// mean `No`.
pub fn same_class(m1: &ExchangeMatrix, m2: &ExchangeMatrix, caps: Caps) -> Result<SameClass> {
    for m in [m1, m2] {
        if m.n() != 3 {
            return Err(Error::NotThreeVertices(m.n()));
        }
    }
    if m1.canonical_key() == m2.canonical_key() {
        return Ok(SameClass::Yes);
    }
    if m1.is_connected() != m2.is_connected() {
        return Ok(SameClass::No);
    }
    let (r1, r2) = (classify(m1)?, classify(m2)?);
    match (r1.verdict, r2.verdict) {
        (Verdict::MutationCyclic, Verdict::MutationCyclic) => {
            return Ok(if r1.root == r2.root { SameClass::Yes } else { SameClass::No });
        }
        (v1, v2) if v1 != v2 => return Ok(SameClass::No),
        _ => {}
    }
    let (g1, g2) = (enumerate_class(m1, caps)?, enumerate_class(m2, caps)?);
    let keys1: HashSet<&CanonicalKey> = g1.keys().collect();
    if g2.keys().any(|k| keys1.contains(k)) {
        return Ok(SameClass::Yes);
    }
    if g1.is_exhausted() && g2.is_exhausted() {
        return Ok(SameClass::No);
    }
    Ok(SameClass::Unknown)
}

/// Seeded reduced random walk of `depth` mutations.
pub fn random_walk(m: &ExchangeMatrix, depth: usize, seed: u64) -> Result<MutationTrace> {
    let n = m.n();
    if n < 2 && depth > 1 {
        return Err(Error::InvalidArgument(
            "a reduced walk longer than one step needs at least two vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = MutationTrace::new(m.clone());
    let mut prev: Option<usize> = None;
    for _ in 0..depth {
        let k = match prev {
            None => rng.gen_range(1..=n),
            Some(p) => {
                // uniform over 1..=n without p
                let pick = rng.gen_range(1..n);
                if pick >= p {
                    pick + 1
                } else {
                    pick
                }
            }
        };
        trace.push(k)?;
        prev = Some(k);
    }
    Ok(trace)
}
