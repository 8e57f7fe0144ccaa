//! Request/report layer behind the `mut3` binary.
//!
//! Every command is described by a serializable [`Request`]. Running it
//! produces a [`Report`] that embeds the request, so a saved JSON report
//! can be re-run with [`run`] and compared.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use mut3_core::{
    enumerate_class, is_mutation_finite, node_label, random_walk, s_terms, threshold_c0_with,
    Caps, ClassStatus, Classifier, ExchangeMatrix, MutationTrace, RecurrenceParams, ScanPoint,
    SortedTriple, Verdict, DEFAULT_MAX_STEPS,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_ACYCLIC: i32 = 0;
pub const EXIT_CYCLIC: i32 = 10;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the descent step cap.
pub const MAX_STEPS_VAR: &str = "MUT3_MAX_STEPS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] mut3_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }
}

fn parse_int(text: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(text.trim())
        .map_err(|_| CliError::Usage(format!("'{text}' is not a decimal integer")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum InputSpec {
    /// The cyclic quiver `2 -a-> 1 -b-> 3 -c-> 2`.
    Triple { a: String, b: String, c: String },
    /// Row-major entries of an `n × n` matrix.
    Matrix { n: usize, entries: Vec<String> },
}

impl InputSpec {
    pub fn triple(a: &str, b: &str, c: &str) -> Self {
        InputSpec::Triple {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
        }
    }

    /// Parses entries separated by commas, semicolons or whitespace; `n` is
    /// the square root of the entry count.
    pub fn parse_matrix(text: &str) -> Result<Self, CliError> {
        let entries: Vec<String> = text
            .split(|ch: char| ch == ',' || ch == ';' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect();
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != entries.len() {
            return Err(CliError::Usage(format!(
                "matrix needs n*n entries, got {}",
                entries.len()
            )));
        }
        Ok(InputSpec::Matrix { n, entries })
    }

    pub fn to_matrix(&self) -> Result<ExchangeMatrix, CliError> {
        match self {
            InputSpec::Triple { a, b, c } => {
                ExchangeMatrix::from_cycle_parameters(parse_int(a)?, parse_int(b)?, parse_int(c)?)
                    .map_err(|e| CliError::Usage(e.to_string()))
            }
            InputSpec::Matrix { n, entries } => {
                let values = entries.iter().map(|e| parse_int(e)).collect::<Result<_, _>>()?;
                ExchangeMatrix::new(*n, values).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkStep {
    At(usize),
    /// Mutate at the vertex opposite the largest side.
    OppositeMax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub depth: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Request {
    Classify {
        input: InputSpec,
        certificate: bool,
    },
    Threshold {
        a: String,
        b: String,
        evidence: bool,
    },
    Walk {
        input: InputSpec,
        steps: Vec<WalkStep>,
        random: Option<RandomSpec>,
    },
    Enumerate {
        input: InputSpec,
        caps: Caps,
        dot: Option<PathBuf>,
    },
    Seq {
        a: String,
        n: u64,
    },
    Finite {
        input: InputSpec,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub max_steps: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl Settings {
    /// Reads [`MAX_STEPS_VAR`] if set.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(MAX_STEPS_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_steps| Settings { max_steps })
                .map_err(|_| CliError::Usage(format!("{MAX_STEPS_VAR}='{v}' is not a step count"))),
            Err(_) => Ok(Settings::default()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub request: Request,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Classify(ClassifyReport),
    Threshold(ThresholdReport),
    Walk(WalkReport),
    Enumerate(EnumerateReport),
    Seq(SeqReport),
    Finite(FiniteReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub verdict: Verdict,
    pub root: Option<SortedTriple>,
    pub witness: Option<ExchangeMatrix>,
    pub connected: bool,
    pub steps: usize,
    pub certificate: Option<MutationTrace>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub c0: String,
    pub window: [String; 2],
    pub evidence: Option<Vec<ScanPoint>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub vertex: Option<usize>,
    pub matrix: ExchangeMatrix,
    pub label: String,
    pub arrow_count: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkReport {
    pub snapshots: Vec<Snapshot>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub status: ClassStatus,
    pub nodes: usize,
    pub edges: usize,
    pub labels: Vec<String>,
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqReport {
    pub a: String,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteReport {
    pub finite: bool,
}

fn three_vertex(input: &InputSpec) -> Result<ExchangeMatrix, CliError> {
    let m = input.to_matrix()?;
    if m.n() != 3 {
        return Err(CliError::Usage(format!("expected a 3x3 matrix, got {0}x{0}", m.n())));
    }
    Ok(m)
}

fn snapshot(vertex: Option<usize>, m: &ExchangeMatrix) -> Snapshot {
    Snapshot {
        vertex,
        matrix: m.clone(),
        label: node_label(m),
        arrow_count: m.arrow_count().to_string(),
    }
}

pub fn run(request: &Request, settings: &Settings) -> Result<Report, CliError> {
    let classifier = Classifier::with_max_steps(settings.max_steps);
    let outcome = match request {
        Request::Classify { input, certificate } => {
            let m = three_vertex(input)?;
            let r = classifier.classify(&m)?;
            Outcome::Classify(ClassifyReport {
                verdict: r.verdict,
                root: r.root,
                witness: r.witness,
                connected: r.connected,
                steps: r.certificate.len(),
                certificate: certificate.then_some(r.certificate),
            })
        }
        Request::Threshold { a, b, evidence } => {
            let (a, b) = (parse_int(a)?, parse_int(b)?);
            let t = threshold_c0_with(&classifier, &a, &b).map_err(|e| match e {
                mut3_core::Error::InvalidArgument(msg) => CliError::Usage(msg),
                other => other.into(),
            })?;
            let ab = &a * &b;
            Outcome::Threshold(ThresholdReport {
                c0: t.c0.to_string(),
                window: [(&ab - &b).to_string(), (ab - BigInt::from(1)).to_string()],
                evidence: evidence.then_some(t.scan_evidence),
            })
        }
        Request::Walk {
            input,
            steps,
            random,
        } => {
            let m = input.to_matrix()?;
            let mut trace = MutationTrace::new(m.clone());
            for step in steps {
                let k = match step {
                    WalkStep::At(k) => *k,
                    WalkStep::OppositeMax => trace.end().vertex_opposite_max()?,
                };
                trace.push(k).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            if let Some(spec) = random {
                let tail = random_walk(trace.end(), spec.depth, spec.seed)?;
                trace.steps.extend(tail.steps);
            }
            let mut snapshots = vec![snapshot(None, &trace.start)];
            snapshots.extend(trace.steps.iter().map(|s| snapshot(Some(s.vertex), &s.result)));
            Outcome::Walk(WalkReport { snapshots })
        }
        Request::Enumerate { input, caps, dot } => {
            let m = three_vertex(input)?;
            let g = enumerate_class(&m, *caps)?;
            if let Some(path) = dot {
                std::fs::write(path, g.to_dot()).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            Outcome::Enumerate(EnumerateReport {
                status: g.status(),
                nodes: g.nodes().len(),
                edges: g.edges().len(),
                labels: g.nodes().iter().map(|n| node_label(&n.representative)).collect(),
                dot: dot.clone(),
            })
        }
        Request::Seq { a, n } => {
            let a = parse_int(a)?;
            let p = RecurrenceParams::new(a.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
            Outcome::Seq(SeqReport {
                a: a.to_string(),
                terms: s_terms(&p, *n).iter().map(|t| t.to_string()).collect(),
            })
        }
        Request::Finite { input } => {
            let m = three_vertex(input)?;
            let finite = is_mutation_finite(&m).map_err(|e| match e {
                mut3_core::Error::Disconnected => CliError::Usage(e.to_string()),
                other => other.into(),
            })?;
            Outcome::Finite(FiniteReport { finite })
        }
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        request: request.clone(),
        outcome,
    })
}

impl Report {
    /// 10 for a mutation-cyclic verdict, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            Outcome::Classify(c) if c.verdict == Verdict::MutationCyclic => EXIT_CYCLIC,
            _ => EXIT_ACYCLIC,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.outcome {
            Outcome::Classify(c) => {
                let _ = writeln!(out, "verdict: {}", c.verdict);
                if let Some(root) = &c.root {
                    let _ = writeln!(out, "root: {root}");
                }
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "witness: {w} ({})", node_label(w));
                }
                if !c.connected {
                    let _ = writeln!(out, "note: input is disconnected");
                }
                let _ = writeln!(out, "descent steps: {}", c.steps);
                if let Some(trace) = &c.certificate {
                    let _ = writeln!(out, "certificate:");
                    let _ = writeln!(out, "  start {} ({})", trace.start, node_label(&trace.start));
                    for (i, s) in trace.steps.iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "  {}: mutate at {} -> {} ({})",
                            i + 1,
                            s.vertex,
                            s.result,
                            node_label(&s.result)
                        );
                    }
                }
            }
            Outcome::Threshold(t) => {
                let _ = writeln!(out, "c0: {}", t.c0);
                let _ = writeln!(out, "window: [{}, {}]", t.window[0], t.window[1]);
                if let Some(points) = &t.evidence {
                    for p in points {
                        let _ = writeln!(out, "  c = {}: {}", p.c, p.verdict);
                    }
                }
            }
            Outcome::Walk(w) => {
                for (i, s) in w.snapshots.iter().enumerate() {
                    let vertex = s.vertex.map_or("-".to_string(), |v| v.to_string());
                    let _ = writeln!(
                        out,
                        "{i}: at {vertex}, arrows {}, {} {}",
                        s.arrow_count, s.label, s.matrix
                    );
                }
            }
            Outcome::Enumerate(e) => {
                let status = match e.status {
                    ClassStatus::Exhausted => "exhausted",
                    ClassStatus::Truncated => "truncated",
                };
                let _ = writeln!(out, "status: {status}");
                let _ = writeln!(out, "nodes: {}", e.nodes);
                let _ = writeln!(out, "edges: {}", e.edges);
                for label in &e.labels {
                    let _ = writeln!(out, "  {label}");
                }
                if let Some(path) = &e.dot {
                    let _ = writeln!(out, "dot: {}", path.display());
                }
            }
            Outcome::Seq(s) => {
                let _ = writeln!(out, "{}", s.terms.join(" "));
            }
            Outcome::Finite(f) => {
                let _ = writeln!(
                    out,
                    "{}",
                    if f.finite { "mutation-finite" } else { "mutation-infinite" }
                );
            }
        }
        out
    }
}

/// Parses a `--at` value: a vertex number or `max`.
pub fn parse_walk_step(text: &str) -> Result<WalkStep, CliError> {
    if text.eq_ignore_ascii_case("max") {
        return Ok(WalkStep::OppositeMax);
    }
    let k = parse_int(text)?;
    k.to_usize()
        .filter(|&k| k >= 1)
        .map(WalkStep::At)
        .ok_or_else(|| CliError::Usage(format!("invalid vertex '{text}'")))
}
