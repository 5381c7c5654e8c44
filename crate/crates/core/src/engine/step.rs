use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{is_induced_in, Adjacency, Graph, Matching, VertexId, VertexSet};

/// Reduction rules in priority order, plus exact solving of a small component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    Exact,
}

impl Rule {
    /// The local reduction rules, highest priority first.
    pub const REDUCTIONS: [Rule; 12] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
    ];

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Exact => f.write_str("EXACT"),
            r => write!(f, "R{}", r.index() + 1),
        }
    }
}

impl FromStr for Rule {
    type Err = CertificateParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "EXACT" {
            return Ok(Rule::Exact);
        }
        s.strip_prefix('R')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| (1..=12).contains(k))
            .map(|k| Rule::REDUCTIONS[k - 1])
            .ok_or_else(|| CertificateParseError::Rule(s.to_string()))
    }
}

/// Quantities recorded when a step was taken.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepMetrics {
    pub removed: usize,
    /// Vertices left isolated by the removal.
    pub isolated_created: Option<usize>,
    /// `d_out` of the rule's base set `X`.
    pub d_out: Option<usize>,
    /// Neighbors of matched endpoints outside `X ∪ I(G - X)`, for two-edge
    /// extensions.
    pub spill: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: Rule,
    /// Normalized `(min, max)` edges.
    pub matched: Vec<(VertexId, VertexId)>,
    pub removed: VertexSet,
    pub metrics: StepMetrics,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<ReductionStep>,
}

impl Certificate {
    /// Union of the matched edges of all steps.
    pub fn matching(&self) -> Matching {
        Matching::new(self.steps.iter().flat_map(|s| s.matched.iter().copied()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepViolation {
    UnknownVertex(VertexId),
    WrongEdgeCount(usize),
    NotAnEdge(VertexId, VertexId),
    NotInduced,
    NeighborhoodEscapes {
        endpoint: VertexId,
        neighbor: VertexId,
    },
    Accounting {
        matched: usize,
        removed: usize,
        isolated: usize,
    },
}

impl fmt::Display for StepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepViolation::UnknownVertex(v) => write!(f, "vertex {v} is not in the current graph"),
            StepViolation::WrongEdgeCount(k) => write!(f, "reduction step matches {k} edges"),
            StepViolation::NotAnEdge(u, v) => write!(f, "{u}-{v} is not an edge"),
            StepViolation::NotInduced => f.write_str("matched edges are not an induced matching"),
            StepViolation::NeighborhoodEscapes { endpoint, neighbor } => {
                write!(
                    f,
                    "neighbor {neighbor} of matched vertex {endpoint} is not removed"
                )
            }
            StepViolation::Accounting {
                matched,
                removed,
                isolated,
            } => write!(
                f,
                "9*{matched} < {removed} removed + {isolated} newly isolated"
            ),
        }
    }
}

/// Checks one step against the graph it is applied to: matched edges exist and
/// form an induced matching, every neighbor of a matched vertex is removed, and
/// `9 |matched| >= |removed| + i`, where `i` counts the vertices that have
/// neighbors in the graph but none outside `removed`.
pub fn validate_step(g: &Graph, step: &ReductionStep) -> Vec<StepViolation> {
    check_step(g, |v| g.contains(v), step)
}

pub(crate) fn check_step<G: Adjacency>(
    g: &G,
    present: impl Fn(VertexId) -> bool,
    step: &ReductionStep,
) -> Vec<StepViolation> {
    let mut out = Vec::new();
    for &v in step
        .removed
        .iter()
        .chain(step.matched.iter().flat_map(|(a, b)| [a, b]))
    {
        if !present(v) {
            out.push(StepViolation::UnknownVertex(v));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let k = step.matched.len();
    if step.rule != Rule::Exact && !(1..=2).contains(&k) {
        out.push(StepViolation::WrongEdgeCount(k));
    }
    let mut all_edges = true;
    for &(u, v) in &step.matched {
        if !g.adjacent(u, v) {
            out.push(StepViolation::NotAnEdge(u, v));
            all_edges = false;
        }
    }
    if all_edges && !is_induced_in(g, &step.matched) {
        out.push(StepViolation::NotInduced);
    }
    for &e in step.matched.iter().flat_map(|(a, b)| [a, b]) {
        let escaped = std::iter::once(&e)
            .chain(g.neighbors_of(e))
            .find(|w| !step.removed.contains(w));
        if let Some(&neighbor) = escaped {
            out.push(StepViolation::NeighborhoodEscapes {
                endpoint: e,
                neighbor,
            });
        }
    }
    let isolated: VertexSet = step
        .removed
        .iter()
        .flat_map(|&v| g.neighbors_of(v).iter().copied())
        .filter(|w| {
            !step.removed.contains(w) && g.neighbors_of(*w).iter().all(|y| step.removed.contains(y))
        })
        .collect();
    if 9 * k < step.removed.len() + isolated.len() {
        out.push(StepViolation::Accounting {
            matched: k,
            removed: step.removed.len(),
            isolated: isolated.len(),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown rule {0:?}")]
    Rule(String),
    #[error("missing final matching line")]
    MissingMatching,
}

fn write_edges(f: &mut fmt::Formatter<'_>, edges: &[(VertexId, VertexId)]) -> fmt::Result {
    if edges.is_empty() {
        return f.write_str("-");
    }
    for (i, (u, v)) in edges.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{u}-{v}")?;
    }
    Ok(())
}

/// Text form of a certificate: one `step` line per step followed by the final
/// `matching` line. Empty edge lists are written as `-`.
pub struct CertificateText<'a> {
    pub certificate: &'a Certificate,
    pub matching: &'a Matching,
}

impl fmt::Display for CertificateText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, step) in self.certificate.steps.iter().enumerate() {
            write!(f, "step {} rule {} match ", k + 1, step.rule)?;
            write_edges(f, &step.matched)?;
            f.write_str(" remove ")?;
            for (i, v) in step.removed.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        f.write_str("matching ")?;
        write_edges(f, self.matching.edges())?;
        f.write_str("\n")
    }
}

fn parse_edges(tok: &str, line: usize) -> Result<Vec<(VertexId, VertexId)>, CertificateParseError> {
    if tok == "-" {
        return Ok(Vec::new());
    }
    tok.split(',')
        .map(|e| {
            let (a, b) = e
                .split_once('-')
                .ok_or_else(|| syntax(line, format!("bad edge {e:?}")))?;
            Ok((parse_id(a, line)?, parse_id(b, line)?))
        })
        .collect()
}

fn parse_id(s: &str, line: usize) -> Result<VertexId, CertificateParseError> {
    s.parse()
        .map_err(|_| syntax(line, format!("bad vertex id {s:?}")))
}

fn syntax(line: usize, message: String) -> CertificateParseError {
    CertificateParseError::Syntax { line, message }
}

/// Parses the text form back into steps and the final matching. Lines starting
/// with `#` and blank lines are ignored. Metrics other than the removed count
/// are not part of the text form.
pub fn parse_certificate(text: &str) -> Result<(Certificate, Matching), CertificateParseError> {
    let mut steps = Vec::new();
    let mut matching = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            ["step", k, "rule", rule, "match", edges, "remove", removed] => {
                if k.parse::<usize>().ok() != Some(steps.len() + 1) {
                    return Err(syntax(line, format!("expected step {}", steps.len() + 1)));
                }
                let removed: VertexSet = removed
                    .split(',')
                    .map(|v| parse_id(v, line))
                    .collect::<Result<_, _>>()?;
                let matched = Matching::new(parse_edges(edges, line)?).edges().to_vec();
                steps.push(ReductionStep {
                    rule: rule.parse()?,
                    matched,
                    metrics: StepMetrics {
                        removed: removed.len(),
                        ..StepMetrics::default()
                    },
                    removed,
                });
            }
            ["matching", edges] if matching.is_none() => {
                matching = Some(Matching::new(parse_edges(edges, line)?));
            }
            ["matching"] if matching.is_none() => matching = Some(Matching::default()),
            _ => return Err(syntax(line, format!("unrecognized line {raw:?}"))),
        }
    }
    let matching = matching.ok_or(CertificateParseError::MissingMatching)?;
    Ok((Certificate { steps }, matching))
}
