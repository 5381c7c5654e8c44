//! Constructive induced matching of size at least `(n - i) / 9` for graphs of
//! maximum degree 4 with no component isomorphic to the doubled 5-cycle.
//!
//! The input is split into components. Isolated vertices are only counted.
//! Components with at most [`DEFAULT_EXACT_THRESHOLD`] vertices are solved
//! exactly. Larger components are reduced by the highest-priority applicable
//! local rule (see [`rules`]); the rule matches one or two edges, deletes a
//! bounded neighborhood of them, and the remainder is handled the same way.
//! Every step is recorded in a [`Certificate`] and checked by
//! [`validate_step`] before it is applied.

mod rules;
mod step;
mod work;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::exact::{max_induced_matching, SearchBudget};
use crate::graph::{Graph, Matching, VertexId, VertexSet};
use crate::io::format_graph;

pub use step::{
    parse_certificate, validate_step, Certificate, CertificateParseError, CertificateText,
    ReductionStep, Rule, StepMetrics, StepViolation,
};

use rules::{applies, build, RuleFailure};
use work::WorkGraph;

pub const DEFAULT_EXACT_THRESHOLD: usize = 18;
pub const MAX_DEGREE: usize = 4;

/// A property the reduction relies on failed at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantViolation {
    pub rule: Rule,
    pub witness: Vec<VertexId>,
    pub message: String,
    /// The offending component in the text graph format, relabeled, with a
    /// comment line listing the original ids.
    pub graph: String,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.rule, self.witness, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("vertex {vertex} has degree {degree}, above the maximum of 4")]
    MaxDegreeExceeded { vertex: VertexId, degree: usize },
    #[error("component {0:?} is isomorphic to C_{{2,5}}")]
    IsC25Component(VertexSet),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(Box<InvariantViolation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Components of at most this many vertices are solved exactly.
    pub exact_threshold: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub matching: Matching,
    pub certificate: Certificate,
    pub n: usize,
    /// Isolated vertices of the input.
    pub isolated: usize,
}

impl SolveResult {
    pub fn certificate_text(&self) -> String {
        CertificateText {
            certificate: &self.certificate,
            matching: &self.matching,
        }
        .to_string()
    }
}

pub fn solve(g: &Graph) -> Result<SolveResult, SolveError> {
    solve_with(g, &SolveOptions::default())
}

pub fn solve_with(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    check_max_degree(g)?;
    let components = g.components();
    if let Some(c) = components.iter().find(|c| c.len() == 10 && is_c25(g, c)) {
        return Err(SolveError::IsC25Component(c.clone()));
    }

    let mut driver = Driver::new(g, opts.exact_threshold);
    let mut isolated = 0;
    for comp in &components {
        match comp.len() {
            1 => {
                isolated += 1;
                driver.wg.drop_isolated(*comp.first().expect("non-empty"));
            }
            k if k <= opts.exact_threshold => driver.exact(comp)?,
            _ => {}
        }
    }
    driver.rescan_all();
    while let Some(step) = driver.next_step()? {
        driver.apply(step)?;
    }

    let certificate = Certificate {
        steps: driver.steps,
    };
    Ok(SolveResult {
        matching: certificate.matching(),
        certificate,
        n: g.vertex_count(),
        isolated,
    })
}

fn check_max_degree(g: &Graph) -> Result<(), SolveError> {
    for &v in g.vertices() {
        let degree = g.degree(v).expect("own vertex");
        if degree > MAX_DEGREE {
            return Err(SolveError::MaxDegreeExceeded { vertex: v, degree });
        }
    }
    Ok(())
}

fn is_c25(g: &Graph, comp: &VertexSet) -> bool {
    g.induced_subgraph(comp)
        .map(|h| h.is_isomorphic_c25())
        .unwrap_or(false)
}

/// The first applicable rule, in priority order, at its smallest witness.
///
/// Rules are searched over the whole of `g`; callers normally pass a connected
/// graph with more than [`DEFAULT_EXACT_THRESHOLD`] vertices.
pub fn next_reduction(g: &Graph) -> Result<ReductionStep, SolveError> {
    check_max_degree(g)?;
    let wg = WorkGraph::from_graph(g);
    for rule in Rule::REDUCTIONS {
        if let Some(&a) = g.vertices().iter().find(|&&a| applies(rule, &wg, a)) {
            let step = build(rule, &wg, a).map_err(|f| violation(&wg, f))?;
            check(&wg, &step)?;
            return Ok(step);
        }
    }
    Err(violation(
        &wg,
        RuleFailure {
            rule: Rule::R12,
            witness: Vec::new(),
            message: "graph has no edges".into(),
        },
    ))
}

/// The lexicographically first pair of edges with all endpoints in `s` that is
/// an induced matching of `g`.
pub fn find_induced_2matching_within(
    g: &Graph,
    s: &VertexSet,
) -> Option<[(VertexId, VertexId); 2]> {
    rules::first_induced_pair(g, s)
}

fn check(wg: &WorkGraph, step: &ReductionStep) -> Result<(), SolveError> {
    let problems = step::check_step(wg, |v| wg.is_alive(v), step);
    if problems.is_empty() {
        return Ok(());
    }
    let message = problems
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ");
    Err(violation(
        wg,
        RuleFailure {
            rule: step.rule,
            witness: step.matched.iter().flat_map(|&(a, b)| [a, b]).collect(),
            message,
        },
    ))
}

fn violation(wg: &WorkGraph, f: RuleFailure) -> SolveError {
    let graph = match f.witness.first() {
        Some(&v) if wg.is_alive(v) => format_graph(&wg.subgraph(&component_of(wg, v, usize::MAX))),
        _ => String::new(),
    };
    SolveError::InternalInvariantViolation(Box::new(InvariantViolation {
        rule: f.rule,
        witness: f.witness,
        message: f.message,
        graph,
    }))
}

/// Component of `v`, or `None`-like truncation: stops after `limit + 1`
/// vertices.
fn component_of(wg: &WorkGraph, v: VertexId, limit: usize) -> VertexSet {
    let mut seen = VertexSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &w in wg.neighbors(x) {
            if seen.insert(w) {
                if seen.len() > limit {
                    return seen;
                }
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Radius of the neighborhood whose structure decides every anchor predicate
/// except the distance-4 end-vertex rule.
const LOCAL_RADIUS: usize = 2;
/// Same for the distance-4 end-vertex rule.
const FAR_RADIUS: usize = 4;

struct Driver {
    wg: WorkGraph,
    /// Anchors of R1..R11. R12 anchors at the smallest remaining vertex.
    anchors: Vec<BTreeSet<VertexId>>,
    cursor: usize,
    threshold: usize,
    steps: Vec<ReductionStep>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl Driver {
    fn new(g: &Graph, threshold: usize) -> Self {
        let wg = WorkGraph::from_graph(g);
        let bound = wg.id_bound();
        Driver {
            wg,
            anchors: vec![BTreeSet::new(); 11],
            cursor: 0,
            threshold,
            steps: Vec::new(),
            stamp: vec![0; bound],
            epoch: 0,
        }
    }

    fn rescan_all(&mut self) {
        for v in 0..self.wg.id_bound() {
            if self.wg.is_alive(v) {
                self.refresh(v, false);
            }
        }
    }

    /// Recomputes anchor membership of `v`; with `far_only`, only the
    /// distance-4 rule.
    fn refresh(&mut self, v: VertexId, far_only: bool) {
        for rule in &Rule::REDUCTIONS[..11] {
            if far_only && *rule != Rule::R3 {
                continue;
            }
            let set = &mut self.anchors[rule.index()];
            if applies(*rule, &self.wg, v) {
                set.insert(v);
            } else {
                set.remove(&v);
            }
        }
    }

    fn forget(&mut self, v: VertexId) {
        for set in &mut self.anchors {
            set.remove(&v);
        }
    }

    fn next_step(&mut self) -> Result<Option<ReductionStep>, SolveError> {
        for rule in &Rule::REDUCTIONS[..11] {
            if let Some(&a) = self.anchors[rule.index()].first() {
                return build(*rule, &self.wg, a)
                    .map(Some)
                    .map_err(|f| violation(&self.wg, f));
            }
        }
        while self.cursor < self.wg.id_bound() && !self.wg.is_alive(self.cursor) {
            self.cursor += 1;
        }
        if self.cursor == self.wg.id_bound() {
            return Ok(None);
        }
        build(Rule::R12, &self.wg, self.cursor)
            .map(Some)
            .map_err(|f| violation(&self.wg, f))
    }

    fn apply(&mut self, step: ReductionStep) -> Result<(), SolveError> {
        check(&self.wg, &step)?;
        let removed = step.removed.clone();
        self.steps.push(step);
        let boundary = self.wg.remove(&removed);
        for &v in &removed {
            self.forget(v);
        }
        let mut survivors = Vec::new();
        for &b in &boundary {
            if self.wg.degree(b) == 0 {
                self.wg.drop_isolated(b);
                self.forget(b);
            } else {
                survivors.push(b);
            }
        }
        self.split_small_components(&mut survivors)?;
        self.refresh_around(&survivors);
        Ok(())
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch += 1;
        self.epoch
    }

    /// Solves exactly every component of at most `threshold` vertices that
    /// contains a boundary vertex; those vertices are dropped from `boundary`.
    fn split_small_components(&mut self, boundary: &mut Vec<VertexId>) -> Result<(), SolveError> {
        let round = self.epoch + 1;
        let mut small = Vec::new();
        for &b in boundary.iter() {
            if self.stamp[b] >= round {
                continue;
            }
            let id = self.next_epoch();
            self.stamp[b] = id;
            let mut comp = vec![b];
            let mut queue = VecDeque::from([b]);
            let mut large = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &w in self.wg.neighbors(x) {
                    if self.stamp[w] >= round && self.stamp[w] != id {
                        large = true;
                        break 'bfs;
                    }
                    if self.stamp[w] != id {
                        self.stamp[w] = id;
                        comp.push(w);
                        if comp.len() > self.threshold {
                            large = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !large {
                small.push(comp.into_iter().collect::<VertexSet>());
            }
        }
        small.sort_unstable_by_key(|c| *c.first().expect("non-empty"));
        for comp in &small {
            if comp.len() == 10 && self.wg.subgraph(comp).is_isomorphic_c25() {
                return Err(violation(
                    &self.wg,
                    RuleFailure {
                        rule: Rule::Exact,
                        witness: comp.iter().copied().collect(),
                        message: "reduction produced a C_{2,5} component".into(),
                    },
                ));
            }
            self.exact(comp)?;
            for &v in comp {
                self.forget(v);
            }
        }
        boundary.retain(|&b| self.wg.is_alive(b));
        Ok(())
    }

    fn exact(&mut self, comp: &VertexSet) -> Result<(), SolveError> {
        let sub = self.wg.subgraph(comp);
        let m = max_induced_matching(&sub, SearchBudget::UNLIMITED).expect("unlimited budget");
        let step = ReductionStep {
            rule: Rule::Exact,
            matched: m.edges().to_vec(),
            removed: comp.clone(),
            metrics: StepMetrics {
                removed: comp.len(),
                isolated_created: Some(0),
                d_out: Some(0),
                spill: None,
            },
        };
        check(&self.wg, &step)?;
        self.wg.remove(comp);
        self.steps.push(step);
        Ok(())
    }

    /// Re-evaluates anchors within distance 2 of `sources`, and the distance-4
    /// rule within distance 4.
    fn refresh_around(&mut self, sources: &[VertexId]) {
        let id = self.next_epoch();
        let mut queue: VecDeque<(VertexId, usize)> = VecDeque::new();
        for &s in sources {
            if self.stamp[s] != id {
                self.stamp[s] = id;
                queue.push_back((s, 0));
            }
        }
        while let Some((x, d)) = queue.pop_front() {
            if d <= LOCAL_RADIUS {
                self.refresh(x, false);
            } else if self.wg.degree(x) == 1 {
                self.refresh(x, true);
            }
            if d == FAR_RADIUS {
                continue;
            }
            for i in 0..self.wg.neighbors(x).len() {
                let w = self.wg.neighbors(x)[i];
                if self.stamp[w] != id {
                    self.stamp[w] = id;
                    queue.push_back((w, d + 1));
                }
            }
        }
    }
}
