//! Independent checking of solutions and certificates, and randomized
//! cross-checks of the reduction engine against the exact solver.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::engine::{solve, Certificate, Rule, SolveError, SolveResult};
use crate::exact::{max_induced_matching, SearchBudget};
use crate::graph::{is_induced_in, Graph, GraphError, Matching, VertexId, VertexSet};
use crate::instances::{gen_random_maxdeg4, prng_next, Prng, RandomGraphConfig};
use crate::io::format_graph;

/// Node budget for re-solving certificate components exactly.
const REPLAY_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub induced_ok: bool,
    /// `9 |M| >= n - i`.
    pub bound_ok: bool,
    /// Certificate replay succeeded; always true for plain solution checks.
    pub certificate_ok: bool,
    pub details: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.induced_ok && self.bound_ok && self.certificate_ok
    }
}

fn isolated_count(g: &Graph) -> usize {
    g.vertices()
        .iter()
        .filter(|&&v| g.degree(v).expect("own vertex") == 0)
        .count()
}

pub fn verify_solution(g: &Graph, m: &Matching) -> Result<VerifyReport, GraphError> {
    let induced_ok = g.is_induced_matching(m)?;
    let n = g.vertex_count();
    let i = isolated_count(g);
    let bound_ok = 9 * m.len() >= n - i;
    let mut details = Vec::new();
    if !induced_ok {
        details.push("matching is not an induced matching of the graph".to_string());
    }
    if !bound_ok {
        details.push(format!("9 * {} < n - i = {}", m.len(), n - i));
    }
    Ok(VerifyReport {
        induced_ok,
        bound_ok,
        certificate_ok: true,
        details,
    })
}

/// Replays the certificate against `g`.
///
/// Before each step, vertices without remaining neighbors are set aside. A
/// reduction step must match one or two edges of the current graph forming an
/// induced matching, remove every neighbor of its matched vertices, and satisfy
/// `9 |matched| >= |removed| + i`, where `i` counts the vertices it leaves
/// without neighbors. An EXACT step must remove a whole current component and
/// match a maximum induced matching of it. At the end no edge may remain, and
/// the union of matched edges must equal the reported matching.
pub fn verify_certificate(g: &Graph, r: &SolveResult) -> Result<VerifyReport, GraphError> {
    let mut report = verify_solution(g, &r.matching)?;
    let mut details = Vec::new();
    if r.n != g.vertex_count() {
        details.push(format!(
            "result reports n = {} for a graph on {} vertices",
            r.n,
            g.vertex_count()
        ));
    }
    if r.isolated != isolated_count(g) {
        details.push(format!(
            "result reports {} isolated vertices, graph has {}",
            r.isolated,
            isolated_count(g)
        ));
    }
    Replay::new(g).run(&r.certificate, &mut details);
    let union = r.certificate.matching();
    if union != r.matching {
        details.push("union of step matchings differs from the reported matching".to_string());
    }
    report.certificate_ok = details.is_empty();
    report.details.extend(details);
    Ok(report)
}

struct Replay<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    live_degree: Vec<usize>,
}

impl<'a> Replay<'a> {
    fn new(g: &'a Graph) -> Self {
        let bound = g.id_bound();
        let mut alive = vec![false; bound];
        let mut live_degree = vec![0; bound];
        for &v in g.vertices() {
            let d = g.degree(v).expect("own vertex");
            alive[v] = d > 0;
            live_degree[v] = d;
        }
        Replay {
            g,
            alive,
            live_degree,
        }
    }

    fn alive(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    fn live_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.g
            .neighbors(v)
            .unwrap_or(&[])
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
    }

    fn run(&mut self, cert: &Certificate, details: &mut Vec<String>) {
        for (k, step) in cert.steps.iter().enumerate() {
            let label = format!("step {} ({})", k + 1, step.rule);
            if let Some(&v) = step.removed.iter().find(|&&v| !self.alive(v)) {
                details.push(format!("{label}: vertex {v} is not in the current graph"));
                continue;
            }
            let ends: Vec<VertexId> = step.matched.iter().flat_map(|&(a, b)| [a, b]).collect();
            if let Some(&v) = ends.iter().find(|&&v| !self.alive(v)) {
                details.push(format!(
                    "{label}: matched vertex {v} is not in the current graph"
                ));
                continue;
            }
            if !is_induced_in(self.g, &step.matched) {
                details.push(format!(
                    "{label}: matched edges are not an induced matching"
                ));
            }
            for &e in &ends {
                if let Some(w) = std::iter::once(e)
                    .chain(self.live_neighbors(e))
                    .find(|w| !step.removed.contains(w))
                {
                    details.push(format!(
                        "{label}: {w} in the closed neighborhood of {e} is not removed"
                    ));
                }
            }
            match step.rule {
                Rule::Exact => {
                    self.check_exact(step.removed.clone(), &step.matched, &label, details)
                }
                _ => {
                    if !(1..=2).contains(&step.matched.len()) {
                        details.push(format!("{label}: matches {} edges", step.matched.len()));
                    }
                    let isolated = self.isolated_after(&step.removed);
                    if 9 * step.matched.len() < step.removed.len() + isolated {
                        details.push(format!(
                            "{label}: 9*{} < {} removed + {} isolated",
                            step.matched.len(),
                            step.removed.len(),
                            isolated
                        ));
                    }
                }
            }
            // Failed steps are applied anyway so later steps are still checked.
            self.delete(&step.removed);
        }
        let left: Vec<VertexId> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        if !left.is_empty() {
            details.push(format!(
                "{} vertices with neighbors were never removed, e.g. {}",
                left.len(),
                left[0]
            ));
        }
    }

    fn isolated_after(&self, removed: &VertexSet) -> usize {
        let boundary: VertexSet = removed
            .iter()
            .flat_map(|&v| self.live_neighbors(v))
            .filter(|w| !removed.contains(w))
            .collect();
        boundary
            .iter()
            .filter(|&&w| self.live_neighbors(w).all(|y| removed.contains(&y)))
            .count()
    }

    fn check_exact(
        &self,
        comp: VertexSet,
        matched: &[(VertexId, VertexId)],
        label: &str,
        details: &mut Vec<String>,
    ) {
        if let Some(&v) = comp
            .iter()
            .find(|&&v| self.live_neighbors(v).any(|w| !comp.contains(&w)))
        {
            details.push(format!(
                "{label}: removed set is not closed under adjacency at {v}"
            ));
            return;
        }
        let Some(&start) = comp.first() else {
            details.push(format!("{label}: removes nothing"));
            return;
        };
        let mut seen = VertexSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for w in self.live_neighbors(x) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != comp.len() {
            details.push(format!("{label}: removed set is not connected"));
            return;
        }
        if 9 * matched.len() < comp.len() {
            details.push(format!(
                "{label}: 9*{} < component size {}",
                matched.len(),
                comp.len()
            ));
        }
        let sub = self
            .g
            .induced_subgraph(&comp)
            .expect("alive vertices belong to g");
        match max_induced_matching(&sub, SearchBudget::nodes(REPLAY_BUDGET)) {
            Ok(best) if best.len() == matched.len() => {}
            Ok(best) => details.push(format!(
                "{label}: matched {} edges but the component's optimum is {}",
                matched.len(),
                best.len()
            )),
            Err(e) => details.push(format!("{label}: cannot confirm optimality: {e}")),
        }
    }

    fn delete(&mut self, removed: &VertexSet) {
        for &v in removed {
            if !self.alive(v) {
                continue;
            }
            self.alive[v] = false;
            for &w in self.g.neighbors(v).unwrap_or(&[]) {
                if self.alive[w] {
                    self.live_degree[w] -= 1;
                    if self.live_degree[w] == 0 {
                        self.alive[w] = false;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Instances up to this size are also compared with the exact solver.
    pub cross_check_max_n: usize,
    /// Hand-picked graphs run after the random trials.
    pub extra_instances: Vec<Graph>,
}

impl FuzzConfig {
    pub fn new(trials: usize, n_min: usize, n_max: usize, seed: u64) -> Self {
        FuzzConfig {
            trials,
            n_min,
            n_max,
            seed,
            cross_check_max_n: 20,
            extra_instances: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(format!(
                "invalid size range [{}, {}]",
                self.n_min, self.n_max
            ));
        }
        if self.cross_check_max_n > 24 {
            return Err("cross-check size is capped at 24".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    Solve(SolveError),
    Verify(Vec<String>),
    ExceedsOptimum { solved: usize, optimum: usize },
    BelowBound { optimum: usize, n: usize },
    ExactBudget,
}

impl std::fmt::Display for FailureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailureKind::Solve(e) => write!(f, "solve failed: {e}"),
            FailureKind::Verify(d) => write!(f, "verification failed: {}", d.join("; ")),
            FailureKind::ExceedsOptimum { solved, optimum } => {
                write!(
                    f,
                    "solve returned {solved} edges but the optimum is {optimum}"
                )
            }
            FailureKind::BelowBound { optimum, n } => {
                write!(f, "optimum {optimum} is below ceil({n}/9)")
            }
            FailureKind::ExactBudget => f.write_str("exact solver budget exceeded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzFailure {
    /// Generator seed; `None` for hand-picked instances.
    pub seed: Option<u64>,
    pub graph: String,
    pub certificate: Option<String>,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials_run: usize,
    /// Instances rejected because they are the doubled 5-cycle.
    pub rejected_c25: usize,
    pub failures: Vec<FuzzFailure>,
    pub max_runtime_per_instance: Duration,
}

impl FuzzReport {
    /// The deterministic part of the report as text lines.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "trials {}\nrejected_c25 {}\nfailures {}\n",
            self.trials_run,
            self.rejected_c25,
            self.failures.len()
        );
        for f in &self.failures {
            let seed = f.seed.map_or("-".to_string(), |s| s.to_string());
            s.push_str(&format!("failure seed {seed}: {}\n", f.kind));
        }
        s
    }
}

/// Seed of trial `index`: the first splitmix64 output from `master + index`.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    prng_next(Prng::new(master.wrapping_add(index as u64))).0
}

/// Size and generator configuration of trial `index`.
pub fn trial_config(cfg: &FuzzConfig, index: usize) -> RandomGraphConfig {
    let seed = trial_seed(cfg.seed, index);
    let mut rng = Prng::new(seed);
    let n = cfg.n_min + rng.below_usize(cfg.n_max - cfg.n_min + 1);
    RandomGraphConfig::with_default_attempts(n, seed)
}

enum Outcome {
    Pass,
    RejectedC25,
    Fail(FuzzFailure),
}

pub fn fuzz(cfg: &FuzzConfig) -> FuzzReport {
    let random = (0..cfg.trials).into_par_iter().map(|i| {
        let rc = trial_config(cfg, i);
        (Some(rc.seed), gen_random_maxdeg4(&rc))
    });
    let extra = cfg.extra_instances.par_iter().map(|g| (None, g.clone()));
    let results: Vec<(Outcome, Duration)> = random
        .chain(extra)
        .map(|(seed, g)| {
            let t0 = Instant::now();
            let out = run_trial(cfg, seed, &g);
            (out, t0.elapsed())
        })
        .collect();

    let mut report = FuzzReport {
        trials_run: results.len(),
        rejected_c25: 0,
        failures: Vec::new(),
        max_runtime_per_instance: Duration::ZERO,
    };
    for (out, dt) in results {
        report.max_runtime_per_instance = report.max_runtime_per_instance.max(dt);
        match out {
            Outcome::Pass => {}
            Outcome::RejectedC25 => report.rejected_c25 += 1,
            Outcome::Fail(f) => report.failures.push(f),
        }
    }
    report
}

fn run_trial(cfg: &FuzzConfig, seed: Option<u64>, g: &Graph) -> Outcome {
    let failure = |kind, certificate: Option<String>| {
        Outcome::Fail(FuzzFailure {
            seed,
            graph: format_graph(g),
            certificate,
            kind,
        })
    };
    let comps = g.components();
    let c25 = comps.iter().any(|c| {
        c.len() == 10
            && g.induced_subgraph(c)
                .map(|h| h.is_isomorphic_c25())
                .unwrap_or(false)
    });
    let result = match solve(g) {
        Ok(r) if !c25 => r,
        Ok(r) => {
            return failure(
                FailureKind::Verify(vec!["doubled 5-cycle component was accepted".into()]),
                Some(r.certificate_text()),
            )
        }
        Err(SolveError::IsC25Component(_)) if c25 => return Outcome::RejectedC25,
        Err(e) => return failure(FailureKind::Solve(e), None),
    };
    let text = result.certificate_text();
    let report = verify_certificate(g, &result).expect("matching uses graph vertices");
    if !report.ok() {
        return failure(FailureKind::Verify(report.details), Some(text));
    }
    let n = g.vertex_count();
    if n <= cfg.cross_check_max_n {
        let optimum = match max_induced_matching(g, SearchBudget::nodes(REPLAY_BUDGET)) {
            Ok(m) => m.len(),
            Err(_) => return failure(FailureKind::ExactBudget, Some(text)),
        };
        if result.matching.len() > optimum {
            return failure(
                FailureKind::ExceedsOptimum {
                    solved: result.matching.len(),
                    optimum,
                },
                Some(text),
            );
        }
        if n >= 2 && comps.len() == 1 && 9 * optimum < n {
            return failure(FailureKind::BelowBound { optimum, n }, Some(text));
        }
    }
    Outcome::Pass
}
