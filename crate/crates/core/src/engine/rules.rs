//! Local reduction rules.
//!
//! Each rule has an anchor predicate, used to find the lexicographically
//! smallest witness, and a builder that turns the witness at an anchor into a
//! step. A builder may assume that every higher-priority rule is inapplicable
//! everywhere in the graph; the counting arguments behind the bounds it asserts
//! depend on that.
//!
//! One-edge steps remove `X = N(u) ∪ N(v)` for the matched edge `uv`. Two-edge
//! steps remove `X ∪ I(G - X) ∪ N[a, b, c, d]` for matched edges `ab`, `cd`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::step::{ReductionStep, Rule, StepMetrics};
use super::work::WorkGraph;
use crate::graph::{is_induced_in, Adjacency, VertexId, VertexSet};

/// A rule's existence or counting guarantee did not hold at a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RuleFailure {
    pub rule: Rule,
    pub witness: Vec<VertexId>,
    pub message: String,
}

type Built = Result<ReductionStep, RuleFailure>;

fn fail(rule: Rule, witness: &[VertexId], message: impl Into<String>) -> RuleFailure {
    RuleFailure {
        rule,
        witness: witness.to_vec(),
        message: message.into(),
    }
}

fn edge(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

fn only_neighbor(g: &WorkGraph, v: VertexId) -> VertexId {
    g.neighbors_of(v)[0]
}

/// Whether `a` anchors a witness of `rule`.
pub(crate) fn applies(rule: Rule, g: &WorkGraph, a: VertexId) -> bool {
    let deg = g.degree(a);
    match rule {
        Rule::R1 => deg == 1 && g.degree(only_neighbor(g, a)) <= 3,
        Rule::R2 => deg == 1 && partner_end_vertex(g, a).is_some(),
        Rule::R3 => deg == 1 && end_vertex_at_distance_four(g, a).is_some(),
        Rule::R4 => deg == 1,
        Rule::R5 => deg == 2 && g.neighbors_of(a).iter().any(|&w| g.degree(w) == 2),
        Rule::R6 => {
            deg == 2 && {
                let n = g.neighbors_of(a);
                g.adjacent(n[0], n[1])
            }
        }
        Rule::R7 => {
            deg == 2 && {
                let n = g.neighbors_of(a);
                g.common(n[0], n[1]).any(|w| w != a)
            }
        }
        Rule::R8 => deg == 2,
        Rule::R9 => in_triangle(g, a),
        Rule::R10 => deg == 3 && on_four_cycle(g, a),
        Rule::R11 => on_four_cycle(g, a),
        Rule::R12 => deg >= 1,
        Rule::Exact => false,
    }
}

fn partner_end_vertex(g: &WorkGraph, u: VertexId) -> Option<VertexId> {
    let v = only_neighbor(g, u);
    g.neighbors_of(v)
        .iter()
        .copied()
        .find(|&w| w != u && g.degree(w) == 1)
}

/// Smallest end-vertex at distance exactly 4 from `u`.
fn end_vertex_at_distance_four(g: &WorkGraph, u: VertexId) -> Option<VertexId> {
    let mut dist = HashMap::from([(u, 0usize)]);
    let mut queue = VecDeque::from([u]);
    let mut best = None;
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == 4 {
            if g.degree(x) == 1 && best.is_none_or(|b| x < b) {
                best = Some(x);
            }
            continue;
        }
        for &w in g.neighbors_of(x) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    best
}

fn in_triangle(g: &WorkGraph, a: VertexId) -> bool {
    let n = g.neighbors_of(a);
    n.iter()
        .enumerate()
        .any(|(i, &b)| n[i + 1..].iter().any(|&c| g.adjacent(b, c)))
}

fn on_four_cycle(g: &WorkGraph, a: VertexId) -> bool {
    let n = g.neighbors_of(a);
    n.iter()
        .enumerate()
        .any(|(i, &b)| n[i + 1..].iter().any(|&d| g.common(b, d).any(|c| c != a)))
}

/// Triangles through `a` as sorted triples, ascending.
fn triangles_at(g: &WorkGraph, a: VertexId) -> Vec<[VertexId; 3]> {
    let n = g.neighbors_of(a);
    let mut out = Vec::new();
    for (i, &b) in n.iter().enumerate() {
        for &c in &n[i + 1..] {
            if g.adjacent(b, c) {
                let mut t = [a, b, c];
                t.sort_unstable();
                out.push(t);
            }
        }
    }
    out.sort_unstable();
    out
}

/// 4-cycles `a-b-c-d` through `a` with `b < d`, ascending by `(b, c, d)`.
fn four_cycles_at(g: &WorkGraph, a: VertexId) -> Vec<[VertexId; 4]> {
    let n = g.neighbors_of(a);
    let mut out = Vec::new();
    for (i, &b) in n.iter().enumerate() {
        for &d in &n[i + 1..] {
            for c in g.common(b, d).filter(|&c| c != a) {
                out.push([a, b, c, d]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// First pair of edges, in lexicographic order, with all endpoints in `s` that
/// form an induced matching of `g`.
pub(crate) fn first_induced_pair<G: Adjacency>(
    g: &G,
    s: &VertexSet,
) -> Option<[(VertexId, VertexId); 2]> {
    let edges: Vec<_> = s
        .iter()
        .flat_map(|&a| {
            g.neighbors_of(a)
                .iter()
                .filter(move |&&b| b > a && s.contains(&b))
                .map(move |&b| (a, b))
        })
        .collect();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if is_induced_in(g, &[e, f]) {
                return Some([e, f]);
            }
        }
    }
    None
}

struct Ctx<'a> {
    g: &'a WorkGraph,
    rule: Rule,
}

impl Ctx<'_> {
    fn base(&self, u: VertexId, v: VertexId) -> (VertexSet, VertexSet) {
        let x = self.g.open_union(&[u, v]);
        let iso = self.g.isolated_after(&x);
        (x, iso)
    }

    fn step(
        &self,
        matched: Vec<(VertexId, VertexId)>,
        removed: VertexSet,
        d_out: Option<usize>,
        spill: Option<usize>,
    ) -> ReductionStep {
        let mut matched: Vec<_> = matched.into_iter().map(|(a, b)| edge(a, b)).collect();
        matched.sort_unstable();
        ReductionStep {
            rule: self.rule,
            metrics: StepMetrics {
                removed: removed.len(),
                isolated_created: Some(self.g.isolated_after(&removed).len()),
                d_out,
                spill,
            },
            matched,
            removed,
        }
    }

    fn one_edge(&self, u: VertexId, v: VertexId, x: VertexSet) -> ReductionStep {
        let d = self.g.d_out(&x);
        self.step(vec![(u, v)], x, Some(d), None)
    }

    /// Two-edge step removing `x ∪ iso ∪ N[endpoints]`.
    fn two_edge(
        &self,
        pair: [(VertexId, VertexId); 2],
        x: &VertexSet,
        iso: &VertexSet,
    ) -> (ReductionStep, usize) {
        let ends = [pair[0].0, pair[0].1, pair[1].0, pair[1].1];
        let reach = self.g.closed_union(&ends);
        let spill = reach
            .iter()
            .filter(|w| !x.contains(w) && !iso.contains(w))
            .count();
        let removed: VertexSet = x.iter().chain(iso).chain(&reach).copied().collect();
        let d = self.g.d_out(x);
        (
            self.step(pair.to_vec(), removed, Some(d), Some(spill)),
            spill,
        )
    }

    fn fail(&self, witness: &[VertexId], message: impl Into<String>) -> RuleFailure {
        fail(self.rule, witness, message)
    }
}

/// Builds the step for `rule` at anchor `a`.
pub(crate) fn build(rule: Rule, g: &WorkGraph, a: VertexId) -> Built {
    let cx = Ctx { g, rule };
    match rule {
        Rule::R1 => {
            let v = only_neighbor(g, a);
            Ok(cx.one_edge(a, v, g.closed_union(&[v])))
        }
        Rule::R2 => build_r2(&cx, a),
        Rule::R3 => build_r3(&cx, a),
        Rule::R4 => {
            let v = only_neighbor(g, a);
            let x = g.closed_union(&[v]);
            let iso = g.isolated_after(&x);
            if iso.len() > 4 {
                return Err(cx.fail(&[a, v], format!("i(G - X) = {} > 4", iso.len())));
            }
            Ok(cx.one_edge(a, v, x))
        }
        Rule::R5 => {
            let v = *g
                .neighbors_of(a)
                .iter()
                .find(|&&w| g.degree(w) == 2)
                .ok_or_else(|| cx.fail(&[a], "no degree-2 neighbor"))?;
            Ok(cx.one_edge(a, v, g.open_union(&[a, v])))
        }
        Rule::R6 => {
            let v = g.neighbors_of(a)[0];
            Ok(cx.one_edge(a, v, g.open_union(&[a, v])))
        }
        Rule::R7 => build_r7(&cx, a),
        Rule::R8 => build_r8(&cx, a),
        Rule::R9 => build_r9(&cx, a),
        Rule::R10 => build_r10(&cx, a),
        Rule::R11 => build_r11(&cx, a),
        Rule::R12 => {
            let v = g.neighbors_of(a)[0];
            let x = g.open_union(&[a, v]);
            let iso = g.isolated_after(&x);
            if !iso.is_empty() {
                return Err(cx.fail(
                    &[a, v],
                    format!("{} isolated vertices at girth >= 5", iso.len()),
                ));
            }
            Ok(cx.one_edge(a, v, x))
        }
        Rule::Exact => Err(cx.fail(&[a], "EXACT is not a local rule")),
    }
}

fn build_r2(cx: &Ctx<'_>, u1: VertexId) -> Built {
    let g = cx.g;
    let v = only_neighbor(g, u1);
    let u2 = partner_end_vertex(g, u1).ok_or_else(|| cx.fail(&[u1], "no second end-vertex"))?;
    if g.degree(v) != 4 {
        return Err(cx.fail(
            &[u1, u2, v],
            "common neighbor of end-vertices has degree < 4",
        ));
    }
    let x = g.closed_union(&[v]);
    let iso = g.isolated_after(&x);
    if iso.len() <= 4 {
        return Ok(cx.one_edge(u1, v, x));
    }
    let ws: Vec<VertexId> = g
        .neighbors_of(v)
        .iter()
        .copied()
        .filter(|&w| w != u1 && w != u2)
        .collect();
    let witness = [u1, u2, v];
    let &[w1, w2] = ws.as_slice() else {
        return Err(cx.fail(&witness, "expected two non-end neighbors"));
    };
    if g.adjacent(w1, w2) {
        return Err(cx.fail(&witness, format!("{w1}-{w2} adjacent with i(G - X) >= 5")));
    }
    let end_at = |w: VertexId| {
        g.neighbors_of(w)
            .iter()
            .copied()
            .find(|&t| g.degree(t) == 1)
    };
    let (Some(t1), Some(t2)) = (end_at(w1), end_at(w2)) else {
        return Err(cx.fail(&witness, "a remaining neighbor of v has no end-vertex"));
    };
    let pair = [(w1, t1), (w2, t2)];
    if !is_induced_in(g, &pair) {
        return Err(cx.fail(&witness, "end-vertex pair is not induced"));
    }
    let removed: VertexSet = x.iter().copied().chain(g.open_union(&[w1, w2])).collect();
    let d = g.d_out(&x);
    Ok(cx.step(pair.to_vec(), removed, Some(d), None))
}

fn build_r3(cx: &Ctx<'_>, u1: VertexId) -> Built {
    let g = cx.g;
    let u2 = end_vertex_at_distance_four(g, u1)
        .ok_or_else(|| cx.fail(&[u1], "no end-vertex at distance 4"))?;
    let v1 = only_neighbor(g, u1);
    let v2 = only_neighbor(g, u2);
    let pair = [(u1, v1), (u2, v2)];
    if !is_induced_in(g, &pair) {
        return Err(cx.fail(&[u1, u2], "distance-4 end-vertex pair is not induced"));
    }
    let removed = g.closed_union(&[v1, v2]);
    let d = g.d_out(&removed);
    Ok(cx.step(pair.to_vec(), removed, Some(d), None))
}

fn build_r7(cx: &Ctx<'_>, u: VertexId) -> Built {
    let g = cx.g;
    let n = g.neighbors_of(u);
    for (v, t) in [(n[0], n[1]), (n[1], n[0])] {
        for w in g.common(v, t).filter(|&w| w != u) {
            let (x, iso) = cx.base(u, v);
            if iso.len() <= 3 {
                return Ok(cx.one_edge(u, v, x));
            }
            for &s in iso.iter().filter(|&&s| !g.adjacent(s, t)) {
                for &r in g.neighbors_of(v) {
                    if r == u || r == w || !g.adjacent(r, s) || g.adjacent(r, t) {
                        continue;
                    }
                    let pair = [(u, t), (r, s)];
                    if is_induced_in(g, &pair) {
                        return Ok(cx.two_edge(pair, &x, &iso).0);
                    }
                }
            }
        }
    }
    Err(cx.fail(&[u], "no induced pair {ut, rs} on any 4-cycle through u"))
}

fn build_r8(cx: &Ctx<'_>, u: VertexId) -> Built {
    let g = cx.g;
    let n = g.neighbors_of(u);
    for (v, w) in [(n[0], n[1]), (n[1], n[0])] {
        let (x, iso) = cx.base(u, v);
        if iso.len() <= 3 {
            return Ok(cx.one_edge(u, v, x));
        }
        for &s in iso.iter().filter(|&&s| !g.adjacent(s, w)) {
            for t in g.common(v, s) {
                let pair = [(s, t), (u, w)];
                if is_induced_in(g, &pair) {
                    return Ok(cx.two_edge(pair, &x, &iso).0);
                }
            }
        }
    }
    Err(cx.fail(&[u], "no induced pair {st, uw}"))
}

fn build_r9(cx: &Ctx<'_>, a: VertexId) -> Built {
    let g = cx.g;
    for [p, q, r0] in triangles_at(g, a) {
        for (u, v, w) in [(p, q, r0), (p, r0, q), (q, r0, p)] {
            let (x, iso) = cx.base(u, v);
            if iso.len() <= 2 {
                return Ok(cx.one_edge(u, v, x));
            }
            let around: BTreeSet<VertexId> = g
                .open_union(&[u, v])
                .into_iter()
                .filter(|&r| r != u && r != v && r != w)
                .collect();
            for &s in iso.iter().filter(|&&s| !g.adjacent(s, w)) {
                for &r in around.iter().filter(|&&r| g.adjacent(r, s)) {
                    let pair = match (g.adjacent(r, u), g.adjacent(r, v)) {
                        (false, true) => [(u, w), (r, s)],
                        (true, false) => [(v, w), (r, s)],
                        _ => continue,
                    };
                    if is_induced_in(g, &pair) {
                        return Ok(cx.two_edge(pair, &x, &iso).0);
                    }
                }
            }
        }
    }
    Err(cx.fail(
        &[a],
        "no induced pair {uw, rs} for any triangle through the anchor",
    ))
}

fn build_r10(cx: &Ctx<'_>, u: VertexId) -> Built {
    let g = cx.g;
    let n = g.neighbors_of(u);
    let mut offs: Vec<VertexId> = Vec::new();
    for cycle in four_cycles_at(g, u) {
        let v = *n
            .iter()
            .find(|&&w| w != cycle[1] && w != cycle[3])
            .expect("degree-3 vertex has a third neighbor");
        if !offs.contains(&v) {
            offs.push(v);
        }
    }
    for v in offs {
        let (x, iso) = cx.base(u, v);
        if iso.len() <= 2 {
            return Ok(cx.one_edge(u, v, x));
        }
        if g.degree(v) == 3 {
            if iso.len() > 3 {
                return Err(cx.fail(
                    &[u, v],
                    format!("d(v) = 3 but i(G - X) = {} > 3", iso.len()),
                ));
            }
            return Ok(cx.one_edge(u, v, x));
        }
        let within: VertexSet = x.union(&iso).copied().collect();
        if let Some(pair) = first_induced_pair(g, &within) {
            let (step, spill) = cx.two_edge(pair, &x, &iso);
            if spill > 4 {
                return Err(cx.fail(&[u, v], format!("neighborhood spill {spill} > 4")));
            }
            return Ok(step);
        }
    }
    Err(cx.fail(&[u], "no induced 2-matching in G[X ∪ I(G - X)]"))
}

fn build_r11(cx: &Ctx<'_>, a: VertexId) -> Built {
    let g = cx.g;
    for [_, b, _, d] in four_cycles_at(g, a) {
        for v in [b, d] {
            let (x, iso) = cx.base(a, v);
            if iso.len() <= 1 {
                return Ok(cx.one_edge(a, v, x));
            }
            if let Some(&s) = iso.iter().find(|&&s| g.degree(s) != 4) {
                return Err(cx.fail(&[a, v, s], "isolated vertex of degree < 4"));
            }
            let within: VertexSet = x.union(&iso).copied().collect();
            if let Some(pair) = first_induced_pair(g, &within) {
                let (step, spill) = cx.two_edge(pair, &x, &iso);
                if spill > 4 {
                    return Err(cx.fail(&[a, v], format!("neighborhood spill {spill} > 4")));
                }
                return Ok(step);
            }
        }
    }
    Err(cx.fail(
        &[a],
        "no induced 2-matching in G[X ∪ I(G - X)] for any 4-cycle",
    ))
}
