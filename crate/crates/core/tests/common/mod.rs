#![allow(dead_code)]

use std::collections::VecDeque;

use induced_matching::engine::{
    next_reduction, Certificate, ReductionStep, Rule, SolveError, StepMetrics,
};
use induced_matching::exact::{max_induced_matching, SearchBudget};
use induced_matching::graph::{Graph, Matching, VertexId, VertexSet};

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("valid test graph")
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    graph(10, &e)
}

/// Generalized Petersen graph GP(10, 2); vertices 0 and 1 are adjacent.
pub fn dodecahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..10 {
        e.push((i, (i + 1) % 10));
        e.push((i, i + 10));
        e.push((i + 10, (i + 2) % 10 + 10));
    }
    graph(20, &e)
}

pub fn k55_minus_perfect_matching() -> Graph {
    let e: Vec<_> = (0..5)
        .flat_map(|a| (0..5).filter(move |&b| b != a).map(move |b| (a, b + 5)))
        .collect();
    graph(10, &e)
}

pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    graph(leaves + 1, &e)
}

/// Shortest cycle length by BFS from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &s in g.vertices() {
        let mut dist = vec![usize::MAX; g.id_bound()];
        let mut parent = vec![usize::MAX; g.id_bound()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &w in g.neighbors(x).unwrap() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    parent[w] = x;
                    q.push_back(w);
                } else if parent[x] != w {
                    let len = dist[x] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Maximum induced matching size by trying every edge subset, largest first.
pub fn naive_strong_matching_number(g: &Graph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 20, "naive enumeration limited to 20 edges");
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let chosen: Vec<_> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let ok = chosen.iter().enumerate().all(|(i, &(a, b))| {
            chosen[i + 1..].iter().all(|&(c, d)| {
                [a, b]
                    .iter()
                    .all(|&x| x != c && x != d && !g.has_edge(x, c) && !g.has_edge(x, d))
            })
        });
        if ok {
            best = k;
        }
    }
    best
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![None; g.id_bound()];
    for &s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &w in g.neighbors(x).unwrap() {
                match side[w] {
                    None => {
                        side[w] = Some(!side[x].unwrap());
                        q.push_back(w);
                    }
                    Some(c) if c == side[x].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Brute-force isomorphism for small dense-id graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().iter().map(|&v| a.degree(v).unwrap()).collect();
    let mut db: Vec<usize> = b.vertices().iter().map(|&v| b.degree(v).unwrap()).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let (a, _) = a.compact();
    let (b, _) = b.compact();
    fn extend(k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, a: &Graph, b: &Graph) -> bool {
        if k == map.len() {
            return true;
        }
        for t in 0..map.len() {
            if used[t] || a.degree(k).unwrap() != b.degree(t).unwrap() {
                continue;
            }
            if (0..k).all(|j| a.has_edge(j, k) == b.has_edge(map[j], t)) {
                map[k] = t;
                used[t] = true;
                if extend(k + 1, map, used, a, b) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    extend(0, &mut vec![0; n], &mut vec![false; n], &a, &b)
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let e: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    graph(g.vertex_count(), &e)
}

/// Straightforward re-implementation of the solve loop: after each step the
/// remainder is rebuilt, its isolated vertices dropped, its small components
/// solved exactly in order of their smallest vertex, and the next reduction is
/// searched over everything that is left.
pub fn reference_solve(g: &Graph, threshold: usize) -> Result<Certificate, SolveError> {
    let mut steps = Vec::new();
    let mut rest = g.clone();
    loop {
        let mut large = VertexSet::new();
        for comp in rest.components() {
            match comp.len() {
                1 => {}
                k if k <= threshold => {
                    let sub = rest.induced_subgraph(&comp).unwrap();
                    if sub.is_isomorphic_c25() {
                        return Err(SolveError::IsC25Component(comp));
                    }
                    let m = max_induced_matching(&sub, SearchBudget::UNLIMITED).unwrap();
                    steps.push(ReductionStep {
                        rule: Rule::Exact,
                        matched: m.edges().to_vec(),
                        removed: comp,
                        metrics: StepMetrics::default(),
                    });
                }
                _ => large.extend(comp),
            }
        }
        if large.is_empty() {
            return Ok(Certificate { steps });
        }
        let h = rest.induced_subgraph(&large).unwrap();
        let step = next_reduction(&h)?;
        rest = h.remove_vertices(&step.removed).unwrap();
        steps.push(step);
    }
}

pub fn same_trace(a: &Certificate, b: &Certificate) -> bool {
    a.steps.len() == b.steps.len()
        && a.steps
            .iter()
            .zip(&b.steps)
            .all(|(x, y)| x.rule == y.rule && x.matched == y.matched && x.removed == y.removed)
}

pub fn matched_edges(m: &Matching) -> Vec<(VertexId, VertexId)> {
    m.edges().to_vec()
}

/// All connected graphs on `1..=max_n` vertices with maximum degree at most
/// `max_degree`, one per isomorphism class, grouped by vertex count.
///
/// Every connected graph on `n` vertices has a vertex whose removal leaves a
/// connected graph, so extending each class on `n - 1` vertices by a vertex
/// joined to a non-empty subset reaches every class on `n`.
pub fn connected_graphs(max_n: usize, max_degree: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![vec![graph(1, &[])]];
    for n in 2..=max_n {
        let mut buckets: std::collections::HashMap<Vec<(usize, Vec<usize>)>, Vec<Graph>> =
            std::collections::HashMap::new();
        for parent in &levels[n - 2] {
            let base: Vec<_> = parent.edges().collect();
            for mask in 1u32..(1 << (n - 1)) {
                let nbrs: Vec<usize> = (0..n - 1).filter(|&v| mask >> v & 1 == 1).collect();
                if nbrs.len() > max_degree
                    || nbrs
                        .iter()
                        .any(|&v| parent.degree(v).unwrap() >= max_degree)
                {
                    continue;
                }
                let mut e = base.clone();
                e.extend(nbrs.iter().map(|&v| (v, n - 1)));
                let g = graph(n, &e);
                let bucket = buckets.entry(invariant(&g)).or_default();
                if !bucket.iter().any(|h| isomorphic(h, &g)) {
                    bucket.push(g);
                }
            }
        }
        let mut level: Vec<Graph> = buckets.into_values().flatten().collect();
        level.sort_by_key(|g| g.edges().collect::<Vec<_>>());
        levels.push(level);
    }
    levels
}

fn invariant(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut inv: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .iter()
        .map(|&v| {
            let mut nd: Vec<usize> = g
                .neighbors(v)
                .unwrap()
                .iter()
                .map(|&w| g.degree(w).unwrap())
                .collect();
            nd.sort_unstable();
            let tri: usize = g
                .neighbors(v)
                .unwrap()
                .iter()
                .map(|&a| {
                    g.neighbors(v)
                        .unwrap()
                        .iter()
                        .filter(|&&b| b > a && g.has_edge(a, b))
                        .count()
                })
                .sum();
            nd.push(100 + tri);
            (g.degree(v).unwrap(), nd)
        })
        .collect();
    inv.sort();
    inv
}
