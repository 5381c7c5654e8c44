//! Immutable undirected simple graphs with stable vertex identifiers.
//!
//! Vertex identifiers survive [`Graph::remove_vertices`], so every subgraph
//! produced during a reduction still speaks in terms of the input graph's ids.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type VertexId = usize;

/// A set of vertices of some graph.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    IdOutOfRange { id: VertexId, n: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// Read-only adjacency access shared by [`Graph`] and the engine's mutable
/// working graph.
pub trait Adjacency {
    /// Sorted neighbors of `v`; empty when `v` is not present.
    fn neighbors_of(&self, v: VertexId) -> &[VertexId];

    fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors_of(u).binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    /// Sorted vertex identifiers.
    ids: Vec<VertexId>,
    /// Sorted neighbor lists, parallel to `ids`.
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on vertices `0..n` with the given undirected edges.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::IdOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Graph {
            ids: (0..n).collect(),
            adjacency,
            edge_count: edges.len(),
        })
    }

    pub fn empty() -> Self {
        Graph {
            ids: Vec::new(),
            adjacency: Vec::new(),
            edge_count: 0,
        }
    }

    /// Assembles a graph from sorted ids and sorted, symmetric neighbor lists.
    pub(crate) fn from_sorted_parts(ids: Vec<VertexId>, adjacency: Vec<Vec<VertexId>>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            ids,
            adjacency,
            edge_count,
        }
    }

    fn index_of(&self, v: VertexId) -> Option<usize> {
        if self.ids.get(v) == Some(&v) {
            return Some(v);
        }
        self.ids.binary_search(&v).ok()
    }

    fn require(&self, v: VertexId) -> Result<usize, GraphError> {
        self.index_of(v).ok_or(GraphError::UnknownVertex(v))
    }

    fn require_all<'a>(&self, x: impl IntoIterator<Item = &'a VertexId>) -> Result<(), GraphError> {
        x.into_iter().try_for_each(|&v| self.require(v).map(|_| ()))
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// Largest identifier plus one; zero for the empty graph.
    pub fn id_bound(&self) -> usize {
        self.ids.last().map_or(0, |&v| v + 1)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.adjacency[self.require(v)?].len())
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId], GraphError> {
        Ok(&self.adjacency[self.require(v)?])
    }

    /// Zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacent(u, v)
    }

    /// All edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.ids
            .iter()
            .zip(&self.adjacency)
            .flat_map(|(&u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced on the vertices not in `x`; identifiers are kept.
    pub fn remove_vertices(&self, x: &VertexSet) -> Result<Graph, GraphError> {
        self.require_all(x)?;
        let keep = self.ids.iter().copied().filter(|v| !x.contains(v));
        Ok(self.induced_on(keep))
    }

    /// The subgraph induced on `keep`; identifiers are kept.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        self.require_all(keep)?;
        Ok(self.induced_on(keep.iter().copied()))
    }

    fn induced_on(&self, keep: impl Iterator<Item = VertexId>) -> Graph {
        let ids: Vec<VertexId> = keep.collect();
        let mut edge_twice = 0;
        let adjacency: Vec<Vec<VertexId>> = ids
            .iter()
            .map(|&v| {
                let list: Vec<VertexId> = self.adjacency[self.index_of(v).expect("kept vertex")]
                    .iter()
                    .copied()
                    .filter(|w| ids.binary_search(w).is_ok())
                    .collect();
                edge_twice += list.len();
                list
            })
            .collect();
        Graph {
            ids,
            adjacency,
            edge_count: edge_twice / 2,
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.ids.len()];
        let mut out = Vec::new();
        for start in 0..self.ids.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                comp.insert(self.ids[i]);
                for &w in &self.adjacency[i] {
                    let j = self.index_of(w).expect("neighbor present");
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Number of edges with exactly one endpoint in `x`.
    pub fn d_out(&self, x: &VertexSet) -> Result<usize, GraphError> {
        self.require_all(x)?;
        Ok(x.iter()
            .map(|&v| {
                self.neighbors_of(v)
                    .iter()
                    .filter(|w| !x.contains(w))
                    .count()
            })
            .sum())
    }

    /// The isolated vertices of `self - x`, bucketed by their degree here.
    pub fn isolated_profile(&self, x: &VertexSet) -> Result<IsolatedProfile, GraphError> {
        self.require_all(x)?;
        let mut profile = IsolatedProfile::default();
        for (&v, list) in self.ids.iter().zip(&self.adjacency) {
            if !x.contains(&v) && list.iter().all(|w| x.contains(w)) {
                profile.insert(v, list.len());
            }
        }
        Ok(profile)
    }

    /// Smallest triangle if any, else smallest 4-cycle, else none.
    pub fn short_cycle(&self) -> ShortCycleReport {
        for (&a, na) in self.ids.iter().zip(&self.adjacency) {
            for &b in na.iter().filter(|&&b| b > a) {
                if let Some(&c) = self
                    .neighbors_of(b)
                    .iter()
                    .find(|&&c| c > b && self.adjacent(a, c))
                {
                    return ShortCycleReport::Triangle([a, b, c]);
                }
            }
        }
        for (&a, na) in self.ids.iter().zip(&self.adjacency) {
            for &b in na.iter().filter(|&&b| b > a) {
                for &c in self.neighbors_of(b).iter().filter(|&&c| c > a) {
                    if let Some(&d) = self
                        .neighbors_of(c)
                        .iter()
                        .find(|&&d| d > b && self.adjacent(a, d))
                    {
                        return ShortCycleReport::FourCycle([a, b, c, d]);
                    }
                }
            }
        }
        ShortCycleReport::None
    }

    /// Shortest-path length, `None` when unreachable.
    pub fn bfs_distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>, GraphError> {
        let start = self.require(u)?;
        let target = self.require(v)?;
        let mut dist = vec![usize::MAX; self.ids.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            if i == target {
                return Ok(Some(dist[i]));
            }
            for &w in &self.adjacency[i] {
                let j = self.index_of(w).expect("neighbor present");
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(None)
    }

    pub fn is_induced_matching(&self, m: &Matching) -> Result<bool, GraphError> {
        self.require_all(m.edges().iter().flat_map(|(u, v)| [u, v]))?;
        Ok(is_induced_in(self, m.edges()))
    }

    /// Whether this graph is isomorphic to the 4-regular graph obtained from
    /// the 5-cycle by doubling every vertex into two non-adjacent twins.
    pub fn is_isomorphic_c25(&self) -> bool {
        if self.vertex_count() != 10
            || self.edge_count != 20
            || self.adjacency.iter().any(|l| l.len() != 4)
        {
            return false;
        }
        let pattern = crate::instances::gen_c25();
        let target: Vec<Vec<bool>> = (0..10)
            .map(|i| {
                (0..10)
                    .map(|j| self.adjacent(self.ids[i], self.ids[j]))
                    .collect()
            })
            .collect();
        let mut map = [usize::MAX; 10];
        let mut used = [false; 10];
        extend_isomorphism(&pattern, &target, 0, &mut map, &mut used)
    }

    /// Re-labels the vertices `0..n` in sorted-id order; returns the graph and
    /// the original id of each new label.
    pub fn compact(&self) -> (Graph, Vec<VertexId>) {
        let adjacency = self
            .adjacency
            .iter()
            .map(|list| {
                list.iter()
                    .map(|w| self.index_of(*w).expect("present"))
                    .collect()
            })
            .collect();
        (
            Graph {
                ids: (0..self.ids.len()).collect(),
                adjacency,
                edge_count: self.edge_count,
            },
            self.ids.clone(),
        )
    }
}

fn extend_isomorphism(
    pattern: &Graph,
    target: &[Vec<bool>],
    depth: usize,
    map: &mut [usize; 10],
    used: &mut [bool; 10],
) -> bool {
    if depth == 10 {
        return true;
    }
    for cand in 0..10 {
        if used[cand] {
            continue;
        }
        let consistent = (0..depth).all(|k| pattern.adjacent(depth, k) == target[cand][map[k]]);
        if consistent {
            map[depth] = cand;
            used[cand] = true;
            if extend_isomorphism(pattern, target, depth + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

impl Adjacency for Graph {
    fn neighbors_of(&self, v: VertexId) -> &[VertexId] {
        self.index_of(v).map_or(&[], |i| &self.adjacency[i])
    }
}

/// Whether `edges` are edges of `g` forming an induced matching.
pub fn is_induced_in<G: Adjacency + ?Sized>(g: &G, edges: &[(VertexId, VertexId)]) -> bool {
    if edges.iter().any(|&(u, v)| u == v || !g.adjacent(u, v)) {
        return false;
    }
    let mut ends: Vec<VertexId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    edges.iter().enumerate().all(|(i, &(a, b))| {
        edges[i + 1..].iter().all(|&(c, d)| {
            !(g.adjacent(a, c) || g.adjacent(a, d) || g.adjacent(b, c) || g.adjacent(b, d))
        })
    })
}

/// Isolated vertices of `G - X` bucketed by their degree in `G`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsolatedProfile {
    pub members: VertexSet,
    /// `by_degree[j - 1]` counts members of degree `j`, for `j` in `1..=4`.
    pub by_degree: [usize; 4],
    /// Members of degree 0 or above 4; these only occur outside the
    /// bounded-degree setting.
    pub other: usize,
}

impl IsolatedProfile {
    fn insert(&mut self, v: VertexId, degree: usize) {
        self.members.insert(v);
        match degree {
            1..=4 => self.by_degree[degree - 1] += 1,
            _ => self.other += 1,
        }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// `i_1 + 2 i_2 + 3 i_3 + 4 i_4`.
    pub fn weighted(&self) -> usize {
        self.by_degree
            .iter()
            .enumerate()
            .map(|(j, c)| (j + 1) * c)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortCycleReport {
    Triangle([VertexId; 3]),
    /// Cyclic order, smallest vertex first, second smaller than fourth.
    FourCycle([VertexId; 4]),
    None,
}

impl ShortCycleReport {
    pub fn witness(&self) -> &[VertexId] {
        match self {
            ShortCycleReport::Triangle(w) => w,
            ShortCycleReport::FourCycle(w) => w,
            ShortCycleReport::None => &[],
        }
    }
}

/// Edges claimed to form an induced matching, normalized to `(min, max)` and
/// sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<(VertexId, VertexId)>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}
