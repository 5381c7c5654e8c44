use crate::graph::{Adjacency, Graph, VertexId, VertexSet};

/// Mutable adjacency over the input's identifier space. Deleted vertices keep
/// their slot with an empty neighbor list.
#[derive(Debug, Clone)]
pub(crate) struct WorkGraph {
    adj: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
}

impl WorkGraph {
    pub(crate) fn from_graph(g: &Graph) -> Self {
        let bound = g.id_bound();
        let mut adj = vec![Vec::new(); bound];
        let mut alive = vec![false; bound];
        for &v in g.vertices() {
            alive[v] = true;
            adj[v] = g.neighbors_of(v).to_vec();
        }
        WorkGraph { adj, alive }
    }

    pub(crate) fn id_bound(&self) -> usize {
        self.alive.len()
    }

    pub(crate) fn is_alive(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub(crate) fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub(crate) fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Deletes `x` and returns the surviving vertices that lost a neighbor,
    /// sorted.
    pub(crate) fn remove(&mut self, x: &VertexSet) -> Vec<VertexId> {
        let mut boundary = Vec::new();
        for &v in x {
            if !self.alive[v] {
                continue;
            }
            for w in std::mem::take(&mut self.adj[v]) {
                let list = &mut self.adj[w];
                if let Ok(pos) = list.binary_search(&v) {
                    list.remove(pos);
                }
                if !x.contains(&w) {
                    boundary.push(w);
                }
            }
            self.alive[v] = false;
        }
        boundary.sort_unstable();
        boundary.dedup();
        boundary
    }

    /// Marks a degree-0 vertex as gone.
    pub(crate) fn drop_isolated(&mut self, v: VertexId) {
        debug_assert!(self.adj[v].is_empty());
        self.alive[v] = false;
    }

    /// Union of open neighborhoods.
    pub(crate) fn open_union(&self, vs: &[VertexId]) -> VertexSet {
        vs.iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .collect()
    }

    /// Union of closed neighborhoods.
    pub(crate) fn closed_union(&self, vs: &[VertexId]) -> VertexSet {
        let mut out = self.open_union(vs);
        out.extend(vs.iter().copied());
        out
    }

    /// Vertices outside `x` that have neighbors, all of them inside `x`.
    pub(crate) fn isolated_after(&self, x: &VertexSet) -> VertexSet {
        x.iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|w| !x.contains(w) && self.adj[*w].iter().all(|y| x.contains(y)))
            .collect()
    }

    pub(crate) fn d_out(&self, x: &VertexSet) -> usize {
        x.iter()
            .map(|&v| self.adj[v].iter().filter(|w| !x.contains(w)).count())
            .sum()
    }

    /// Common neighbors of `a` and `b`, ascending.
    pub(crate) fn common(&self, a: VertexId, b: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let nb = &self.adj[b];
        self.adj[a]
            .iter()
            .copied()
            .filter(move |w| nb.binary_search(w).is_ok())
    }

    /// The subgraph induced on `vs`, with original identifiers.
    pub(crate) fn subgraph(&self, vs: &VertexSet) -> Graph {
        let ids: Vec<VertexId> = vs.iter().copied().collect();
        let adjacency = ids
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .copied()
                    .filter(|w| vs.contains(w))
                    .collect()
            })
            .collect();
        Graph::from_sorted_parts(ids, adjacency)
    }
}

impl Adjacency for WorkGraph {
    fn neighbors_of(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(v).map_or(&[], Vec::as_slice)
    }
}
