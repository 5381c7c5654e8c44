//! Exact maximum induced matching.
//!
//! Induced matchings of `G` are exactly the independent sets of the conflict
//! graph whose nodes are the edges of `G`, two edges conflicting when they
//! share an endpoint or are joined by an edge. The search branches on the
//! candidate node of largest conflict degree (include, then exclude) and prunes
//! with a greedy clique partition of the remaining candidates.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{Graph, Matching, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

/// Upper limit on branch-and-bound nodes; `0` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget { max_nodes: 0 };

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }
}

#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub nodes: Vec<(VertexId, VertexId)>,
    pub conflicts: Vec<FixedBitSet>,
}

impl ConflictGraph {
    pub fn conflict(&self, i: usize, j: usize) -> bool {
        self.conflicts[i].contains(j)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn build_conflict_graph(g: &Graph) -> ConflictGraph {
    let nodes: Vec<_> = g.edges().collect();
    let k = nodes.len();
    let mut conflicts = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        let (a, b) = nodes[i];
        for j in i + 1..k {
            let (c, d) = nodes[j];
            let touching = a == c
                || a == d
                || b == c
                || b == d
                || g.has_edge(a, c)
                || g.has_edge(a, d)
                || g.has_edge(b, c)
                || g.has_edge(b, d);
            if touching {
                conflicts[i].insert(j);
                conflicts[j].insert(i);
            }
        }
    }
    ConflictGraph { nodes, conflicts }
}

struct Search<'a> {
    cg: &'a ConflictGraph,
    budget: u64,
    visited: u64,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, cand: FixedBitSet) -> Result<(), ExactError> {
        self.visited += 1;
        if self.budget > 0 && self.visited > self.budget {
            return Err(ExactError::BudgetExceeded(self.budget));
        }
        if cand.count_ones(..) == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + self.clique_cover_bound(&cand) <= self.best.len() {
            return Ok(());
        }
        let mut pick = usize::MAX;
        let mut pick_deg = 0;
        for v in cand.ones() {
            let deg = self.cg.conflicts[v].intersection(&cand).count();
            if pick == usize::MAX || deg > pick_deg {
                pick = v;
                pick_deg = deg;
            }
        }
        if pick_deg == 0 {
            // Remaining candidates are pairwise compatible.
            let before = self.current.len();
            self.current.extend(cand.ones());
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.current.truncate(before);
            return Ok(());
        }
        let mut with = cand.clone();
        with.difference_with(&self.cg.conflicts[pick]);
        with.set(pick, false);
        self.current.push(pick);
        self.run(with)?;
        self.current.pop();

        let mut without = cand;
        without.set(pick, false);
        self.run(without)
    }

    /// Number of cliques in a greedy clique partition of `cand`; bounds the
    /// size of any independent subset.
    fn clique_cover_bound(&self, cand: &FixedBitSet) -> usize {
        let mut cliques: Vec<FixedBitSet> = Vec::new();
        for v in cand.ones() {
            let row = &self.cg.conflicts[v];
            match cliques.iter_mut().find(|c| c.is_subset(row)) {
                Some(c) => c.insert(v),
                None => {
                    let mut c = FixedBitSet::with_capacity(cand.len());
                    c.insert(v);
                    cliques.push(c);
                }
            }
        }
        cliques.len()
    }
}

/// Greedy independent set: repeatedly take the candidate with fewest
/// remaining conflicts.
fn greedy(cg: &ConflictGraph) -> Vec<usize> {
    let mut cand = FixedBitSet::with_capacity(cg.len());
    cand.insert_range(..);
    let mut chosen = Vec::new();
    while let Some(v) = cand
        .ones()
        .min_by_key(|&v| (cg.conflicts[v].intersection(&cand).count(), v))
    {
        chosen.push(v);
        cand.difference_with(&cg.conflicts[v]);
        cand.set(v, false);
    }
    chosen
}

/// A maximum induced matching of `g`.
pub fn max_induced_matching(g: &Graph, budget: SearchBudget) -> Result<Matching, ExactError> {
    let cg = build_conflict_graph(g);
    let mut search = Search {
        cg: &cg,
        budget: budget.max_nodes,
        visited: 0,
        best: greedy(&cg),
        current: Vec::new(),
    };
    let mut all = FixedBitSet::with_capacity(cg.len());
    all.insert_range(..);
    search.run(all)?;
    Ok(Matching::new(search.best.iter().map(|&i| cg.nodes[i])))
}

/// ν_s(g) with an unlimited budget.
pub fn strong_matching_number(g: &Graph) -> usize {
    max_induced_matching(g, SearchBudget::UNLIMITED)
        .expect("unlimited budget")
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;

    #[test]
    fn conflict_structure() {
        let cg = build_conflict_graph(&gen_path(3));
        assert_eq!(cg.len(), 2);
        assert!(cg.conflict(0, 1));

        let cg = build_conflict_graph(&gen_path(4));
        assert_eq!(cg.nodes, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(cg.conflict(0, 2));

        let g = Graph::new(6, &[(0, 1), (4, 5)]).unwrap();
        let cg = build_conflict_graph(&g);
        assert!(!cg.conflict(0, 1));
    }

    #[test]
    fn named_values() {
        assert_eq!(strong_matching_number(&gen_c25()), 1);
        assert_eq!(strong_matching_number(&gen_k33plus()), 1);
        assert_eq!(strong_matching_number(&Graph::new(4, &[]).unwrap()), 0);
        assert_eq!(strong_matching_number(&Graph::empty()), 0);
    }

    #[test]
    fn result_is_induced() {
        let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(16, 7));
        let m = max_induced_matching(&g, SearchBudget::UNLIMITED).unwrap();
        assert!(g.is_induced_matching(&m).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(40, 1));
        assert_eq!(
            max_induced_matching(&g, SearchBudget::nodes(3)),
            Err(ExactError::BudgetExceeded(3))
        );
    }
}
