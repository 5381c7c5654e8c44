//! Named graphs and seeded random bounded-degree instances.

use crate::graph::{Graph, VertexId};

/// splitmix64 generator.
///
/// Uniform draws below a bound take the top `k` bits of each output, where `k`
/// is the bit length of `bound - 1`, and reject values `>= bound`. A bound of 1
/// returns 0 without consuming output. Ports must follow the same rule to
/// reproduce instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prng {
    pub state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`. Panics when `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        if bound == 1 {
            return 0;
        }
        let bits = 64 - (bound - 1).leading_zeros();
        loop {
            let x = self.next_u64() >> (64 - bits);
            if x < bound {
                return x;
            }
        }
    }

    pub fn below_usize(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }
}

/// One step of the generator in value-passing form.
pub fn prng_next(mut p: Prng) -> (u64, Prng) {
    let v = p.next_u64();
    (v, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphConfig {
    pub n: usize,
    pub extra_edge_attempts: usize,
    pub seed: u64,
}

impl RandomGraphConfig {
    /// The fuzzing default of `2n` extra edge attempts.
    pub fn with_default_attempts(n: usize, seed: u64) -> Self {
        RandomGraphConfig {
            n,
            extra_edge_attempts: 2 * n,
            seed,
        }
    }
}

fn build(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
    Graph::new(n, edges).expect("generator emits a simple graph")
}

/// The 5-cycle with every vertex doubled: `a_i = i`, `b_i = i + 5`.
pub fn gen_c25() -> Graph {
    let mut edges = Vec::with_capacity(20);
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.extend([(i, j), (i, j + 5), (i + 5, j), (i + 5, j + 5)]);
    }
    build(10, &edges)
}

/// `K_{3,3}` on `{0,1,2} x {3,4,5}` with edge 0-3 subdivided by vertex 6.
pub fn gen_k33plus() -> Graph {
    let mut edges: Vec<_> = (0..3)
        .flat_map(|a| (3..6).map(move |b| (a, b)))
        .filter(|&e| e != (0, 3))
        .collect();
    edges.extend([(0, 6), (6, 3)]);
    build(7, &edges)
}

/// The doubled 5-cycle minus vertex 9: nine vertices with strong matching
/// number one.
pub fn gen_tight9() -> Graph {
    let edges: Vec<_> = gen_c25()
        .edges()
        .filter(|&(u, v)| u != 9 && v != 9)
        .collect();
    build(9, &edges)
}

pub fn gen_path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

/// Connected random graph with maximum degree at most 4.
pub fn gen_random_maxdeg4(cfg: &RandomGraphConfig) -> Graph {
    gen_random_bounded(cfg, 4)
}

/// Random spanning tree (each new vertex attached to a uniformly drawn earlier
/// unsaturated vertex, redrawing saturated picks) followed by
/// `extra_edge_attempts` uniformly drawn vertex pairs, each added when it is a
/// new non-loop edge between unsaturated endpoints.
pub fn gen_random_bounded(cfg: &RandomGraphConfig, max_degree: usize) -> Graph {
    assert!(cfg.n >= 1, "random graphs need at least one vertex");
    assert!(
        max_degree >= 2 || cfg.n <= 2,
        "max degree too small for a spanning tree"
    );
    let n = cfg.n;
    let mut rng = Prng::new(cfg.seed);
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = loop {
            let p = rng.below_usize(k);
            if adj[p].len() < max_degree {
                break p;
            }
        };
        adj[parent].push(k);
        adj[k].push(parent);
        edges.push((parent, k));
    }
    for _ in 0..cfg.extra_edge_attempts {
        let u = rng.below_usize(n);
        let v = rng.below_usize(n);
        if u != v && adj[u].len() < max_degree && adj[v].len() < max_degree && !adj[u].contains(&v)
        {
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
        }
    }
    build(n, &edges)
}
