mod common;

use common::*;
use induced_matching::exact::{
    build_conflict_graph, max_induced_matching, strong_matching_number, SearchBudget,
};
use induced_matching::graph::{Graph, ShortCycleReport, VertexSet};
use induced_matching::instances::*;
use proptest::prelude::*;

#[test]
fn named_values() {
    assert_eq!(strong_matching_number(&gen_c25()), 1);
    assert_eq!(strong_matching_number(&gen_k33plus()), 1);
    assert_eq!(strong_matching_number(&Graph::new(4, &[]).unwrap()), 0);
    for (g, want) in [(gen_cycle(5), 1), (gen_cycle(7), 2), (petersen(), 3)] {
        assert_eq!(naive_strong_matching_number(&g), want);
        assert_eq!(strong_matching_number(&g), want);
    }
}

#[test]
fn named_graph_structure() {
    let c = gen_c25();
    assert_eq!(
        (
            c.vertex_count(),
            c.edge_count(),
            c.min_degree(),
            c.max_degree()
        ),
        (10, 20, 4, 4)
    );
    assert_eq!(c.components().len(), 1);
    let k = gen_k33plus();
    assert_eq!(
        (k.vertex_count(), k.edge_count(), k.max_degree()),
        (7, 10, 3)
    );
    assert!(!k.is_isomorphic_c25());
    let t = gen_tight9();
    assert_eq!(
        (t.vertex_count(), t.max_degree(), t.components().len()),
        (9, 4, 1)
    );
}

#[test]
fn c25_recognition() {
    let km = k55_minus_perfect_matching();
    assert_eq!(
        (km.vertex_count(), km.min_degree(), km.max_degree()),
        (10, 4, 4)
    );
    assert!(is_bipartite(&km));
    assert!(!is_bipartite(&gen_c25()));
    assert!(!km.is_isomorphic_c25());
    let mut rng = Prng::new(3);
    for _ in 0..20 {
        let mut perm: Vec<usize> = (0..10).collect();
        for i in (1..10).rev() {
            perm.swap(i, rng.below_usize(i + 1));
        }
        assert!(relabel(&gen_c25(), &perm).is_isomorphic_c25());
    }
}

#[test]
fn girth_oracle_agrees_with_short_cycle() {
    assert_eq!(girth(&petersen()), Some(5));
    assert_eq!(petersen().short_cycle(), ShortCycleReport::None);
    for seed in 0..300 {
        let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(15, seed));
        let want = match girth(&g) {
            Some(3) => 3,
            Some(4) => 4,
            _ => 0,
        };
        let got = match g.short_cycle() {
            ShortCycleReport::Triangle(_) => 3,
            ShortCycleReport::FourCycle(_) => 4,
            ShortCycleReport::None => 0,
        };
        assert_eq!(got, want, "seed {seed}");
    }
}

#[test]
fn isolated_counting_identities() {
    // d_out(X ∪ I) = d_out(X) - (i_1 + 2 i_2 + 3 i_3 + 4 i_4), checked by
    // counting boundary edges directly.
    let direct = |g: &Graph, x: &VertexSet| {
        g.edges()
            .filter(|(u, v)| x.contains(u) != x.contains(v))
            .count()
    };
    let mut rng = Prng::new(17);
    for seed in 0..200 {
        let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(30, seed));
        let x: VertexSet = (0..30).filter(|_| rng.below(3) == 0).collect();
        let prof = g.isolated_profile(&x).unwrap();
        let grown: VertexSet = x.union(&prof.members).copied().collect();
        assert_eq!(g.d_out(&x).unwrap(), direct(&g, &x));
        assert_eq!(direct(&g, &grown), direct(&g, &x) - prof.weighted());
        assert_eq!(prof.count(), prof.by_degree.iter().sum::<usize>());
    }
}

#[test]
fn conflict_graph_examples() {
    let cg = build_conflict_graph(&gen_path(4));
    assert_eq!(cg.len(), 3);
    assert!(cg.conflict(0, 2) && cg.conflict(0, 1) && cg.conflict(1, 2));
    let far = Graph::new(6, &[(0, 1), (4, 5)]).unwrap();
    let cg = build_conflict_graph(&far);
    assert!(!cg.conflict(0, 1));
}

#[test]
fn branch_and_bound_equals_enumeration() {
    let mut checked = 0;
    for seed in 0..600u64 {
        let mut rng = Prng::new(seed);
        let n = 2 + rng.below_usize(14);
        let mut cfg = RandomGraphConfig::with_default_attempts(n, seed);
        cfg.extra_edge_attempts = rng.below_usize(n + 1);
        let g = gen_random_maxdeg4(&cfg);
        if g.edge_count() > 16 {
            continue;
        }
        let m = max_induced_matching(&g, SearchBudget::UNLIMITED).unwrap();
        assert!(g.is_induced_matching(&m).unwrap());
        assert_eq!(m.len(), naive_strong_matching_number(&g), "seed {seed}");
        checked += 1;
    }
    assert!(checked > 300);
}

proptest! {
    #[test]
    fn generator_invariants(n in 1usize..120, seed: u64) {
        let cfg = RandomGraphConfig::with_default_attempts(n, seed);
        let g = gen_random_maxdeg4(&cfg);
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert!(g.max_degree() <= 4);
        prop_assert_eq!(g.components().len(), 1);
        prop_assert_eq!(gen_random_maxdeg4(&cfg), g);
    }
}

#[test]
fn enumerator_counts_connected_graphs() {
    let counts: Vec<usize> = connected_graphs(7, 6).iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    // With maximum degree 2 only paths and cycles remain.
    let counts: Vec<usize> = connected_graphs(7, 2).iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 2, 2, 2, 2]);
}
