//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use induced_matching::cli::run_with;
use induced_matching::engine::{solve, SolveError};
use induced_matching::exact::{max_induced_matching, strong_matching_number, SearchBudget};
use induced_matching::graph::Graph;
use induced_matching::harness::{
    fuzz, trial_config, verify_certificate, verify_solution, FuzzConfig,
};
use induced_matching::instances::*;

const NAMED_LIMIT: Duration = Duration::from_secs(1);
const SUITE_LIMIT: Duration = Duration::from_secs(120);
const LARGE_LIMIT: Duration = Duration::from_secs(5);
const MASTER_SEED: u64 = 42;
const LARGE_N: usize = 50_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let v = f();
    (v, t0.elapsed())
}

fn named_values() -> Outcome {
    let (c25, t1) = timed(|| strong_matching_number(&gen_c25()));
    let (k33p, t2) = timed(|| strong_matching_number(&gen_k33plus()));
    outcome(
        c25 == 1 && k33p == 1 && t1 < NAMED_LIMIT && t2 < NAMED_LIMIT,
        format!("nu_s(C25) = {c25} in {t1:?}, nu_s(K33+) = {k33p} in {t2:?}"),
    )
}

fn tightness() -> Outcome {
    let g = gen_tight9();
    let ((solved, exact), t) = timed(|| {
        (
            solve(&g).map(|r| r.matching.len()),
            strong_matching_number(&g),
        )
    });
    outcome(
        solved == Ok(1) && exact == 1 && g.vertex_count() == 9 && t < NAMED_LIMIT,
        format!(
            "n = {}, solve -> {solved:?}, exact = {exact}, {t:?}",
            g.vertex_count()
        ),
    )
}

fn exclusion() -> Outcome {
    let lib = matches!(solve(&gen_c25()), Err(SolveError::IsC25Component(_)));
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("c25.txt");
    let path = path.to_str().expect("utf-8 path");
    let cli = |args: &[&str]| {
        let argv = std::iter::once("induced-matching").chain(args.iter().copied());
        run_with(argv, &mut Vec::new(), &mut Vec::new())
    };
    let gen = cli(&["gen", "--family", "c25", "--out", path]);
    let code = cli(&["solve", path]);
    outcome(
        lib && gen == 0 && code == 3,
        format!("library rejects: {lib}, CLI exit code {code}"),
    )
}

fn small_graphs() -> Outcome {
    let t0 = Instant::now();
    let mut violations = 0;
    let levels = connected_graphs(8, 4);
    let mut enumerated = 0;
    for g in levels.iter().flatten() {
        enumerated += 1;
        let n = g.vertex_count();
        // The single vertex is isolated, so its bound is ceil((n - i)/9) = 0.
        let required = if n == 1 { 0 } else { n.div_ceil(9) };
        if strong_matching_number(g) < required {
            eprintln!("violation on {:?}", g.edges().collect::<Vec<_>>());
            violations += 1;
        }
        if n >= 2 {
            match solve(g) {
                Ok(r) if verify_certificate(g, &r).is_ok_and(|v| v.ok()) => {}
                _ => violations += 1,
            }
        }
    }
    let mut sampled = 0;
    for i in 0..2000 {
        let mut cfg = RandomGraphConfig::with_default_attempts(9, trial_seed_for(i, 9));
        cfg.extra_edge_attempts = i % 19;
        let g = gen_random_maxdeg4(&cfg);
        sampled += 1;
        if strong_matching_number(&g) < 1 {
            violations += 1;
        }
    }
    let cfg = FuzzConfig::new(1000, 10, 20, MASTER_SEED);
    let mut fuzzed = 0;
    let mut c25 = 0;
    for i in 0..cfg.trials {
        let g = gen_random_maxdeg4(&trial_config(&cfg, i));
        if g.is_isomorphic_c25() {
            c25 += 1;
            continue;
        }
        fuzzed += 1;
        let n = g.vertex_count();
        match max_induced_matching(&g, SearchBudget::UNLIMITED) {
            Ok(m) if m.len() >= n.div_ceil(9) => {}
            _ => violations += 1,
        }
    }
    let t = t0.elapsed();
    let per_n: Vec<usize> = levels.iter().map(Vec::len).collect();
    outcome(
        violations == 0 && t < SUITE_LIMIT,
        format!(
            "{enumerated} classes for n <= 8 {per_n:?}, {sampled} samples at n = 9, \
             {fuzzed} fuzzed with 10 <= n <= 20 ({c25} C25 skipped), {violations} violations, {t:?}"
        ),
    )
}

fn trial_seed_for(i: usize, salt: u64) -> u64 {
    induced_matching::harness::trial_seed(MASTER_SEED ^ salt, i)
}

fn constructive() -> Outcome {
    let cfg = FuzzConfig::new(1000, 2, 300, MASTER_SEED);
    let (report, t) = timed(|| fuzz(&cfg));
    // Recheck the matchings here with the plain solution verifier as well.
    let mut plain_failures = 0;
    for i in 0..cfg.trials {
        let g = gen_random_maxdeg4(&trial_config(&cfg, i));
        if let Ok(r) = solve(&g) {
            if !verify_solution(&g, &r.matching).is_ok_and(|v| v.ok()) {
                plain_failures += 1;
            }
        }
    }
    outcome(
        report.failures.is_empty() && plain_failures == 0 && t < SUITE_LIMIT,
        format!(
            "{} trials, {} C25 rejected, {} failures, {plain_failures} plain failures, {t:?}",
            report.trials_run,
            report.rejected_c25,
            report.failures.len()
        ),
    )
}

/// A disjoint union of 1 to 4 random components of at most 18 vertices.
fn small_component_union(i: usize) -> Graph {
    let mut rng = Prng::new(trial_seed_for(i, 6));
    let parts = 1 + rng.below_usize(4);
    let mut edges = Vec::new();
    let mut offset = 0;
    for _ in 0..parts {
        let n = 1 + rng.below_usize(18);
        let mut cfg = RandomGraphConfig::with_default_attempts(n, rng.next_u64());
        cfg.extra_edge_attempts = rng.below_usize(2 * n + 1);
        let part = gen_random_maxdeg4(&cfg);
        edges.extend(part.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += n;
    }
    Graph::new(offset, &edges).expect("disjoint union")
}

fn oracle_agreement() -> Outcome {
    let mut mismatches = 0;
    let mut instances = 0;
    for i in 0..200 {
        let g = small_component_union(i);
        if g.components()
            .iter()
            .any(|c| g.induced_subgraph(c).is_ok_and(|h| h.is_isomorphic_c25()))
        {
            continue;
        }
        instances += 1;
        // Each component relabeled to 0..k before the exact search.
        let optimum: usize = g
            .components()
            .iter()
            .map(|c| strong_matching_number(&g.induced_subgraph(c).expect("component").compact().0))
            .sum();
        match solve(&g) {
            Ok(r)
                if r.matching.len() == optimum
                    && g.is_induced_matching(&r.matching) == Ok(true) => {}
            _ => mismatches += 1,
        }
    }
    outcome(
        mismatches == 0 && instances == 200,
        format!("{instances} instances, {mismatches} mismatches"),
    )
}

fn oracle_correctness() -> Outcome {
    let cfg = FuzzConfig::new(500, 2, 10, MASTER_SEED);
    let mut checked = 0;
    let mut mismatches = 0;
    for i in 0..cfg.trials {
        let g = gen_random_maxdeg4(&trial_config(&cfg, i));
        if g.edge_count() > 12 {
            continue;
        }
        checked += 1;
        if strong_matching_number(&g) != naive_strong_matching_number(&g) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0 && checked > 0,
        format!("{checked} graphs with m <= 12, {mismatches} mismatches"),
    )
}

fn subcubic() -> Outcome {
    let cfg = FuzzConfig::new(200, 2, 18, MASTER_SEED);
    let (k33, k33plus) = (complete_bipartite_33(), gen_k33plus());
    let mut violations = 0;
    let mut excluded = (0, 0);
    for i in 0..cfg.trials {
        let g = gen_random_bounded(&trial_config(&cfg, i), 3);
        if isomorphic(&g, &k33) {
            excluded.0 += 1;
            continue;
        }
        // K33 with a subdivided edge has nu_s = 1 with n = 7, below n/6.
        if isomorphic(&g, &k33plus) {
            excluded.1 += 1;
            continue;
        }
        if 6 * strong_matching_number(&g) < g.vertex_count() {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!(
            "200 graphs, {} K33 and {} K33+ excluded, {violations} violations",
            excluded.0, excluded.1
        ),
    )
}

fn complete_bipartite_33() -> Graph {
    let e: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    Graph::new(6, &e).expect("K33")
}

fn large_instance() -> Outcome {
    let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(
        LARGE_N,
        MASTER_SEED,
    ));
    let (r, ts) = timed(|| solve(&g));
    let Ok(r) = r else {
        return outcome(false, format!("solve failed after {ts:?}"));
    };
    let (report, tv) = timed(|| verify_certificate(&g, &r));
    let ok = report.as_ref().is_ok_and(|v| v.ok());
    outcome(
        ok && ts < LARGE_LIMIT && tv < LARGE_LIMIT,
        format!(
            "n = {}, m = {}, |M| = {}, solve {ts:?}, verify {tv:?}, certificate ok: {ok}",
            g.vertex_count(),
            g.edge_count(),
            r.matching.len()
        ),
    )
}

fn determinism() -> Outcome {
    let g = gen_random_maxdeg4(&RandomGraphConfig::with_default_attempts(3000, 7));
    let a = solve(&g).map(|r| r.certificate_text());
    let b = solve(&g).map(|r| r.certificate_text());
    let cfg = FuzzConfig::new(300, 2, 200, MASTER_SEED);
    let fa = fuzz(&cfg).summary();
    let fb = fuzz(&cfg).summary();
    let cli = || {
        let mut out = Vec::new();
        let args = [
            "induced-matching",
            "fuzz",
            "--trials",
            "100",
            "--nmax",
            "120",
            "--seed",
            "3",
        ];
        run_with(args, &mut out, &mut Vec::new());
        out
    };
    let same = a.is_ok() && a == b && fa == fb && cli() == cli();
    outcome(
        same,
        format!("solve, fuzz and CLI outputs identical across runs: {same}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("named-graph values", named_values),
        ("tightness", tightness),
        ("exclusion", exclusion),
        ("small graphs", small_graphs),
        ("constructive guarantee", constructive),
        ("oracle agreement", oracle_agreement),
        ("oracle correctness", oracle_correctness),
        ("subcubic sanity", subcubic),
        ("polynomial behavior", large_instance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} criterion {} ({name}): {}",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
