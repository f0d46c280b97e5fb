#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unires::metrics::{betweenness, closeness, fit_exponential};
use unires::{
    centrality_suite, degree_fit, metrics_report, top_k, CentralityMetric, CentralityOptions, Graph,
    GraphBuilder,
};
use unires_bench::generate::{exponential_degree_graph, exponential_degrees, graph_from_arcs};
use unires_bench::oracle::{brute_betweenness, mean_clustering, path_summary};

fn arcs_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = proptest::collection::btree_set((0..n, 0..n), 1..=n * (n - 1));
        pairs.prop_map(move |set| {
            let arcs: Vec<_> = set.into_iter().filter(|(u, v)| u != v).collect();
            (n, arcs)
        })
    })
    .prop_filter("needs an edge", |(_, arcs)| !arcs.is_empty())
}

fn to_graph(n: usize, arcs: &[(usize, usize)]) -> Graph {
    let weighted: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    graph_from_arcs(n, &weighted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn small_digraphs_match_floyd_warshall((n, arcs) in arcs_strategy(6)) {
        check_against_oracles(n, &arcs)?;
    }

    #[test]
    fn larger_digraphs_match_floyd_warshall((n, arcs) in arcs_strategy(12)) {
        check_against_oracles(n, &arcs)?;
    }

    #[test]
    fn betweenness_matches_path_enumeration((n, arcs) in arcs_strategy(10)) {
        let got = betweenness(&to_graph(n, &arcs));
        let want = brute_betweenness(n, &arcs);
        for (a, b) in got.iter().zip(&want) {
            prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn spectral_centralities_converge((n, arcs) in arcs_strategy(12)) {
        let t = centrality_suite(&to_graph(n, &arcs), &CentralityOptions::default()).unwrap();
        let pr: f64 = t.scores(CentralityMetric::PageRank).iter().sum();
        prop_assert!((pr - 1.0).abs() <= 1e-10);
        for m in [CentralityMetric::Hubs, CentralityMetric::Authorities] {
            let norm: f64 = t.scores(m).iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-10);
        }
        prop_assert!(t.hits_iterations() < 10_000);
        prop_assert!(t.pagerank_iterations() < 10_000);
        prop_assert!(t.scores(CentralityMetric::Betweenness).iter().all(|&b| b >= 0.0));
    }

    #[test]
    fn pagerank_ignores_uniform_rescaling((n, arcs) in arcs_strategy(10), scale in 0.01f64..100.0) {
        let g = to_graph(n, &arcs);
        let weighted: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, scale)).collect();
        let scaled = graph_from_arcs(n, &weighted);
        let opts = CentralityOptions::default();
        let a = centrality_suite(&g, &opts).unwrap();
        let b = centrality_suite(&scaled, &opts).unwrap();
        for (x, y) in a.scores(CentralityMetric::PageRank).iter().zip(b.scores(CentralityMetric::PageRank)) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
        let top_a = &top_k(&a, 1).unwrap()[7].entries[0].name;
        let top_b = &top_k(&b, 1).unwrap()[7].entries[0].name;
        prop_assert_eq!(top_a, top_b);
    }

    #[test]
    fn relabelling_permutes_centralities((n, arcs) in arcs_strategy(10), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let g = to_graph(n, &arcs);
        let mut moved: Vec<_> = arcs.iter().map(|&(u, v)| (perm[u], perm[v], 1.0)).collect();
        moved.shuffle(&mut rng);
        let h = graph_from_arcs(n, &moved);
        let opts = CentralityOptions::default();
        let a = centrality_suite(&g, &opts).unwrap();
        let b = centrality_suite(&h, &opts).unwrap();
        for m in CentralityMetric::ALL {
            for v in 0..n {
                let x = a.scores(m)[v];
                let y = b.scores(m)[perm[v]];
                prop_assert!((x - y).abs() <= 1e-9, "{m} at {v}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn adding_reverse_edges_makes_everything_reciprocal((n, arcs) in arcs_strategy(12)) {
        let mut both: BTreeSet<(usize, usize)> = arcs.iter().copied().collect();
        both.extend(arcs.iter().map(|&(u, v)| (v, u)));
        let arcs: Vec<_> = both.into_iter().collect();
        let r = metrics_report(&to_graph(n, &arcs)).unwrap();
        prop_assert_eq!(r.reciprocity, 1.0);
    }
}

fn check_against_oracles(n: usize, arcs: &[(usize, usize)]) -> Result<(), TestCaseError> {
    let g = to_graph(n, arcs);
    let r = metrics_report(&g).unwrap();
    let o = path_summary(n, arcs);
    prop_assert_eq!(r.density, o.density);
    prop_assert_eq!(r.reciprocity, o.reciprocity);
    prop_assert_eq!(r.diameter as u64, o.diameter);
    prop_assert_eq!(r.characteristic_path_length, o.characteristic_path_length);
    prop_assert!(r.diameter as f64 >= r.characteristic_path_length.ceil());
    let (inward, outward) = closeness(&g);
    prop_assert_eq!(inward, o.in_closeness);
    prop_assert_eq!(outward, o.out_closeness);
    prop_assert!((r.mean_clustering_directed - mean_clustering(n, arcs)).abs() < 1e-12);
    prop_assert!((0.0..=1.0).contains(&r.mean_clustering_directed));
    Ok(())
}

#[test]
fn recovers_rate_from_exponential_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fit = fit_exponential(exponential_degrees(&mut rng, 10_000, 0.5)).unwrap();
    assert!((fit.lambda - 0.5).abs() / 0.5 < 0.05, "lambda {}", fit.lambda);
}

#[test]
fn degree_fit_on_synthetic_graphs() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = rng.gen_range(0.2..0.8);
        let g = exponential_degree_graph(&mut rng, 10_000, lambda);
        let fit = degree_fit(&g).unwrap();
        assert!((fit.lambda - lambda).abs() / lambda < 0.05, "seed {seed}: {} vs {lambda}", fit.lambda);
        assert_eq!(fit.ccdf_points[0].fitted, 1.0);
        for w in fit.ccdf_points.windows(2) {
            assert!(w[1].empirical <= w[0].empirical);
            assert!(w[1].fitted <= w[0].fitted);
        }
    }
}

#[test]
fn path_of_three() {
    let mut b = GraphBuilder::new();
    b.add_edge("a", "b", 1.0).unwrap();
    b.add_edge("b", "c", 1.0).unwrap();
    let r = metrics_report(&b.build()).unwrap();
    assert_relative_eq!(r.characteristic_path_length, 4.0 / 3.0);
    assert_eq!(r.diameter, 2);
}
