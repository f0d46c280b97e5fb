use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unires::spectral::{effective_resistance, grounded_solve, kron_reduce, laplacian, LaplacianView};
use unires::{load_graph, UndirectedGraph, VertexId};
use unires_bench::generate::{graph_from_arcs, random_connected_weighted};
use unires_bench::oracle::pinv_resistances;

fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn retained_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    while keep.len() < 2 {
        let v = rng.gen_range(0..n);
        if !keep.contains(&v) {
            keep.push(v);
        }
    }
    keep.sort_unstable();
    keep
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_preserves_resistance(seed in any::<u64>(), n in 2usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_connected_weighted(&mut rng, n);
        let g = UndirectedGraph::symmetrize(&graph_from_arcs(n, &edges));
        let keep = retained_subset(&mut rng, n);
        let ids: Vec<VertexId> = keep.iter().map(|&i| VertexId(i as u32)).collect();
        let reduced = kron_reduce(&g, &ids).unwrap();

        let full = pinv_resistances(n, &edges);
        let local = |v: VertexId| keep.iter().position(|&k| k == v.index()).unwrap();
        let reduced_edges: Vec<_> = reduced.edges().map(|(u, v, w)| (local(u), local(v), w)).collect();
        let small = pinv_resistances(keep.len(), &reduced_edges);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                prop_assert!(relative_error(full[(i, j)], small[(a, b)]) < 1e-8,
                    "R({i},{j}) {} vs {}", full[(i, j)], small[(a, b)]);
            }
        }
    }

    #[test]
    fn resistance_matches_pseudoinverse(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_connected_weighted(&mut rng, n);
        let g = UndirectedGraph::symmetrize(&graph_from_arcs(n, &edges));
        let pairs: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (VertexId(i as u32), VertexId(j as u32)))).collect();
        let got = effective_resistance(&g, &pairs).unwrap();
        let oracle = pinv_resistances(n, &edges);
        for (&(u, v), r) in pairs.iter().zip(got) {
            if u == v {
                prop_assert_eq!(r, 0.0);
            } else {
                prop_assert!(relative_error(r, oracle[(u.index(), v.index())]) < 1e-8);
            }
        }
    }

    #[test]
    fn laplacian_is_valid(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_connected_weighted(&mut rng, n);
        let lap = laplacian(&graph_from_arcs(n, &edges));
        let m = lap.matrix();
        prop_assert_eq!(m.clone(), m.transpose());
        for i in 0..n {
            prop_assert!(m.row(i).sum().abs() < 1e-9);
            for j in 0..n {
                if i != j {
                    prop_assert!(m[(i, j)] <= 0.0);
                }
            }
        }
        let min_eigen = m.clone().symmetric_eigenvalues().min();
        prop_assert!(min_eigen > -1e-9);
    }

    #[test]
    fn raising_a_weight_never_raises_resistance(seed in any::<u64>(), n in 3usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = random_connected_weighted(&mut rng, n);
        let before = pinv_from_lib(n, &edges);
        let k = rng.gen_range(0..edges.len());
        edges[k].2 *= rng.gen_range(1.0..5.0);
        let after = pinv_from_lib(n, &edges);
        for (a, b) in before.iter().zip(&after) {
            prop_assert!(*b <= *a * (1.0 + 1e-10));
        }
    }

    #[test]
    fn grounded_residual_is_small(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_connected_weighted(&mut rng, n);
        let g = UndirectedGraph::symmetrize(&graph_from_arcs(n, &edges));
        let lap = LaplacianView::of(&g);
        // A shuffled component order must be honoured in the solution.
        let mut component: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
        component.reverse();
        let mut rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = rhs.iter().sum::<f64>() / n as f64;
        rhs.iter_mut().for_each(|x| *x -= mean);
        let x = grounded_solve(&lap, &component, &rhs).unwrap();
        let m = lap.matrix();
        for (a, &u) in component.iter().enumerate() {
            let pu = lap.position(u).unwrap();
            let lx: f64 = component.iter().zip(&x).map(|(&v, xv)| m[(pu, lap.position(v).unwrap())] * xv).sum();
            prop_assert!((lx - rhs[a]).abs() < 1e-8);
        }
        let ground = component.iter().position(|&v| v == VertexId(0)).unwrap();
        prop_assert_eq!(x[ground], 0.0);
    }
}

fn pinv_from_lib(n: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
    let g = UndirectedGraph::symmetrize(&graph_from_arcs(n, edges));
    let pairs: Vec<_> = (0..n as u32)
        .flat_map(|i| (0..n as u32).map(move |j| (VertexId(i), VertexId(j))))
        .collect();
    effective_resistance(&g, &pairs).unwrap()
}

fn resistance(text: &str, a: &str, b: &str) -> f64 {
    let g = load_graph(text).unwrap();
    let pair = (g.vertices().lookup(a).unwrap(), g.vertices().lookup(b).unwrap());
    effective_resistance(&UndirectedGraph::symmetrize(&g), &[pair]).unwrap()[0]
}

#[test]
fn series_and_parallel_fixtures() {
    assert_relative_eq!(resistance("a\tb\nb\tc\n", "a", "c"), 2.0, max_relative = 1e-12);
    assert_relative_eq!(resistance("a\tb\nb\tc\nc\ta\n", "a", "b"), 2.0 / 3.0, max_relative = 1e-12);
    // Two parallel unit resistors stored as opposite directed edges.
    assert_relative_eq!(resistance("a\tb\nb\ta\n", "a", "b"), 0.5, max_relative = 1e-12);
}

#[test]
fn star_elimination_gives_third_weights() {
    let g = load_graph("c\tx\nc\ty\nc\tz\n").unwrap();
    let ids: Vec<VertexId> = ["x", "y", "z"].iter().map(|n| g.vertices().lookup(n).unwrap()).collect();
    let reduced = kron_reduce(&UndirectedGraph::symmetrize(&g), &ids).unwrap();
    assert_eq!(reduced.edge_count(), 3);
    for (_, _, w) in reduced.edges() {
        assert_relative_eq!(w, 1.0 / 3.0, max_relative = 1e-12);
    }
}

#[test]
fn disconnected_pairs_are_infinite() {
    assert_eq!(resistance("a\tb\nc\td\n", "a", "d"), f64::INFINITY);
}
