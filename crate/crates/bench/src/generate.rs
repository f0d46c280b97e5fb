use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Exp};
use unires::{load_dataset, Graph, GraphBuilder, Hierarchy, Result};

/// A random multi-resolution dataset in index form together with its text
/// serialisation.
#[derive(Debug, Clone)]
pub struct Instance {
    pub names: Vec<String>,
    /// Parent index per vertex; vertex 0 is the root.
    pub parents: Vec<Option<usize>>,
    pub edges: BTreeMap<(usize, usize), f64>,
    pub graph_text: String,
    pub hierarchy_text: String,
}

impl Instance {
    pub fn load(&self) -> Result<(Graph, Hierarchy)> {
        load_dataset(&self.graph_text, &self.hierarchy_text)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }
}

/// Random tree on `2..=max_vertices` vertices (each vertex attaches to an
/// earlier one) with up to `2n` edges anywhere in it, integer weights 1..=3.
/// Names are shuffled so that name order and index order disagree, and the
/// edge list is written in random order.
pub fn random_instance<R: Rng>(rng: &mut R, max_vertices: usize) -> Instance {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let names: Vec<String> = labels.iter().map(|l| format!("v{l}")).collect();
    let parents: Vec<Option<usize>> = (0..n)
        .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
        .collect();

    let m = rng.gen_range(1..=2 * n);
    let mut edges = BTreeMap::new();
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            *edges.entry((u, v)).or_insert(0.0) += rng.gen_range(1..=3) as f64;
        }
    }
    if edges.is_empty() {
        edges.insert((0, 1), 1.0);
    }

    let mut lines: Vec<String> = edges
        .iter()
        .map(|(&(u, v), w)| format!("{}\t{}\t{}\n", names[u], names[v], w))
        .collect();
    lines.shuffle(rng);
    let graph_text = lines.concat();

    let mut hierarchy_text = String::new();
    for (c, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            writeln!(hierarchy_text, "{}\t{}", names[*p], names[c]).unwrap();
        }
    }

    Instance {
        names,
        parents,
        edges,
        graph_text,
        hierarchy_text,
    }
}

/// Connected undirected graph on `n` vertices: a random spanning tree plus
/// extra edges, weights uniform in [0.1, 10). Each pair appears once with
/// `u < v`.
pub fn random_connected_weighted<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize, f64)> {
    let mut edges = BTreeMap::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v), rng.gen_range(0.1..10.0));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.insert((a.min(b), a.max(b)), rng.gen_range(0.1..10.0));
        }
    }
    edges.into_iter().map(|((u, v), w)| (u, v, w)).collect()
}

/// Directed graph on `n` vertices where each ordered pair is an arc with
/// probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    arcs
}

/// Builds a graph whose vertex table holds `v0..v{n-1}` in index order,
/// isolated vertices included.
pub fn graph_from_arcs(n: usize, arcs: &[(usize, usize, f64)]) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(&format!("v{i}")).unwrap();
    }
    for &(u, v, w) in arcs {
        b.add_edge(&format!("v{u}"), &format!("v{v}"), w).unwrap();
    }
    b.build()
}

/// Total-degree targets drawn as rounded `Exp(lambda)` values.
pub fn exponential_degrees<R: Rng>(rng: &mut R, n: usize, lambda: f64) -> Vec<usize> {
    let exp = Exp::new(lambda).expect("positive rate");
    (0..n).map(|_| exp.sample(rng).round() as usize).collect()
}

/// Directed graph on `n` vertices whose total degrees follow rounded
/// `Exp(lambda)` targets. Stubs are shuffled and paired into arcs;
/// self-loops and repeated arcs are discarded, so realised degrees can fall
/// slightly below the targets.
pub fn exponential_degree_graph<R: Rng>(rng: &mut R, n: usize, lambda: f64) -> Graph {
    let targets = exponential_degrees(rng, n, lambda);
    let mut stubs: Vec<usize> = targets
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(rng);
    let mut seen = std::collections::HashSet::new();
    let arcs: Vec<(usize, usize, f64)> = stubs
        .chunks_exact(2)
        .filter(|p| p[0] != p[1] && seen.insert((p[0], p[1])))
        .map(|p| (p[0], p[1], 1.0))
        .collect();
    graph_from_arcs(n, &arcs)
}

/// Balanced-ish hierarchy of roughly `n` vertices with edges at every level,
/// sized for benchmarking.
pub fn layered_instance<R: Rng>(rng: &mut R, n: usize, edges_per_vertex: usize) -> Instance {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let names: Vec<String> = labels.iter().map(|l| format!("v{l}")).collect();
    let parents: Vec<Option<usize>> = (0..n)
        .map(|i| if i == 0 { None } else { Some((i - 1) / 4) })
        .collect();
    let mut edges = BTreeMap::new();
    for _ in 0..n * edges_per_vertex {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u, v), 1.0);
        }
    }
    let graph_text = edges
        .keys()
        .map(|&(u, v)| format!("{}\t{}\n", names[u], names[v]))
        .collect();
    let hierarchy_text = parents
        .iter()
        .enumerate()
        .filter_map(|(c, p)| p.map(|p| format!("{}\t{}\n", names[p], names[c])))
        .collect();
    Instance {
        names,
        parents,
        edges,
        graph_text,
        hierarchy_text,
    }
}
