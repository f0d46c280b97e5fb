use serde::Serialize;

use super::{active_count, bfs_distances, UNREACHABLE};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Whole-network statistics.
///
/// `density` uses the vertices with at least one edge as its basis;
/// `density_all_vertices` uses every vertex in the table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub vertex_count: usize,
    pub active_vertex_count: usize,
    pub edge_count: usize,
    pub density: f64,
    pub density_all_vertices: f64,
    pub reciprocity: f64,
    pub diameter: u32,
    pub characteristic_path_length: f64,
    pub mean_clustering_directed: f64,
}

pub fn metrics_report(g: &Graph) -> Result<MetricsReport> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::Domain("graph has no edges".into()));
    }
    let n = g.vertex_count();
    let n_active = active_count(g);
    let pairs = |k: usize| (k * (k - 1)) as f64;

    let reciprocated = g.edges().filter(|&(u, v, _)| g.has_edge(v, u)).count();

    let mut diameter = 0u32;
    let mut total: u64 = 0;
    let mut finite_pairs: u64 = 0;
    let mut dist = Vec::new();
    for s in g.vertices().ids() {
        bfs_distances(g, s, false, &mut dist);
        for (t, &d) in dist.iter().enumerate() {
            if t != s.index() && d != UNREACHABLE {
                diameter = diameter.max(d);
                total += d as u64;
                finite_pairs += 1;
            }
        }
    }

    Ok(MetricsReport {
        vertex_count: n,
        active_vertex_count: n_active,
        edge_count: m,
        density: m as f64 / pairs(n_active),
        density_all_vertices: m as f64 / pairs(n),
        reciprocity: reciprocated as f64 / m as f64,
        diameter,
        characteristic_path_length: total as f64 / finite_pairs as f64,
        mean_clustering_directed: mean_directed_clustering(g),
    })
}

/// Directed clustering over all orientation patterns: for vertex `i` with
/// `S = A + A^T`, `C_i = (S^3)_ii / 2 / (d(d-1) - 2 d_bi)` where `d` is the
/// total degree and `d_bi` the number of reciprocated neighbours. Averaged
/// over vertices with at least two distinct neighbours.
pub(crate) fn mean_directed_clustering(g: &Graph) -> f64 {
    let n = g.vertex_count();
    // Undirected neighbours with multiplicity S_ij in {1, 2}.
    let mut nbrs: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for v in g.vertices().ids() {
        let mut list: Vec<(usize, u32)> = g
            .successors(v)
            .iter()
            .chain(g.predecessors(v))
            .map(|w| (w.index(), 1))
            .collect();
        list.sort_unstable();
        list.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        nbrs[v.index()] = list;
    }

    let mut mark = vec![0u32; n];
    let mut sum = 0.0;
    let mut counted = 0usize;
    for i in 0..n {
        if nbrs[i].len() < 2 {
            continue;
        }
        for &(k, s) in &nbrs[i] {
            mark[k] = s;
        }
        let mut closed: u64 = 0;
        for &(j, s_ij) in &nbrs[i] {
            for &(k, s_jk) in &nbrs[j] {
                closed += (s_ij * s_jk * mark[k]) as u64;
            }
        }
        for &(k, _) in &nbrs[i] {
            mark[k] = 0;
        }
        let d_tot: u64 = nbrs[i].iter().map(|&(_, s)| s as u64).sum();
        let d_bi = nbrs[i].iter().filter(|&&(_, s)| s == 2).count() as u64;
        let denom = d_tot * (d_tot - 1) - 2 * d_bi;
        sum += closed as f64 / 2.0 / denom as f64;
        counted += 1;
    }
    if counted == 0 {
        0.0
    } else {
        sum / counted as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;

    #[test]
    fn directed_three_cycle() {
        let r = metrics_report(&load_graph("a\tb\nb\tc\nc\ta\n").unwrap()).unwrap();
        assert_eq!(r.density, 0.5);
        assert_eq!(r.reciprocity, 0.0);
        assert_eq!(r.diameter, 2);
        assert_eq!(r.characteristic_path_length, 1.5);
        assert_eq!(r.mean_clustering_directed, 0.5);
    }

    #[test]
    fn complete_digraph() {
        let r = metrics_report(&load_graph("a\tb\nb\ta\nb\tc\nc\tb\na\tc\nc\ta\n").unwrap()).unwrap();
        assert_eq!(r.density, 1.0);
        assert_eq!(r.reciprocity, 1.0);
        assert_eq!(r.diameter, 1);
        assert_eq!(r.characteristic_path_length, 1.0);
        assert_eq!(r.mean_clustering_directed, 1.0);
    }

    #[test]
    fn single_edge() {
        let r = metrics_report(&load_graph("a\tb\n").unwrap()).unwrap();
        assert_eq!(r.characteristic_path_length, 1.0);
        assert_eq!(r.diameter, 1);
        assert_eq!(r.mean_clustering_directed, 0.0);
    }

    #[test]
    fn edgeless_is_an_error() {
        assert!(metrics_report(&load_graph("").unwrap()).is_err());
    }

    #[test]
    fn density_bases_differ_with_silent_vertices() {
        let g = load_graph("a\tb\n").unwrap();
        let mut table = (**g.vertices()).clone();
        table.intern("silent");
        let g = g.with_vertex_table(std::sync::Arc::new(table)).unwrap();
        let r = metrics_report(&g).unwrap();
        assert_eq!(r.vertex_count, 3);
        assert_eq!(r.active_vertex_count, 2);
        assert_eq!(r.density, 0.5);
        assert_eq!(r.density_all_vertices, 1.0 / 6.0);
    }
}
