//! Summary statistics, centralities and degree-distribution fits.
//!
//! Every metric treats the graph as unweighted: an edge is present or not.

mod centrality;
mod degree_fit;
mod report;

pub use centrality::{
    betweenness, centrality_suite, closeness, hits, pagerank, top_k, CentralityMetric,
    CentralityOptions, CentralityTable, RankEntry, RankedList,
};
pub use degree_fit::{degree_fit, fit_exponential, CcdfPoint, DegreeFit};
pub use report::{metrics_report, MetricsReport};

use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// Unit-length BFS distances from `source`, following edges forward or
/// backward.
pub(crate) fn bfs_distances(g: &Graph, source: VertexId, reverse: bool, dist: &mut Vec<u32>) {
    dist.clear();
    dist.resize(g.vertex_count(), UNREACHABLE);
    dist[source.index()] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = if reverse { g.predecessors(v) } else { g.successors(v) };
        for &w in next {
            if dist[w.index()] == UNREACHABLE {
                dist[w.index()] = dist[v.index()] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Vertices with at least one incident edge.
pub(crate) fn active_count(g: &Graph) -> usize {
    g.vertices().ids().filter(|&v| g.has_connectivity(v)).count()
}
