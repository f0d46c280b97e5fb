use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{active_count, bfs_distances, UNREACHABLE};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexTable};

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CentralityMetric {
    InDegree,
    OutDegree,
    InCloseness,
    OutCloseness,
    Betweenness,
    Hubs,
    Authorities,
    PageRank,
}

impl CentralityMetric {
    pub const ALL: [CentralityMetric; 8] = [
        CentralityMetric::InDegree,
        CentralityMetric::OutDegree,
        CentralityMetric::InCloseness,
        CentralityMetric::OutCloseness,
        CentralityMetric::Betweenness,
        CentralityMetric::Hubs,
        CentralityMetric::Authorities,
        CentralityMetric::PageRank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CentralityMetric::InDegree => "in_degree",
            CentralityMetric::OutDegree => "out_degree",
            CentralityMetric::InCloseness => "in_closeness",
            CentralityMetric::OutCloseness => "out_closeness",
            CentralityMetric::Betweenness => "betweenness",
            CentralityMetric::Hubs => "hubs",
            CentralityMetric::Authorities => "authorities",
            CentralityMetric::PageRank => "pagerank",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CentralityMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CentralityMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown centrality metric `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityOptions {
    pub damping: f64,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions { damping: 0.85 }
    }
}

/// Eight per-vertex centrality scores, indexed by vertex id.
#[derive(Debug, Clone)]
pub struct CentralityTable {
    vertices: Arc<VertexTable>,
    scores: [Vec<f64>; 8],
    hits_iterations: usize,
    pagerank_iterations: usize,
}

impl CentralityTable {
    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn scores(&self, metric: CentralityMetric) -> &[f64] {
        &self.scores[metric.slot()]
    }

    pub fn score(&self, metric: CentralityMetric, v: VertexId) -> f64 {
        self.scores[metric.slot()][v.index()]
    }

    pub fn hits_iterations(&self) -> usize {
        self.hits_iterations
    }

    pub fn pagerank_iterations(&self) -> usize {
        self.pagerank_iterations
    }
}

pub fn centrality_suite(g: &Graph, opts: &CentralityOptions) -> Result<CentralityTable> {
    if g.edge_count() == 0 {
        return Err(Error::Domain("graph has no edges".into()));
    }
    let ids = || g.vertices().ids();
    let in_degree = ids().map(|v| g.in_degree(v) as f64).collect();
    let out_degree = ids().map(|v| g.out_degree(v) as f64).collect();
    let (in_closeness, out_closeness) = closeness(g);
    let (hubs, authorities, hits_iterations) = hits(g)?;
    let (rank, pagerank_iterations) = pagerank(g, opts.damping)?;
    Ok(CentralityTable {
        vertices: g.vertices().clone(),
        scores: [
            in_degree,
            out_degree,
            in_closeness,
            out_closeness,
            betweenness(g),
            hubs,
            authorities,
            rank,
        ],
        hits_iterations,
        pagerank_iterations,
    })
}

/// Reach-adjusted closeness `r^2 / ((n_active - 1) * sum d)`, where `r`
/// counts the vertices reaching `v` (in) or reached from `v` (out). Zero
/// when `r = 0`. Returns `(in, out)`.
pub fn closeness(g: &Graph) -> (Vec<f64>, Vec<f64>) {
    let n_active = active_count(g);
    let mut dist = Vec::new();
    let mut run = |reverse: bool| -> Vec<f64> {
        g.vertices()
            .ids()
            .map(|v| {
                bfs_distances(g, v, reverse, &mut dist);
                let (mut r, mut total) = (0u64, 0u64);
                for &d in dist.iter().filter(|&&d| d != 0 && d != UNREACHABLE) {
                    r += 1;
                    total += d as u64;
                }
                if r == 0 {
                    0.0
                } else {
                    (r * r) as f64 / ((n_active - 1) as f64 * total as f64)
                }
            })
            .collect()
    };
    let inward = run(true);
    let outward = run(false);
    (inward, outward)
}

/// Shortest-path betweenness over ordered pairs, unnormalised.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut score = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![UNREACHABLE; n];
    let mut delta = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in g.vertices().ids() {
        sigma.fill(0.0);
        dist.fill(UNREACHABLE);
        delta.fill(0.0);
        order.clear();
        sigma[s.index()] = 1.0;
        dist[s.index()] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.successors(v) {
                if dist[w.index()] == UNREACHABLE {
                    dist[w.index()] = dist[v.index()] + 1;
                    queue.push_back(w);
                }
                if dist[w.index()] == dist[v.index()] + 1 {
                    sigma[w.index()] += sigma[v.index()];
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in g.predecessors(w) {
                if dist[v.index()] != UNREACHABLE && dist[v.index()] + 1 == dist[w.index()] {
                    delta[v.index()] +=
                        sigma[v.index()] / sigma[w.index()] * (1.0 + delta[w.index()]);
                }
            }
            if w != s {
                score[w.index()] += delta[w.index()];
            }
        }
    }
    score
}

/// Hub and authority scores by alternating power iteration, each vector
/// normalised to unit Euclidean length. Returns `(hubs, authorities,
/// iterations)`.
pub fn hits(g: &Graph) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    let n = g.vertex_count();
    let start = 1.0 / (n as f64).sqrt();
    let mut hubs = vec![start; n];
    let mut auth = vec![start; n];
    let mut next_auth = vec![0.0; n];
    let mut next_hubs = vec![0.0; n];
    for iteration in 1..=MAX_ITERATIONS {
        for v in g.vertices().ids() {
            next_auth[v.index()] = g.predecessors(v).iter().map(|u| hubs[u.index()]).sum();
        }
        normalize_l2(&mut next_auth)?;
        for v in g.vertices().ids() {
            next_hubs[v.index()] = g.successors(v).iter().map(|w| next_auth[w.index()]).sum();
        }
        normalize_l2(&mut next_hubs)?;
        let change = max_abs_diff(&auth, &next_auth).max(max_abs_diff(&hubs, &next_hubs));
        std::mem::swap(&mut auth, &mut next_auth);
        std::mem::swap(&mut hubs, &mut next_hubs);
        if change <= TOLERANCE {
            return Ok((hubs, auth, iteration));
        }
    }
    Err(Error::Numerical(format!(
        "hits did not converge within {MAX_ITERATIONS} iterations"
    )))
}

/// PageRank with uniform teleport; mass on vertices without out-edges is
/// spread uniformly. Returns the scores and the iteration count.
pub fn pagerank(g: &Graph, damping: f64) -> Result<(Vec<f64>, usize)> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::Domain(format!("damping {damping} is outside (0, 1)")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    for iteration in 1..=MAX_ITERATIONS {
        let dangling: f64 = g
            .vertices()
            .ids()
            .filter(|&v| g.out_degree(v) == 0)
            .map(|v| rank[v.index()])
            .sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        for v in g.vertices().ids() {
            let inflow: f64 = g
                .predecessors(v)
                .iter()
                .map(|&u| rank[u.index()] / g.out_degree(u) as f64)
                .sum();
            next[v.index()] = base + damping * inflow;
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change <= TOLERANCE {
            return Ok((rank, iteration));
        }
    }
    Err(Error::Numerical(format!(
        "pagerank did not converge within {MAX_ITERATIONS} iterations"
    )))
}

fn normalize_l2(x: &mut [f64]) -> Result<()> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Numerical("hits iterate vanished".into()));
    }
    x.iter_mut().for_each(|v| *v /= norm);
    Ok(())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub rank: usize,
    pub vertex: VertexId,
    pub name: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub metric: CentralityMetric,
    pub entries: Vec<RankEntry>,
}

/// The `k` highest-scoring vertices for every metric, ties broken by name.
/// `k` larger than the vertex count returns every vertex.
pub fn top_k(table: &CentralityTable, k: usize) -> Result<Vec<RankedList>> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let names = &table.vertices;
    Ok(CentralityMetric::ALL
        .into_iter()
        .map(|metric| {
            let scores = table.scores(metric);
            let mut ids: Vec<VertexId> = names.ids().collect();
            ids.sort_by(|&a, &b| {
                scores[b.index()]
                    .partial_cmp(&scores[a.index()])
                    .unwrap_or(Ordering::Equal)
                    .then_with(|| names.name(a).cmp(names.name(b)))
            });
            let entries = ids
                .into_iter()
                .take(k)
                .enumerate()
                .map(|(i, v)| RankEntry {
                    rank: i + 1,
                    vertex: v,
                    name: names.name(v).to_owned(),
                    score: scores[v.index()],
                })
                .collect();
            RankedList { metric, entries }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use approx::assert_relative_eq;

    fn suite(text: &str) -> (Graph, CentralityTable) {
        let g = load_graph(text).unwrap();
        let t = centrality_suite(&g, &CentralityOptions::default()).unwrap();
        (g, t)
    }

    #[test]
    fn three_cycle_is_symmetric() {
        let (_, t) = suite("a\tb\nb\tc\nc\ta\n");
        for m in CentralityMetric::ALL {
            let s = t.scores(m);
            assert!(s.iter().all(|&x| (x - s[0]).abs() < 1e-12), "{m}");
        }
        let top = top_k(&t, 3).unwrap();
        for list in top {
            let names: Vec<_> = list.entries.iter().map(|e| e.name.as_str()).collect();
            assert_eq!(names, ["a", "b", "c"]);
        }
    }

    #[test]
    fn star_centre_dominates() {
        let (g, t) = suite("c\tx\nc\ty\nc\tz\n");
        let c = g.vertices().lookup("c").unwrap();
        assert_eq!(t.score(CentralityMetric::OutDegree, c), 3.0);
        assert_relative_eq!(t.score(CentralityMetric::Hubs, c), 1.0, epsilon = 1e-12);
        let auth = t.scores(CentralityMetric::Authorities);
        for name in ["x", "y", "z"] {
            let v = g.vertices().lookup(name).unwrap();
            assert_relative_eq!(auth[v.index()], 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        }
        let top = top_k(&t, 1).unwrap();
        assert_eq!(top[CentralityMetric::OutDegree.slot()].entries[0].name, "c");
    }

    #[test]
    fn path_betweenness() {
        let (g, t) = suite("a\tb\nb\tc\n");
        let b = t.scores(CentralityMetric::Betweenness);
        let id = |s| g.vertices().lookup(s).unwrap().index();
        assert_eq!(b[id("a")], 0.0);
        assert_eq!(b[id("b")], 1.0);
        assert_eq!(b[id("c")], 0.0);
    }

    #[test]
    fn betweenness_splits_equal_paths() {
        let g = load_graph("s\tx\ns\ty\nx\tt\ny\tt\n").unwrap();
        let b = betweenness(&g);
        let x = g.vertices().lookup("x").unwrap();
        assert_eq!(b[x.index()], 0.5);
    }

    #[test]
    fn pagerank_sums_to_one_with_dangling() {
        let (_, t) = suite("a\tb\na\tc\nb\tc\n");
        let total: f64 = t.scores(CentralityMetric::PageRank).iter().sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-10);
        assert!(t.pagerank_iterations() < MAX_ITERATIONS);
    }

    #[test]
    fn closeness_on_path() {
        let g = load_graph("a\tb\nb\tc\n").unwrap();
        let (inward, outward) = closeness(&g);
        let id = |s| g.vertices().lookup(s).unwrap().index();
        // a reaches b at 1 and c at 2: 2^2 / (2 * 3).
        assert_relative_eq!(outward[id("a")], 4.0 / 6.0);
        assert_eq!(outward[id("c")], 0.0);
        assert_relative_eq!(inward[id("c")], 4.0 / 6.0);
    }

    #[test]
    fn top_k_rejects_zero_and_truncates() {
        let (_, t) = suite("a\tb\n");
        assert!(top_k(&t, 0).is_err());
        assert!(top_k(&t, 10).unwrap().iter().all(|l| l.entries.len() == 2));
    }

    #[test]
    fn bad_damping_is_rejected() {
        let g = load_graph("a\tb\n").unwrap();
        assert!(centrality_suite(&g, &CentralityOptions { damping: 1.0 }).is_err());
    }
}
