//! Reference implementations written for clarity, not speed.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;

pub const INF: u64 = u64::MAX;

/// All-pairs effective resistance from the Moore-Penrose pseudoinverse of
/// the Laplacian, `R(i,j) = P_ii + P_jj - 2 P_ij`. Only meaningful for
/// connected graphs. `edges` are undirected.
pub fn pinv_resistances(n: usize, edges: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for &(u, v, w) in edges {
        lap[(u, u)] += w;
        lap[(v, v)] += w;
        lap[(u, v)] -= w;
        lap[(v, u)] -= w;
    }
    let svd = lap.svd(true, true);
    let cutoff = 1e-9 * svd.singular_values.max();
    let pinv = svd.pseudo_inverse(cutoff).expect("svd with vectors");
    DMatrix::from_fn(n, n, |i, j| pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)])
}

fn children(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut kids = vec![Vec::new(); parents.len()];
    for (c, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            kids[*p].push(c);
        }
    }
    kids
}

/// True if `a` lies on the path from the root to `v`, `v` included.
pub fn is_ancestor_or_self(parents: &[Option<usize>], a: usize, mut v: usize) -> bool {
    loop {
        if v == a {
            return true;
        }
        match parents[v] {
            Some(p) => v = p,
            None => return false,
        }
    }
}

/// Leaves below `v` found by scanning every vertex.
pub fn leaves_under(parents: &[Option<usize>], v: usize) -> Vec<usize> {
    let kids = children(parents);
    (0..parents.len())
        .filter(|&x| kids[x].is_empty() && is_ancestor_or_self(parents, v, x))
        .collect()
}

/// Every weighted edge `(u, v, w)` adds `w` to each leaf pair below
/// `u` x `v`, excluding pairs of a leaf with itself.
pub fn leafset_closure(
    parents: &[Option<usize>],
    edges: &BTreeMap<(usize, usize), f64>,
) -> BTreeMap<(usize, usize), f64> {
    let mut out = BTreeMap::new();
    for (&(u, v), &w) in edges {
        for s in leaves_under(parents, u) {
            for t in leaves_under(parents, v) {
                if s != t {
                    *out.entry((s, t)).or_insert(0.0) += w;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Collapse {
    /// Surviving vertices with their (unchanged) parents.
    pub kept: BTreeMap<usize, Option<usize>>,
    pub edges: BTreeMap<(usize, usize), f64>,
    pub dropped: usize,
}

/// Maps each vertex with connectivity to the first connectivity-bearing
/// vertex on its root path, sums the edges, and removes everything strictly
/// below those targets.
pub fn anchor_collapse(
    parents: &[Option<usize>],
    edges: &BTreeMap<(usize, usize), f64>,
) -> Collapse {
    let n = parents.len();
    let connected: BTreeSet<usize> = edges.keys().flat_map(|&(u, v)| [u, v]).collect();
    let root_path = |mut v: usize| {
        let mut path = vec![v];
        while let Some(p) = parents[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        path
    };
    let anchor = |v: usize| {
        *root_path(v)
            .iter()
            .find(|x| connected.contains(x))
            .expect("v itself is connected")
    };
    let anchors: BTreeSet<usize> = connected.iter().map(|&v| anchor(v)).collect();

    let kept = (0..n)
        .filter(|&v| {
            let path = root_path(v);
            !path[..path.len() - 1].iter().any(|a| anchors.contains(a))
        })
        .map(|v| (v, parents[v]))
        .collect();

    let mut out = BTreeMap::new();
    let mut dropped = 0;
    for (&(u, v), &w) in edges {
        let (a, b) = (anchor(u), anchor(v));
        if a == b {
            dropped += 1;
        } else {
            *out.entry((a, b)).or_insert(0.0) += w;
        }
    }
    Collapse {
        kept,
        edges: out,
        dropped,
    }
}

/// Unit-length all-pairs shortest paths; `INF` marks unreachable pairs.
pub fn floyd_warshall(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in arcs {
        d[u][v] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSummary {
    pub density: f64,
    pub reciprocity: f64,
    pub diameter: u64,
    pub characteristic_path_length: f64,
    pub in_closeness: Vec<f64>,
    pub out_closeness: Vec<f64>,
}

/// Summary statistics from Floyd-Warshall distances. `arcs` must be
/// distinct and loop-free.
pub fn path_summary(n: usize, arcs: &[(usize, usize)]) -> PathSummary {
    let d = floyd_warshall(n, arcs);
    let arc_set: BTreeSet<(usize, usize)> = arcs.iter().copied().collect();
    let active = (0..n)
        .filter(|&v| arcs.iter().any(|&(a, b)| a == v || b == v))
        .count();
    let m = arcs.len() as f64;
    let reciprocated = arcs.iter().filter(|&&(u, v)| arc_set.contains(&(v, u))).count();

    let mut diameter = 0;
    let mut total = 0;
    let mut pairs = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && d[i][j] != INF {
                diameter = diameter.max(d[i][j]);
                total += d[i][j];
                pairs += 1;
            }
        }
    }

    let closeness = |reach: Vec<(u64, u64)>| -> Vec<f64> {
        reach
            .into_iter()
            .map(|(r, sum)| {
                if r == 0 {
                    0.0
                } else {
                    (r * r) as f64 / ((active - 1) as f64 * sum as f64)
                }
            })
            .collect()
    };
    let gather = |f: &dyn Fn(usize, usize) -> u64| -> Vec<(u64, u64)> {
        (0..n)
            .map(|v| {
                let ds: Vec<u64> = (0..n)
                    .filter(|&u| u != v)
                    .map(|u| f(u, v))
                    .filter(|&x| x != INF)
                    .collect();
                (ds.len() as u64, ds.iter().sum())
            })
            .collect()
    };

    PathSummary {
        density: m / (active * (active - 1)) as f64,
        reciprocity: reciprocated as f64 / m,
        diameter,
        characteristic_path_length: total as f64 / pairs as f64,
        in_closeness: closeness(gather(&|u, v| d[u][v])),
        out_closeness: closeness(gather(&|u, v| d[v][u])),
    }
}

/// Betweenness by listing every shortest path between every ordered pair.
pub fn brute_betweenness(n: usize, arcs: &[(usize, usize)]) -> Vec<f64> {
    let d = floyd_warshall(n, arcs);
    let mut out_adj = vec![Vec::new(); n];
    for &(u, v) in arcs {
        out_adj[u].push(v);
    }

    fn walk(
        v: usize,
        t: usize,
        d: &[Vec<u64>],
        adj: &[Vec<usize>],
        path: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        if v == t {
            paths.push(path.clone());
            return;
        }
        for &w in &adj[v] {
            if d[w][t] != INF && d[w][t] + 1 == d[v][t] {
                path.push(w);
                walk(w, t, d, adj, path, paths);
                path.pop();
            }
        }
    }

    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] == INF {
                continue;
            }
            let mut paths = Vec::new();
            walk(s, t, &d, &out_adj, &mut vec![s], &mut paths);
            let total = paths.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                score[v] += through as f64 / total;
            }
        }
    }
    score
}

/// Mean directed clustering from the dense cube of `A + A^T`, over vertices
/// with at least two distinct neighbours; zero when there are none.
pub fn mean_clustering(n: usize, arcs: &[(usize, usize)]) -> f64 {
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in arcs {
        a[(u, v)] = 1.0;
    }
    let s = &a + a.transpose();
    let cube = &s * &s * &s;
    let mut sum = 0.0;
    let mut count = 0;
    for i in 0..n {
        let neighbours = (0..n).filter(|&j| s[(i, j)] > 0.0).count();
        if neighbours < 2 {
            continue;
        }
        let d_tot: f64 = (0..n).map(|j| s[(i, j)]).sum();
        let d_bi = (0..n).filter(|&j| a[(i, j)] * a[(j, i)] > 0.0).count() as f64;
        sum += cube[(i, i)] / 2.0 / (d_tot * (d_tot - 1.0) - 2.0 * d_bi);
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}
