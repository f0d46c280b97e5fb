//! Dense Laplacian algebra on symmetrized graphs: Schur-complement (Kron)
//! reduction onto a vertex subset and effective resistance.
//!
//! Directed inputs are symmetrized first with `w(u,v) + w(v,u)`. All solves
//! work per connected component with the lowest-id vertex of the component
//! grounded, which avoids forming a pseudoinverse.

mod kron;
mod laplacian;
mod resistance;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graph::{Graph, VertexId, VertexTable};

pub use kron::kron_reduce;
pub use laplacian::{laplacian, LaplacianView};
pub use resistance::{effective_resistance, grounded_solve, GroundedFactor, ResistanceCalculator};

/// Undirected weighted graph over a subset of a vertex table. Edge keys are
/// stored with the smaller id first.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    vertices: Arc<VertexTable>,
    members: Vec<VertexId>,
    weights: BTreeMap<(VertexId, VertexId), f64>,
}

impl UndirectedGraph {
    pub(crate) fn new(
        vertices: Arc<VertexTable>,
        mut members: Vec<VertexId>,
        weights: BTreeMap<(VertexId, VertexId), f64>,
    ) -> Self {
        members.sort_unstable();
        members.dedup();
        debug_assert!(weights.keys().all(|&(u, v)| u < v));
        UndirectedGraph {
            vertices,
            members,
            weights,
        }
    }

    /// Folds both directions of every edge into one undirected weight.
    pub fn symmetrize(g: &Graph) -> Self {
        let mut weights = BTreeMap::new();
        for (u, v, w) in g.edges() {
            let key = if u < v { (u, v) } else { (v, u) };
            *weights.entry(key).or_insert(0.0) += w;
        }
        Self::new(g.vertices().clone(), g.vertices().ids().collect(), weights)
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    /// Vertices present in this graph, ascending by id.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        let key = if u < v { (u, v) } else { (v, u) };
        self.weights.get(&key).copied().unwrap_or(0.0)
    }

    /// Connected components, each ascending by id, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in self.weights.keys() {
            let (a, b) = (find(&mut parent, u.index()), find(&mut parent, v.index()));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for &v in &self.members {
            let r = find(&mut parent, v.index());
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<VertexId>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }
}

impl From<&Graph> for UndirectedGraph {
    fn from(g: &Graph) -> Self {
        UndirectedGraph::symmetrize(g)
    }
}
