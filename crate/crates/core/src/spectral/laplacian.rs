use nalgebra::DMatrix;

use super::UndirectedGraph;
use crate::graph::{Graph, VertexId};

/// Dense Laplacian `D - W` of an undirected graph, rows and columns in
/// `ordering`.
#[derive(Debug, Clone)]
pub struct LaplacianView {
    ordering: Vec<VertexId>,
    /// Row of each table id, `usize::MAX` when absent.
    position: Vec<usize>,
    matrix: DMatrix<f64>,
}

impl LaplacianView {
    pub fn of(g: &UndirectedGraph) -> Self {
        let ordering = g.members().to_vec();
        let mut position = vec![usize::MAX; g.vertices().len()];
        for (i, v) in ordering.iter().enumerate() {
            position[v.index()] = i;
        }
        let n = ordering.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (u, v, w) in g.edges() {
            let (i, j) = (position[u.index()], position[v.index()]);
            matrix[(i, j)] -= w;
            matrix[(j, i)] -= w;
            matrix[(i, i)] += w;
            matrix[(j, j)] += w;
        }
        LaplacianView {
            ordering,
            position,
            matrix,
        }
    }

    pub fn ordering(&self) -> &[VertexId] {
        &self.ordering
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.position
            .get(v.index())
            .copied()
            .filter(|&p| p != usize::MAX)
    }

    /// Dense block with the given row and column vertices.
    pub(crate) fn block(&self, rows: &[VertexId], cols: &[VertexId]) -> DMatrix<f64> {
        let ri: Vec<usize> = rows.iter().map(|&v| self.position[v.index()]).collect();
        let ci: Vec<usize> = cols.iter().map(|&v| self.position[v.index()]).collect();
        DMatrix::from_fn(ri.len(), ci.len(), |i, j| self.matrix[(ri[i], ci[j])])
    }
}

/// Laplacian of the symmetrized graph over all of its vertices, in id order.
pub fn laplacian(g: &Graph) -> LaplacianView {
    LaplacianView::of(&UndirectedGraph::symmetrize(g))
}
