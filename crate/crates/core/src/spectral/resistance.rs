use nalgebra::{DMatrix, DVector};

use super::{LaplacianView, UndirectedGraph};
use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Cholesky factor of a connected component's Laplacian with its first
/// (lowest-id) vertex grounded.
#[derive(Debug, Clone)]
pub struct GroundedFactor {
    component: Vec<VertexId>,
    cholesky: Option<nalgebra::Cholesky<f64, nalgebra::Dyn>>,
}

impl GroundedFactor {
    /// `component` must be a connected vertex set of the Laplacian's graph;
    /// it is sorted so the ground is its smallest id.
    pub fn new(lap: &LaplacianView, component: &[VertexId]) -> Result<Self> {
        let mut component = component.to_vec();
        component.sort_unstable();
        component.dedup();
        if let Some(&v) = component.iter().find(|&&v| lap.position(v).is_none()) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let cholesky = if component.len() > 1 {
            let rest = &component[1..];
            let block = lap.block(rest, rest);
            Some(block.cholesky().ok_or_else(|| {
                Error::Numerical("grounded Laplacian is not positive definite".into())
            })?)
        } else {
            None
        };
        Ok(GroundedFactor {
            component,
            cholesky,
        })
    }

    pub fn component(&self) -> &[VertexId] {
        &self.component
    }

    pub fn ground(&self) -> VertexId {
        self.component[0]
    }

    /// Solves `L x = rhs` over the component with `x[ground] = 0`. `rhs` is
    /// indexed like [`component`](Self::component) and must sum to zero.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.component.len() {
            return Err(Error::Domain(format!(
                "right-hand side has {} entries for a component of {}",
                rhs.len(),
                self.component.len()
            )));
        }
        let scale = rhs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let sum: f64 = rhs.iter().sum();
        if sum.abs() > 1e-10 * scale {
            return Err(Error::Domain(format!(
                "unbalanced current injection (sum {sum:e})"
            )));
        }
        let mut x = vec![0.0; rhs.len()];
        if let Some(ch) = &self.cholesky {
            let b = DVector::from_column_slice(&rhs[1..]);
            let sol = ch.solve(&b);
            x[1..].copy_from_slice(sol.as_slice());
        }
        Ok(x)
    }

    /// Inverse of the grounded block, bordered with a zero row and column for
    /// the ground, so entry `(i, j)` acts as a pseudoinverse surrogate in the
    /// resistance formula.
    pub fn bordered_inverse(&self) -> DMatrix<f64> {
        let k = self.component.len();
        let mut out = DMatrix::zeros(k, k);
        if let Some(ch) = &self.cholesky {
            let inv = ch.inverse();
            out.view_mut((1, 1), (k - 1, k - 1)).copy_from(&inv);
        }
        out
    }
}

/// Solves `lap x = rhs` on `component` with the lowest-id vertex held at
/// potential zero.
pub fn grounded_solve(lap: &LaplacianView, component: &[VertexId], rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != component.len() {
        return Err(Error::Domain("right-hand side length mismatch".into()));
    }
    let factor = GroundedFactor::new(lap, component)?;
    if factor.component().len() != component.len() {
        return Err(Error::Domain("component lists a vertex twice".into()));
    }
    let mut order: Vec<usize> = (0..component.len()).collect();
    order.sort_by_key(|&i| component[i]);
    let sorted_rhs: Vec<f64> = order.iter().map(|&i| rhs[i]).collect();
    let sorted_x = factor.solve(&sorted_rhs)?;
    let mut x = vec![0.0; component.len()];
    for (k, &i) in order.iter().enumerate() {
        x[i] = sorted_x[k];
    }
    Ok(x)
}

/// Pairwise effective resistance for one undirected graph, with a grounded
/// inverse cached per connected component.
#[derive(Debug, Clone)]
pub struct ResistanceCalculator {
    /// `(component, local index)` per table id.
    slot: Vec<Option<(usize, usize)>>,
    inverses: Vec<DMatrix<f64>>,
}

impl ResistanceCalculator {
    pub fn new(g: &UndirectedGraph) -> Result<Self> {
        let lap = LaplacianView::of(g);
        let mut slot = vec![None; g.vertices().len()];
        let mut inverses = Vec::new();
        for (ci, comp) in g.components().into_iter().enumerate() {
            let factor = GroundedFactor::new(&lap, &comp)?;
            for (li, &v) in factor.component().iter().enumerate() {
                slot[v.index()] = Some((ci, li));
            }
            inverses.push(factor.bordered_inverse());
        }
        Ok(ResistanceCalculator { slot, inverses })
    }

    /// `R(u,v) = G_uu + G_vv - 2 G_uv`; zero for `u == v`, infinite across
    /// components.
    pub fn resistance(&self, u: VertexId, v: VertexId) -> Result<f64> {
        let lookup = |x: VertexId| {
            self.slot
                .get(x.index())
                .copied()
                .flatten()
                .ok_or_else(|| Error::UnknownVertex(x.to_string()))
        };
        let (cu, iu) = lookup(u)?;
        let (cv, iv) = lookup(v)?;
        if u == v {
            return Ok(0.0);
        }
        if cu != cv {
            return Ok(f64::INFINITY);
        }
        let g = &self.inverses[cu];
        Ok((g[(iu, iu)] + g[(iv, iv)] - 2.0 * g[(iu, iv)]).max(0.0))
    }
}

/// Effective resistance for each requested pair, aligned with `pairs`.
pub fn effective_resistance(g: &UndirectedGraph, pairs: &[(VertexId, VertexId)]) -> Result<Vec<f64>> {
    let calc = ResistanceCalculator::new(g)?;
    pairs.iter().map(|&(u, v)| calc.resistance(u, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use approx::assert_relative_eq;

    fn ug(text: &str) -> UndirectedGraph {
        UndirectedGraph::symmetrize(&load_graph(text).unwrap())
    }

    fn r(g: &UndirectedGraph, a: &str, b: &str) -> f64 {
        let id = |n| g.vertices().lookup(n).unwrap();
        effective_resistance(g, &[(id(a), id(b))]).unwrap()[0]
    }

    #[test]
    fn single_resistor() {
        assert_relative_eq!(r(&ug("a\tb\t4\n"), "a", "b"), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn series_path() {
        assert_relative_eq!(r(&ug("a\tb\nb\tc\n"), "a", "c"), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn triangle_edge() {
        let g = ug("a\tb\nb\tc\nc\ta\n");
        assert_relative_eq!(r(&g, "a", "b"), 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(r(&g, "c", "b"), 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn same_vertex_and_cross_component() {
        let g = ug("a\tb\nc\td\n");
        assert_eq!(r(&g, "a", "a"), 0.0);
        assert!(r(&g, "a", "d").is_infinite());
        assert!(effective_resistance(&g, &[(VertexId(0), VertexId(42))]).is_err());
    }

    #[test]
    fn grounded_solve_examples() {
        let g = ug("a\tb\n");
        let lap = LaplacianView::of(&g);
        let comp = g.members().to_vec();
        assert_eq!(grounded_solve(&lap, &comp, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        let x = grounded_solve(&lap, &comp, &[1.0, -1.0]).unwrap();
        assert_relative_eq!(x[0] - x[1], 1.0, epsilon = 1e-14);
        assert!(grounded_solve(&lap, &comp, &[1.0, 0.0]).is_err());

        let g = ug("a\tb\nb\tc\n");
        let lap = LaplacianView::of(&g);
        let id = |n| g.vertices().lookup(n).unwrap();
        let comp = vec![id("c"), id("a"), id("b")];
        let x = grounded_solve(&lap, &comp, &[-1.0, 1.0, 0.0]).unwrap();
        assert_relative_eq!(x[1] - x[0], 2.0, epsilon = 1e-12);
        // Ground is the lowest id, i.e. `a`.
        assert_eq!(x[1], 0.0);
    }
}
