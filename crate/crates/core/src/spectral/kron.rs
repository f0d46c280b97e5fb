use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::{LaplacianView, UndirectedGraph};
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexTable};

/// Relative magnitude below which a reduced off-diagonal entry counts as
/// exact cancellation rather than an edge.
const FILL_IN_THRESHOLD: f64 = 1e-12;

/// Kron reduction of `g` onto `retain`.
///
/// Each connected component is reduced to the Schur complement
/// `L_UU - L_UC L_CC^-1 L_CU` of its Laplacian onto its retained vertices
/// `U`; off-diagonal entries of the result become edge weights. Components
/// without any retained vertex are dropped, and retained vertices that end
/// up without edges stay as isolated members.
pub fn kron_reduce(g: &UndirectedGraph, retain: &[VertexId]) -> Result<UndirectedGraph> {
    let table = g.vertices();
    let mut keep = vec![false; table.len()];
    for &v in retain {
        if !g.contains(v) {
            let name = if table.contains(v) {
                table.name(v).to_owned()
            } else {
                v.to_string()
            };
            return Err(Error::UnknownVertex(name));
        }
        keep[v.index()] = true;
    }

    let lap = LaplacianView::of(g);
    let mut members = Vec::new();
    let mut weights = BTreeMap::new();

    for comp in g.components() {
        let (kept, eliminated): (Vec<VertexId>, Vec<VertexId>) =
            comp.iter().partition(|v| keep[v.index()]);
        if kept.is_empty() {
            continue;
        }
        members.extend_from_slice(&kept);
        if kept.len() == 1 {
            continue;
        }

        let mut reduced = lap.block(&kept, &kept);
        if !eliminated.is_empty() {
            let l_cc = lap.block(&eliminated, &eliminated);
            let l_cu = lap.block(&eliminated, &kept);
            let chol = l_cc.cholesky().ok_or_else(|| {
                Error::Numerical("elimination block of Kron reduction is singular".into())
            })?;
            let x = chol.solve(&l_cu);
            reduced -= l_cu.transpose() * x;
        }
        materialize(&reduced, &kept, table, &mut weights)?;
    }

    Ok(UndirectedGraph::new(table.clone(), members, weights))
}

fn materialize(
    reduced: &DMatrix<f64>,
    kept: &[VertexId],
    table: &VertexTable,
    weights: &mut BTreeMap<(VertexId, VertexId), f64>,
) -> Result<()> {
    let scale = reduced.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cutoff = FILL_IN_THRESHOLD * scale;
    let k = kept.len();
    for i in 0..k {
        for j in (i + 1)..k {
            // Average the two triangles to cancel round-off asymmetry.
            let entry = 0.5 * (reduced[(i, j)] + reduced[(j, i)]);
            if entry.abs() <= cutoff {
                continue;
            }
            if entry > 0.0 {
                return Err(Error::Numerical(format!(
                    "reduced Laplacian has positive off-diagonal {entry:e} at ({}, {})",
                    table.name(kept[i]),
                    table.name(kept[j])
                )));
            }
            let (a, b) = (kept[i].min(kept[j]), kept[i].max(kept[j]));
            weights.insert((a, b), -entry);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use approx::assert_relative_eq;

    fn ug(text: &str) -> UndirectedGraph {
        UndirectedGraph::symmetrize(&load_graph(text).unwrap())
    }

    fn ids(g: &UndirectedGraph, names: &[&str]) -> Vec<VertexId> {
        names.iter().map(|n| g.vertices().lookup(n).unwrap()).collect()
    }

    #[test]
    fn series_path_collapses() {
        let g = ug("a\tb\nb\tc\n");
        let k = kron_reduce(&g, &ids(&g, &["a", "c"])).unwrap();
        let v = ids(&g, &["a", "c"]);
        assert_eq!(k.edge_count(), 1);
        assert_relative_eq!(k.weight(v[0], v[1]), 0.5, epsilon = 1e-14);
        assert!(!k.contains(ids(&g, &["b"])[0]));
    }

    #[test]
    fn star_becomes_triangle() {
        let g = ug("s\tx\ns\ty\ns\tz\n");
        let leaves = ids(&g, &["x", "y", "z"]);
        let k = kron_reduce(&g, &leaves).unwrap();
        assert_eq!(k.edge_count(), 3);
        for (_, _, w) in k.edges() {
            assert_relative_eq!(w, 1.0 / 3.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn retain_all_is_identity() {
        let g = ug("a\tb\t2\nb\tc\nc\ta\t0.5\nd\ta\n");
        let k = kron_reduce(&g, g.members()).unwrap();
        assert_eq!(k, g);
    }

    #[test]
    fn drops_components_without_retained_vertices() {
        let g = ug("a\tb\nc\td\n");
        let k = kron_reduce(&g, &ids(&g, &["a"])).unwrap();
        assert_eq!(k.members(), ids(&g, &["a"]).as_slice());
        assert_eq!(k.edge_count(), 0);
    }

    #[test]
    fn unknown_retained_vertex() {
        let g = ug("a\tb\n");
        assert!(kron_reduce(&g, &[VertexId(7)]).is_err());
    }
}
