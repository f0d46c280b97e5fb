use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Provenance, ResolutionResult};
use crate::error::Result;
use crate::graph::classify::{anchor_unchecked, ensure_aligned};
use crate::graph::{graph_from_weights, Edge, Graph, Hierarchy, VertexId, VertexTable};

/// Collapses every vertex onto its anchor, the topmost connectivity-bearing
/// ancestor-or-self, and prunes everything below the anchors.
///
/// Each edge `(u, v)` becomes `(anchor(u), anchor(v))` with weights summed;
/// edges collapsing to a self-loop are dropped. The output hierarchy is the
/// input one without proper descendants of anchors, so anchors become its
/// leaves.
pub fn disinherit(g: &Graph, h: &Hierarchy) -> Result<ResolutionResult> {
    ensure_aligned(g, h)?;
    let n = g.vertex_count();

    let mut anchor_of: Vec<Option<VertexId>> = vec![None; n];
    let mut is_anchor = vec![false; n];
    for v in g.vertices().ids() {
        if g.has_connectivity(v) {
            let a = anchor_unchecked(g, h, v);
            anchor_of[v.index()] = Some(a);
            is_anchor[a.index()] = true;
        }
    }

    // A vertex survives unless one of its proper ancestors is an anchor.
    let keep: Vec<bool> = g
        .vertices()
        .ids()
        .map(|v| !h.ancestors(v).any(|a| is_anchor[a.index()]))
        .collect();

    let mut table = VertexTable::new();
    let mut remap: Vec<Option<VertexId>> = vec![None; n];
    for v in g.vertices().ids().filter(|v| keep[v.index()]) {
        remap[v.index()] = Some(table.intern(g.name(v)));
    }
    let table = Arc::new(table);
    let parents = g
        .vertices()
        .ids()
        .filter(|v| keep[v.index()])
        .map(|v| h.parent(v).map(|p| remap[p.index()].expect("parent of kept vertex is kept")))
        .collect();
    let hierarchy = Hierarchy::from_parents(table.clone(), parents)?;

    let mut weights: BTreeMap<Edge, f64> = BTreeMap::new();
    let mut provenance = Provenance::default();
    for (u, v, w) in g.edges() {
        let a = anchor_of[u.index()].expect("edge endpoint has connectivity");
        let b = anchor_of[v.index()].expect("edge endpoint has connectivity");
        if a == b {
            provenance.dropped.push((u, v));
            continue;
        }
        let key = (
            remap[a.index()].expect("anchors are kept"),
            remap[b.index()].expect("anchors are kept"),
        );
        *weights.entry(key).or_insert(0.0) += w;
        provenance.assignments.entry(key).or_default().push((u, v));
    }

    Ok(ResolutionResult {
        network: graph_from_weights(table, weights),
        hierarchy,
        provenance,
        input_vertices: g.vertices().clone(),
    })
}
