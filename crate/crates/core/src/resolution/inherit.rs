use std::collections::BTreeMap;

use super::{Provenance, ResolutionResult};
use crate::error::Result;
use crate::graph::classify::ensure_aligned;
use crate::graph::{graph_from_weights, Edge, Graph, Hierarchy};

/// Pushes every edge down to all pairs of descendant leaves.
///
/// The output weight of a leaf pair `(s, t)` is the sum of `w(u, v)` over
/// input edges with `s` under `u` and `t` under `v`. For unweighted input it
/// counts how many reports cover the pair. Pairs with `s == t`, which only
/// arise when `u` is an ancestor of `v` or vice versa, are discarded. The
/// hierarchy is returned unchanged.
pub fn inherit(g: &Graph, h: &Hierarchy) -> Result<ResolutionResult> {
    ensure_aligned(g, h)?;
    let mut weights: BTreeMap<Edge, f64> = BTreeMap::new();
    let mut provenance = Provenance::default();

    for (u, v, w) in g.edges() {
        let mut placed = false;
        for &s in h.leaves_of(u) {
            for &t in h.leaves_of(v) {
                if s == t {
                    continue;
                }
                *weights.entry((s, t)).or_insert(0.0) += w;
                provenance.assignments.entry((s, t)).or_default().push((u, v));
                placed = true;
            }
        }
        if !placed {
            provenance.dropped.push((u, v));
        }
    }

    Ok(ResolutionResult {
        network: graph_from_weights(g.vertices().clone(), weights),
        hierarchy: h.clone(),
        provenance,
        input_vertices: g.vertices().clone(),
    })
}
