use std::sync::Arc;

use super::{Graph, Hierarchy, VertexId};
use crate::error::{Error, Result};

/// Split of the vertex universe by hierarchy position and connectivity.
///
/// `internal_with_connectivity`, `leaves_with_connectivity` and `silent`
/// partition the vertices; `silent` holds every vertex without an incident
/// edge, internal or leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub internal_with_connectivity: Vec<VertexId>,
    pub leaves_with_connectivity: Vec<VertexId>,
    pub silent: Vec<VertexId>,
}

impl VertexClassification {
    pub fn len(&self) -> usize {
        self.internal_with_connectivity.len() + self.leaves_with_connectivity.len() + self.silent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) fn ensure_aligned(g: &Graph, h: &Hierarchy) -> Result<()> {
    if Arc::ptr_eq(g.vertices(), h.vertices()) || g.vertices() == h.vertices() {
        Ok(())
    } else {
        Err(Error::Domain(
            "graph and hierarchy do not share a vertex table".into(),
        ))
    }
}

/// Classifies every vertex. Sets are ascending by id.
pub fn classify(g: &Graph, h: &Hierarchy) -> Result<VertexClassification> {
    ensure_aligned(g, h)?;
    let mut out = VertexClassification {
        internal_with_connectivity: Vec::new(),
        leaves_with_connectivity: Vec::new(),
        silent: Vec::new(),
    };
    for v in g.vertices().ids() {
        match (g.has_connectivity(v), h.is_leaf(v)) {
            (false, _) => out.silent.push(v),
            (true, true) => out.leaves_with_connectivity.push(v),
            (true, false) => out.internal_with_connectivity.push(v),
        }
    }
    Ok(out)
}

/// The connectivity-bearing ancestor-or-self of `v` nearest the root.
pub fn anchor(g: &Graph, h: &Hierarchy, v: VertexId) -> Result<VertexId> {
    ensure_aligned(g, h)?;
    g.vertices().check(v)?;
    if !g.has_connectivity(v) {
        return Err(Error::Domain(format!(
            "`{}` has no connectivity and cannot be anchored",
            g.name(v)
        )));
    }
    Ok(anchor_unchecked(g, h, v))
}

pub(crate) fn anchor_unchecked(g: &Graph, h: &Hierarchy, v: VertexId) -> VertexId {
    h.ancestors(v)
        .filter(|&a| g.has_connectivity(a))
        .last()
        .unwrap_or(v)
}
