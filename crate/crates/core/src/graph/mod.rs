//! Directed weighted graphs over a shared table of named vertices, the
//! accompanying hierarchy, and the parsers for both.

pub(crate) mod classify;
mod hierarchy;
mod io;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use classify::{anchor, classify, VertexClassification};
pub use hierarchy::Hierarchy;
pub use io::{
    load_dataset, load_graph, load_hierarchy, write_edge_list, write_hierarchy,
};

/// Dense index of a vertex inside a [`VertexTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Directed edge as an ordered `(source, target)` pair.
pub type Edge = (VertexId, VertexId);

/// Bijection between vertex names and dense ids. Ids are assigned in order
/// of first insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexTable {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, inserting it if needed. The name must
    /// already have passed [`validate_name`].
    pub fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = VertexId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId> {
        self.get(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn name(&self, id: VertexId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        id.index() < self.names.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len() as u32).map(VertexId)
    }

    /// True if `self` is `other` with zero or more names appended.
    pub fn is_prefix_of(&self, other: &VertexTable) -> bool {
        self.names.len() <= other.names.len()
            && self.names.iter().zip(&other.names).all(|(a, b)| a == b)
    }

    pub(crate) fn check(&self, id: VertexId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(id.to_string()))
        }
    }
}

/// Checks the token rules for vertex names: non-empty, no tab or newline,
/// no surrounding whitespace.
pub fn validate_name(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty vertex name".into());
    }
    if name.contains(['\t', '\n', '\r']) {
        return Err(format!("vertex name {name:?} contains a control separator"));
    }
    if name.trim() != name {
        return Err(format!(
            "vertex name {name:?} has leading or trailing whitespace"
        ));
    }
    Ok(())
}

/// Directed graph without self-loops or parallel edges. Every stored weight
/// is strictly positive; absent edges have weight zero.
#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Arc<VertexTable>,
    weights: BTreeMap<Edge, f64>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge map. Panics on a self-loop, a
    /// non-positive weight or an id outside `vertices`; callers construct
    /// the map through [`GraphBuilder`] or from an existing graph.
    fn from_parts(vertices: Arc<VertexTable>, weights: BTreeMap<Edge, f64>) -> Self {
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (&(u, v), &w) in &weights {
            assert!(u != v, "self-loop at {}", vertices.name(u));
            assert!(w > 0.0 && w.is_finite(), "weight {w} on edge");
            out_adj[u.index()].push(v);
            in_adj[v.index()].push(u);
        }
        Graph {
            vertices,
            weights,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(vertices: Arc<VertexTable>) -> Self {
        Self::from_parts(vertices, BTreeMap::new())
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.vertices.name(v)
    }

    /// Edges in `(source id, target id)` order with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        self.weights.get(&(u, v)).copied().unwrap_or(0.0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.weights.contains_key(&(u, v))
    }

    /// Targets of edges leaving `v`, ascending by id.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v.index()]
    }

    /// Sources of edges entering `v`, ascending by id.
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v.index()]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v.index()].len()
    }

    /// A vertex has connectivity when at least one edge enters or leaves it.
    pub fn has_connectivity(&self, v: VertexId) -> bool {
        !self.out_adj[v.index()].is_empty() || !self.in_adj[v.index()].is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.values().sum()
    }

    /// Rebinds the graph onto a larger vertex table that extends the
    /// current one; the new vertices are isolated.
    pub fn with_vertex_table(&self, table: Arc<VertexTable>) -> Result<Graph> {
        if !self.vertices.is_prefix_of(&table) {
            return Err(Error::Domain(
                "vertex table is not an extension of the graph's table".into(),
            ));
        }
        Ok(Graph::from_parts(table, self.weights.clone()))
    }

    /// Same vertices and edges, every weight set to 1.
    pub fn unweighted(&self) -> Graph {
        let weights = self.weights.keys().map(|&e| (e, 1.0)).collect();
        Graph::from_parts(self.vertices.clone(), weights)
    }

    /// Edge set keyed by names, used for table-independent comparison.
    pub fn named_edges(&self) -> BTreeMap<(String, String), f64> {
        self.edges()
            .map(|(u, v, w)| ((self.name(u).to_owned(), self.name(v).to_owned()), w))
            .collect()
    }
}

/// Two graphs are equal when they carry the same vertex names and the same
/// named, weighted edges, regardless of id assignment.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let same_names = self
            .vertices
            .ids()
            .all(|v| other.vertices.get(self.vertices.name(v)).is_some());
        same_names && self.named_edges() == other.named_edges()
    }
}

/// Accumulates edges, summing weights of repeated ordered pairs.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    vertices: VertexTable,
    weights: BTreeMap<Edge, f64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::with_table(VertexTable::new())
    }

    pub fn with_table(vertices: VertexTable) -> Self {
        GraphBuilder {
            vertices,
            weights: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        validate_name(name).map_err(Error::Domain)?;
        Ok(self.vertices.intern(name))
    }

    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<()> {
        let u = self.add_vertex(source)?;
        let v = self.add_vertex(target)?;
        self.add_edge_ids(u, v, weight)
    }

    pub fn add_edge_ids(&mut self, u: VertexId, v: VertexId, weight: f64) -> Result<()> {
        self.vertices.check(u)?;
        self.vertices.check(v)?;
        if u == v {
            return Err(Error::Domain(format!(
                "self-loop at `{}`",
                self.vertices.name(u)
            )));
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::Domain(format!("weight {weight} is not positive")));
        }
        *self.weights.entry((u, v)).or_insert(0.0) += weight;
        Ok(())
    }

    pub fn table(&self) -> &VertexTable {
        &self.vertices
    }

    pub fn build(self) -> Graph {
        Graph::from_parts(Arc::new(self.vertices), self.weights)
    }
}

impl Default for GraphBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds a graph on an existing table from id-keyed weights, skipping
/// self-loops and non-positive entries.
pub(crate) fn graph_from_weights(
    vertices: Arc<VertexTable>,
    weights: BTreeMap<Edge, f64>,
) -> Graph {
    let weights = weights
        .into_iter()
        .filter(|&((u, v), w)| u != v && w > 0.0)
        .collect();
    Graph::from_parts(vertices, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_sums_duplicates() {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "b", 2.0).unwrap();
        b.add_edge("a", "b", 3.0).unwrap();
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        let a = g.vertices().lookup("a").unwrap();
        let bb = g.vertices().lookup("b").unwrap();
        assert_eq!(g.weight(a, bb), 5.0);
        assert_eq!(g.weight(bb, a), 0.0);
    }

    #[test]
    fn builder_rejects_loops_and_bad_weights() {
        let mut b = GraphBuilder::new();
        assert!(b.add_edge("a", "a", 1.0).is_err());
        assert!(b.add_edge("a", "b", 0.0).is_err());
        assert!(b.add_edge("a", "b", -1.0).is_err());
        assert!(b.add_edge("a", "b", f64::NAN).is_err());
        assert!(b.add_edge(" a", "b", 1.0).is_err());
    }

    #[test]
    fn equality_ignores_id_order() {
        let mut b1 = GraphBuilder::new();
        b1.add_edge("a", "b", 1.0).unwrap();
        b1.add_edge("c", "a", 1.0).unwrap();
        let mut b2 = GraphBuilder::new();
        b2.add_edge("c", "a", 1.0).unwrap();
        b2.add_edge("a", "b", 1.0).unwrap();
        assert_eq!(b1.build(), b2.build());
    }

    #[test]
    fn names_are_validated() {
        assert!(validate_name("V4").is_ok());
        assert!(validate_name("PM#3").is_ok());
        assert!(validate_name("").is_err());
        assert!(validate_name("a\tb").is_err());
        assert!(validate_name("a ").is_err());
    }
}
