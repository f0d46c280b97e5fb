use std::sync::Arc;

use super::{VertexId, VertexTable};
use crate::error::{Error, Result};

/// Rooted tree over a vertex table. Children are kept sorted by name so
/// every traversal is deterministic.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    vertices: Arc<VertexTable>,
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<u32>,
    /// Descendant leaves per vertex, ascending by id.
    leafsets: Vec<Vec<VertexId>>,
    preorder: Vec<VertexId>,
}

impl Hierarchy {
    /// Validates parent links (one root, no cycles, every vertex reachable)
    /// and precomputes depths and leafsets.
    pub fn from_parents(
        vertices: Arc<VertexTable>,
        parent: Vec<Option<VertexId>>,
    ) -> Result<Hierarchy> {
        let n = vertices.len();
        assert_eq!(parent.len(), n, "parent table does not match vertex table");
        if n == 0 {
            return Err(Error::hierarchy("", "hierarchy has no vertices"));
        }

        let mut roots: Vec<VertexId> = vertices
            .ids()
            .filter(|v| parent[v.index()].is_none())
            .collect();
        roots.sort_by(|a, b| vertices.name(*a).cmp(vertices.name(*b)));
        if roots.len() > 1 {
            let names: Vec<&str> = roots.iter().map(|&r| vertices.name(r)).collect();
            return Err(Error::hierarchy(
                names[1],
                format!("multiple roots: {}", names.join(", ")),
            ));
        }

        let mut children = vec![Vec::new(); n];
        for v in vertices.ids() {
            if let Some(p) = parent[v.index()] {
                children[p.index()].push(v);
            }
        }
        for list in &mut children {
            list.sort_by(|a, b| vertices.name(*a).cmp(vertices.name(*b)));
        }

        let Some(&root) = roots.first() else {
            let first = vertices
                .ids()
                .map(|v| vertices.name(v))
                .min()
                .unwrap_or_default();
            return Err(Error::hierarchy(first, "cycle in parent links (no root)"));
        };

        // Preorder from the root; anything not reached sits on a cycle.
        let mut depth = vec![0u32; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        depth[root.index()] = 1;
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &c in children[v.index()].iter().rev() {
                depth[c.index()] = depth[v.index()] + 1;
                stack.push(c);
            }
        }
        if preorder.len() != n {
            let stray = vertices
                .ids()
                .filter(|v| depth[v.index()] == 0)
                .map(|v| vertices.name(v))
                .min()
                .unwrap_or_default();
            return Err(Error::hierarchy(stray, "cycle in parent links"));
        }

        let mut leafsets: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &v in preorder.iter().rev() {
            if children[v.index()].is_empty() {
                leafsets[v.index()] = vec![v];
            } else {
                let mut acc: Vec<VertexId> = children[v.index()]
                    .iter()
                    .flat_map(|c| leafsets[c.index()].iter().copied())
                    .collect();
                acc.sort_unstable();
                leafsets[v.index()] = acc;
            }
        }

        Ok(Hierarchy {
            vertices,
            root,
            parent,
            children,
            depth,
            leafsets,
            preorder,
        })
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.vertices.name(v)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.index()]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v.index()].is_empty()
    }

    /// Descendant leaves of `v`; a leaf maps to itself.
    pub fn leafset(&self, v: VertexId) -> Result<&[VertexId]> {
        self.vertices.check(v)?;
        Ok(&self.leafsets[v.index()])
    }

    pub(crate) fn leaves_of(&self, v: VertexId) -> &[VertexId] {
        &self.leafsets[v.index()]
    }

    /// Tree depth with the root at 1.
    pub fn depth(&self, v: VertexId) -> Result<u32> {
        self.vertices.check(v)?;
        Ok(self.depth[v.index()])
    }

    pub(crate) fn depth_of(&self, v: VertexId) -> u32 {
        self.depth[v.index()]
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::successors(self.parent[v.index()], move |p| self.parent[p.index()])
    }

    /// True if `a` is `d` or lies on the path from `d` to the root.
    pub fn is_ancestor_or_self(&self, a: VertexId, d: VertexId) -> bool {
        let (da, dd) = (self.depth[a.index()], self.depth[d.index()]);
        if da > dd {
            return false;
        }
        let mut cur = d;
        for _ in 0..(dd - da) {
            cur = self.parent[cur.index()].expect("depth implies parent");
        }
        cur == a
    }

    /// Depth-first preorder, children visited in name order.
    pub fn preorder(&self) -> &[VertexId] {
        &self.preorder
    }

    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.preorder.iter().copied().filter(|&v| self.is_leaf(v))
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.preorder.iter().copied().filter(|&v| !self.is_leaf(v))
    }

    /// `(parent, child)` pairs in preorder of the child.
    pub fn links(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.preorder
            .iter()
            .filter_map(|&c| self.parent[c.index()].map(|p| (p, c)))
    }
}
