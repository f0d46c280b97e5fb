//! Tab-separated edge-list and hierarchy formats.
//!
//! Edge list: `source<TAB>target[<TAB>weight]` per line. Hierarchy:
//! `parent<TAB>child` per line. Both accept blank lines and lines starting
//! with `#` as comments, and use LF line endings.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{validate_name, Graph, GraphBuilder, Hierarchy, VertexId, VertexTable};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn field(line: usize, raw: &str) -> Result<&str> {
    validate_name(raw).map_err(|m| Error::parse(line, m))?;
    Ok(raw)
}

/// Parses an edge list. Repeated ordered pairs have their weights summed;
/// a missing weight means 1.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut builder = GraphBuilder::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                line,
                format!("expected 2 or 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let source = field(line, fields[0])?;
        let target = field(line, fields[1])?;
        let weight = match fields.get(2) {
            None => 1.0,
            Some(raw) => raw
                .parse::<f64>()
                .map_err(|e| Error::parse(line, format!("bad weight {raw:?}: {e}")))?,
        };
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::parse(line, format!("weight {weight} is not positive")));
        }
        if source == target {
            return Err(Error::parse(line, format!("self-loop at `{source}`")));
        }
        builder
            .add_edge(source, target, weight)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(builder.build())
}

/// Parses a hierarchy whose vertex universe is the graph's vertices plus any
/// container vertices named only in the tree. The returned hierarchy's table
/// extends `graph`'s table, so graph ids stay valid.
pub fn load_hierarchy(text: &str, graph: &Graph) -> Result<Hierarchy> {
    let mut table: VertexTable = (**graph.vertices()).clone();
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected `parent<TAB>child`, found {} fields", fields.len()),
            ));
        }
        let p = table.intern(field(line, fields[0])?);
        let c = table.intern(field(line, fields[1])?);
        if p == c {
            return Err(Error::hierarchy(
                table.name(c),
                format!("line {line}: vertex is its own parent (cycle)"),
            ));
        }
        if let Some(&old) = parent.get(&c) {
            if old != p {
                return Err(Error::hierarchy(
                    table.name(c),
                    format!(
                        "line {line}: two parents `{}` and `{}`",
                        table.name(old),
                        table.name(p)
                    ),
                ));
            }
        }
        parent.insert(c, p);
    }

    // Every graph vertex must appear somewhere in the tree.
    let mut mentioned = vec![false; table.len()];
    for (&c, &p) in &parent {
        mentioned[c.index()] = true;
        mentioned[p.index()] = true;
    }
    if let Some(missing) = graph
        .vertices()
        .ids()
        .filter(|v| !mentioned[v.index()])
        .map(|v| table.name(v))
        .min()
    {
        return Err(Error::hierarchy(missing, "graph vertex missing from hierarchy"));
    }

    let links = table.ids().map(|v| parent.get(&v).copied()).collect();
    Hierarchy::from_parents(Arc::new(table), links)
}

/// Loads a graph and its hierarchy and rebinds the graph onto the combined
/// vertex table, so both share one universe.
pub fn load_dataset(graph_text: &str, hierarchy_text: &str) -> Result<(Graph, Hierarchy)> {
    let graph = load_graph(graph_text)?;
    let hierarchy = load_hierarchy(hierarchy_text, &graph)?;
    let graph = graph.with_vertex_table(hierarchy.vertices().clone())?;
    Ok((graph, hierarchy))
}

/// Serializes edges sorted by `(source name, target name)`. Weights use the
/// shortest representation that parses back to the same value.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut rows: Vec<(&str, &str, f64)> = graph
        .edges()
        .map(|(u, v, w)| (graph.name(u), graph.name(v), w))
        .collect();
    rows.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut out = String::new();
    for (u, v, w) in rows {
        writeln!(out, "{u}\t{v}\t{w}").unwrap();
    }
    out
}

/// Serializes `parent<TAB>child` lines in depth-first preorder.
pub fn write_hierarchy(h: &Hierarchy) -> String {
    let mut out = String::new();
    for (p, c) in h.links() {
        writeln!(out, "{}\t{}", h.name(p), h.name(c)).unwrap();
    }
    out
}
