//! The three uniresolution conversions. Each maps a graph and its hierarchy
//! to an output network whose edges touch only leaves of an output
//! hierarchy, and records which input edges every output edge represents.

mod disinherit;
mod inherit;
mod kron_sampling;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Result;
use crate::graph::{Edge, Graph, Hierarchy, VertexTable};

pub use disinherit::disinherit;
pub use inherit::inherit;
pub use kron_sampling::{
    edge_order, kron_sampling, probability_weights, GuardMode, KronSamplingOptions,
    ProbabilityNet, SortDirection,
};

/// Map from output edges back to input edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Provenance {
    /// Input edges represented by each output edge. Output ids index the
    /// result network's table, input ids the input table.
    pub assignments: BTreeMap<Edge, Vec<Edge>>,
    /// Input edges without any output representative (collapsed self-loops,
    /// or an empty leaf candidate set).
    pub dropped: Vec<Edge>,
}

impl Provenance {
    /// Number of output edges each input edge is listed under.
    pub fn input_multiplicity(&self) -> BTreeMap<Edge, usize> {
        let mut out = BTreeMap::new();
        for inputs in self.assignments.values() {
            for &e in inputs {
                *out.entry(e).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Output network `R`, output hierarchy `M`, and the edge provenance.
#[derive(Debug, Clone)]
pub struct ResolutionResult {
    pub network: Graph,
    pub hierarchy: Hierarchy,
    pub provenance: Provenance,
    pub input_vertices: Arc<VertexTable>,
}

impl ResolutionResult {
    /// True when no output edge touches a vertex with children in the
    /// output hierarchy.
    pub fn is_uniresolution(&self) -> bool {
        self.network
            .edges()
            .all(|(u, v, _)| self.hierarchy.is_leaf(u) && self.hierarchy.is_leaf(v))
    }

    /// `output_source<TAB>output_target<TAB>input_source<TAB>input_target`
    /// lines sorted by name. Dropped input edges have empty output fields.
    pub fn write_provenance(&self) -> String {
        let out_name = |v| self.network.name(v);
        let in_name = |v| self.input_vertices.name(v);
        let mut rows: Vec<[&str; 4]> = Vec::new();
        for (&(s, t), inputs) in &self.provenance.assignments {
            for &(u, v) in inputs {
                rows.push([out_name(s), out_name(t), in_name(u), in_name(v)]);
            }
        }
        for &(u, v) in &self.provenance.dropped {
            rows.push(["", "", in_name(u), in_name(v)]);
        }
        rows.sort_unstable();
        let mut text = String::new();
        for r in rows {
            writeln!(text, "{}\t{}\t{}\t{}", r[0], r[1], r[2], r[3]).unwrap();
        }
        text
    }
}

/// Selector for the three conversions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Inherit,
    Disinherit,
    KronSampling,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Inherit => "inherit",
            Method::Disinherit => "disinherit",
            Method::KronSampling => "kron",
        }
    }

    pub fn run(self, g: &Graph, h: &Hierarchy, opts: &KronSamplingOptions) -> Result<ResolutionResult> {
        match self {
            Method::Inherit => inherit(g, h),
            Method::Disinherit => disinherit(g, h),
            Method::KronSampling => kron_sampling(g, h, opts),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "inherit" => Ok(Method::Inherit),
            "disinherit" => Ok(Method::Disinherit),
            "kron" | "kron-sampling" => Ok(Method::KronSampling),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}
