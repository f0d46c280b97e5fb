//! Winner-take-all placement of each input edge on one leaf pair.
//!
//! Candidates are weighted by effective resistance in the Kron reduction of
//! the graph onto its connectivity-bearing leaves, times the report counts
//! produced by [`inherit`]. Edges are visited deepest first, and an edge
//! whose leaf sets are already connected in the output is skipped.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use super::{inherit, Provenance, ResolutionResult};
use crate::error::Result;
use crate::graph::classify::ensure_aligned;
use crate::graph::{classify, graph_from_weights, Edge, Graph, Hierarchy, VertexId};
use crate::spectral::{kron_reduce, ResistanceCalculator, UndirectedGraph};

/// Order in which input edges are visited, by the product of endpoint depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortDirection {
    /// Deepest pairs first.
    #[default]
    Descending,
    Ascending,
}

/// Which existing output edges block a new input edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GuardMode {
    /// Only an output edge from the source's leaves to the target's leaves.
    #[default]
    Directed,
    /// An output edge between the two leaf sets in either direction.
    Any,
}

impl FromStr for SortDirection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "desc" | "descending" => Ok(Self::Descending),
            "asc" | "ascending" => Ok(Self::Ascending),
            _ => Err(format!("unknown sort direction `{s}`")),
        }
    }
}

impl FromStr for GuardMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "directed" => Ok(Self::Directed),
            "any" => Ok(Self::Any),
            _ => Err(format!("unknown guard mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KronSamplingOptions {
    pub sort: SortDirection,
    pub guard: GuardMode,
}

/// Normalized sampling mass over candidate leaf pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityNet {
    weights: BTreeMap<Edge, f64>,
    total_mass: f64,
}

impl ProbabilityNet {
    pub fn get(&self, s: VertexId, t: VertexId) -> f64 {
        self.weights.get(&(s, t)).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.weights.iter().map(|(&e, &p)| (e, p))
    }

    /// Sum of `resistance * count` before normalization.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// `p(s,t) = R(s,t) c(s,t) / sum R c` over the edges of `inherit_counts`.
///
/// Pairs with infinite or missing resistance get zero mass. When every mass
/// is zero all probabilities are zero.
pub fn probability_weights(resistances: &BTreeMap<Edge, f64>, inherit_counts: &Graph) -> ProbabilityNet {
    let masses: Vec<(Edge, f64)> = inherit_counts
        .edges()
        .map(|(s, t, c)| {
            let m = match resistances.get(&(s, t)) {
                Some(&r) if r.is_finite() => r * c,
                _ => 0.0,
            };
            ((s, t), m)
        })
        .collect();
    let total_mass: f64 = masses.iter().map(|(_, m)| m).sum();
    let weights = masses
        .into_iter()
        .map(|(e, m)| (e, if total_mass > 0.0 { m / total_mass } else { 0.0 }))
        .collect();
    ProbabilityNet {
        weights,
        total_mass,
    }
}

/// Edges ordered by `depth(u) * depth(v)` (root depth 1), ties broken by
/// source then target name.
pub fn edge_order(g: &Graph, h: &Hierarchy, direction: SortDirection) -> Result<Vec<Edge>> {
    ensure_aligned(g, h)?;
    let mut edges: Vec<(u64, Edge)> = g
        .edges()
        .map(|(u, v, _)| (h.depth_of(u) as u64 * h.depth_of(v) as u64, (u, v)))
        .collect();
    edges.sort_by(|(ka, (ua, va)), (kb, (ub, vb))| {
        let by_key = match direction {
            SortDirection::Descending => kb.cmp(ka),
            SortDirection::Ascending => ka.cmp(kb),
        };
        by_key.then_with(|| (g.name(*ua), g.name(*va)).cmp(&(g.name(*ub), g.name(*vb))))
    });
    Ok(edges.into_iter().map(|(_, e)| e).collect())
}

/// Places each input edge on at most one leaf pair. Output weights are 1
/// and the hierarchy is unchanged.
pub fn kron_sampling(g: &Graph, h: &Hierarchy, opts: &KronSamplingOptions) -> Result<ResolutionResult> {
    ensure_aligned(g, h)?;
    let classes = classify(g, h)?;
    let reduced = kron_reduce(&UndirectedGraph::symmetrize(g), &classes.leaves_with_connectivity)?;
    let calc = ResistanceCalculator::new(&reduced)?;
    let counts = inherit(g, h)?.network;

    let mut resistances = BTreeMap::new();
    for (s, t, _) in counts.edges() {
        let r = if reduced.contains(s) && reduced.contains(t) {
            calc.resistance(s, t)?
        } else {
            f64::INFINITY
        };
        resistances.insert((s, t), r);
    }
    let probability = probability_weights(&resistances, &counts);
    let lookup: HashMap<Edge, (f64, f64)> = counts
        .edges()
        .map(|(s, t, c)| ((s, t), (probability.get(s, t), c)))
        .collect();

    let n = g.vertex_count();
    let mut out_adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut in_target = vec![false; n];
    let mut in_source = vec![false; n];
    let mut provenance = Provenance::default();

    let name_order = |a: Edge, b: Edge| (g.name(a.0), g.name(a.1)).cmp(&(g.name(b.0), g.name(b.1)));

    for (u, v) in edge_order(g, h, opts.sort)? {
        let sources = h.leaves_of(u);
        let targets = h.leaves_of(v);
        for &t in targets {
            in_target[t.index()] = true;
        }
        for &s in sources {
            in_source[s.index()] = true;
        }

        let mut blocker: Option<Edge> = None;
        let mut consider = |e: Edge| {
            if blocker.is_none_or(|b| name_order(e, b) == Ordering::Less) {
                blocker = Some(e);
            }
        };
        for &x in sources {
            for &y in &out_adj[x.index()] {
                if in_target[y.index()] {
                    consider((x, y));
                }
            }
        }
        if opts.guard == GuardMode::Any {
            for &x in targets {
                for &y in &out_adj[x.index()] {
                    if in_source[y.index()] {
                        consider((x, y));
                    }
                }
            }
        }

        for &t in targets {
            in_target[t.index()] = false;
        }
        for &s in sources {
            in_source[s.index()] = false;
        }

        if let Some(b) = blocker {
            provenance.assignments.get_mut(&b).expect("blocker is an output edge").push((u, v));
            continue;
        }

        // Highest probability, then highest count, then smallest names.
        let mut best: Option<(Edge, (f64, f64))> = None;
        for &s in sources {
            for &t in targets {
                if s == t {
                    continue;
                }
                let score = lookup.get(&(s, t)).copied().unwrap_or((0.0, 0.0));
                let better = match best {
                    None => true,
                    Some((e, bs)) => {
                        let cmp = score
                            .0
                            .total_cmp(&bs.0)
                            .then(score.1.total_cmp(&bs.1))
                            .then_with(|| name_order(e, (s, t)));
                        cmp == Ordering::Greater
                    }
                };
                if better {
                    best = Some(((s, t), score));
                }
            }
        }

        match best {
            Some(((s, t), _)) => {
                out_adj[s.index()].push(t);
                provenance.assignments.insert((s, t), vec![(u, v)]);
            }
            None => provenance.dropped.push((u, v)),
        }
    }

    let weights = provenance.assignments.keys().map(|&e| (e, 1.0)).collect();
    Ok(ResolutionResult {
        network: graph_from_weights(g.vertices().clone(), weights),
        hierarchy: h.clone(),
        provenance,
        input_vertices: g.vertices().clone(),
    })
}
