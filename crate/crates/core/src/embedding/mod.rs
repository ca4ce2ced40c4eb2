//! Embeddings of finite coloured graphs: planarity with rotation systems,
//! spin consistency, crossing of walks, 2-separators, and extraction of a
//! special presentation from a consistent planar embedding.

mod consistency;
mod cycles;
mod planarity;
mod separation;
mod walks;

use std::collections::BTreeMap;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::cayley::{ColoredGraph, EdgeKind};

pub use consistency::{check_consistent, color_isomorphic, extract_special_presentation, SpinReport};
pub use cycles::{cycle_space_rank, relator_span_rank};
pub use planarity::{
    planarity_test, planarity_testers, DmpTester, ExhaustiveTester, KuratowskiKind, KuratowskiWitness, Planarity,
    PlanarityTester,
};
pub use separation::{hinge_report, hinge_separation, is_two_connected, two_separators, well_separated, HingeFailure};
pub use walks::{cycle_crossings, walk_crossing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("embedding is not planar")]
    NotPlanar,
    #[error("embedding is not consistent: {0}")]
    NotConsistent(String),
    #[error("graph too large for this tester: {0}")]
    TooLarge(String),
    #[error("extracted presentation failed verification: {0}")]
    Verification(String),
    #[error("rotation format: {0}")]
    Format(String),
}

/// Clockwise cyclic order of darts at every vertex (darts as in [`ColoredGraph`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub orders: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Checks that every dart appears exactly once, at its own vertex.
    pub fn validate(&self, g: &ColoredGraph) -> Result<(), EmbeddingError> {
        if self.orders.len() != g.vertex_count() {
            return Err(EmbeddingError::InvalidRotation(format!(
                "{} vertex orders for {} vertices",
                self.orders.len(),
                g.vertex_count()
            )));
        }
        for (v, order) in self.orders.iter().enumerate() {
            let mut a = order.clone();
            a.sort_unstable();
            let mut b = g.darts_at(v).to_vec();
            b.sort_unstable();
            if a != b {
                return Err(EmbeddingError::InvalidRotation(format!("darts at vertex {v} do not match the graph")));
            }
        }
        Ok(())
    }

    /// Successor map: `next[d]` is the dart after `d` around its vertex.
    pub fn successor(&self, dart_slots: usize) -> Vec<usize> {
        let mut next = vec![usize::MAX; dart_slots];
        for order in &self.orders {
            for (i, &d) in order.iter().enumerate() {
                next[d] = order[(i + 1) % order.len()];
            }
        }
        next
    }

    /// The same rotation with every vertex order reversed.
    pub fn reflected(&self) -> RotationSystem {
        RotationSystem { orders: self.orders.iter().map(|o| o.iter().rev().copied().collect()).collect() }
    }

    /// Without the darts of half-loops.
    pub fn without_half_loops(&self, g: &ColoredGraph) -> RotationSystem {
        RotationSystem {
            orders: self
                .orders
                .iter()
                .map(|o| o.iter().copied().filter(|&d| g.edge_of(d).kind != EdgeKind::HalfLoop).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (v, order) in self.orders.iter().enumerate() {
            m.insert(v.to_string(), Value::Array(order.iter().map(|&d| Value::String(dart_name(d))).collect()));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, g: &ColoredGraph) -> Result<RotationSystem, EmbeddingError> {
        let obj = v.as_object().ok_or_else(|| EmbeddingError::Format("expected an object".into()))?;
        let mut orders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, list) in obj {
            let vertex: usize = k.parse().map_err(|_| EmbeddingError::Format(format!("bad vertex id `{k}`")))?;
            let darts = list
                .as_array()
                .ok_or_else(|| EmbeddingError::Format(format!("vertex {k}: expected a list")))?
                .iter()
                .map(|d| d.as_str().and_then(parse_dart).ok_or_else(|| EmbeddingError::Format(format!("bad dart {d}"))))
                .collect::<Result<Vec<_>, _>>()?;
            orders.insert(vertex, darts);
        }
        let r = RotationSystem { orders: (0..g.vertex_count()).map(|v| orders.remove(&v).unwrap_or_default()).collect() };
        r.validate(g)?;
        Ok(r)
    }
}

/// `"<edge>t"` for the tail end, `"<edge>h"` for the head end.
pub fn dart_name(d: usize) -> String {
    format!("{}{}", d / 2, if d.is_multiple_of(2) { "t" } else { "h" })
}

pub fn parse_dart(s: &str) -> Option<usize> {
    let (num, end) = s.split_at(s.len().checked_sub(1)?);
    let e: usize = num.parse().ok()?;
    match end {
        "t" => Some(2 * e),
        "h" => Some(2 * e + 1),
        _ => None,
    }
}

/// Face boundaries as dart cycles: the face after `d` continues with the
/// dart following `mate(d)` around the far vertex. Half-loops are skipped.
pub fn trace_faces(g: &ColoredGraph, rot: &RotationSystem) -> Vec<Vec<usize>> {
    let rot = rot.without_half_loops(g);
    let slots = 2 * g.edges().len();
    let next = rot.successor(slots);
    let mut seen = vec![false; slots];
    let mut faces = Vec::new();
    for order in &rot.orders {
        for &start in order {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = next[g.mate(d)];
            }
            faces.push(face);
        }
    }
    faces
}

/// `Σ (V − E + F − 2)` over connected components, ignoring half-loops: zero
/// exactly when the rotation system is a sphere embedding of every component.
pub fn euler_defect(g: &ColoredGraph, rot: &RotationSystem) -> i64 {
    let faces = trace_faces(g, rot);
    let edges = g.edges().iter().filter(|e| e.kind != EdgeKind::HalfLoop).count() as i64;
    let comps = components(g);
    let isolated = (0..g.vertex_count()).filter(|&v| g.darts_at(v).iter().all(|&d| g.edge_of(d).kind == EdgeKind::HalfLoop)).count() as i64;
    // an isolated vertex bounds one face that tracing does not see
    g.vertex_count() as i64 - edges + faces.len() as i64 + isolated - 2 * comps as i64
}

pub fn is_planar_rotation(g: &ColoredGraph, rot: &RotationSystem) -> bool {
    rot.validate(g).is_ok() && euler_defect(g, rot) == 0
}

pub(crate) fn components(g: &ColoredGraph) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::cayley::{build_cayley_graph, coset_enumerate, ColoredGraph, Edge, EdgeKind};
    use crate::presentation::parse_presentation;

    pub fn cayley(s: &str) -> ColoredGraph {
        let p = parse_presentation(s).unwrap();
        build_cayley_graph(&p, &coset_enumerate(&p, 10_000).unwrap()).unwrap()
    }

    /// Undirected graph with every edge an involution of colour 0.
    pub fn plain(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        let edges = edges.iter().map(|&(a, b)| Edge { color: 0, kind: EdgeKind::Involution, tail: a, head: b }).collect();
        ColoredGraph::new(n, vec!["x".into()], edges)
    }

    pub fn complete(n: usize) -> ColoredGraph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        plain(n, &e)
    }

    pub fn k33() -> ColoredGraph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        plain(6, &e)
    }

    pub fn grid(w: usize, h: usize) -> ColoredGraph {
        let id = |x: usize, y: usize| y * w + x;
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    e.push((id(x, y), id(x + 1, y)));
                }
                if y + 1 < h {
                    e.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        plain(w * h, &e)
    }
}
