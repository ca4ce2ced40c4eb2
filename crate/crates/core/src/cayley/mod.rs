//! Finite Cayley graphs by coset enumeration over the trivial subgroup.
//!
//! Involution generators (those with an explicit `s²` relator) give one
//! undirected edge per pair `{g, gs}` instead of two opposite arcs.

mod graph;
mod io;
mod todd_coxeter;

use thiserror::Error;

use crate::presentation::{involution_set, Presentation};
use crate::registry::{Named, Registry};

pub use graph::{ball, ColoredGraph, Edge, EdgeKind};
pub use io::{read_dot, write_dot, write_graphml, GraphFormatError};
pub use todd_coxeter::{Felsch, Hlt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    Incomplete,
}

/// Action of the generators on cosets. Column `2g` is `g`, column `2g+1` is `g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    rows: Vec<Vec<Option<usize>>>,
    pub status: TableStatus,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// `coset · g^{±1}`, if defined.
    pub fn act(&self, coset: usize, gen: usize, inverse: bool) -> Option<usize> {
        self.rows[coset][2 * gen + inverse as usize]
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("coset enumeration exceeded its budget ({} cosets in the partial table)", .0.len())]
    BudgetExceeded(Box<CosetTable>),
    #[error("coset table is incomplete")]
    IncompleteTable,
}

/// A coset enumeration procedure. Complete tables agree across strategies
/// up to renumbering; rows are numbered breadth first from the identity.
pub trait CosetStrategy: Named + Send + Sync {
    fn enumerate(&self, p: &Presentation, max_cosets: usize) -> Result<CosetTable, CosetError>;
}

pub fn strategies() -> Registry<dyn CosetStrategy> {
    let mut r: Registry<dyn CosetStrategy> = Registry::new("coset strategy");
    r.register(Box::new(Hlt)).register(Box::new(Felsch));
    r
}

/// Coset enumeration with the default strategy.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<CosetTable, CosetError> {
    Hlt.enumerate(p, max_cosets)
}

/// Vertices are cosets; `s ∉ I` gives arcs `g → gs`, `s ∈ I` one undirected
/// edge per pair, or a half-loop where `gs = g`.
pub fn build_cayley_graph(p: &Presentation, t: &CosetTable) -> Result<ColoredGraph, CosetError> {
    if !t.is_complete() {
        return Err(CosetError::IncompleteTable);
    }
    let inv = involution_set(p);
    let mut edges = Vec::new();
    for s in 0..p.rank() {
        for g in 0..t.len() {
            let h = t.act(g, s, false).expect("complete table");
            if !inv.contains(s) {
                edges.push(Edge { color: s, kind: EdgeKind::Directed, tail: g, head: h });
            } else if h == g {
                edges.push(Edge { color: s, kind: EdgeKind::HalfLoop, tail: g, head: g });
            } else if g < h {
                edges.push(Edge { color: s, kind: EdgeKind::Involution, tail: g, head: h });
            }
        }
    }
    Ok(ColoredGraph::new(t.len(), p.generators().to_vec(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn count(s: &str) -> usize {
        coset_enumerate(&parse_presentation(s).unwrap(), 10_000).unwrap().len()
    }

    #[test]
    fn anchors() {
        assert_eq!(count("< a, b | a^2, b^3, a b^-1 >"), 1);
        assert_eq!(count("< a, b | a^4, b^2, a b a^-1 b >"), 8);
        assert_eq!(count("< a | a^5 >"), 5);
        assert_eq!(count("< a | a^7 >"), 7);
    }

    #[test]
    fn strategies_agree() {
        let groups = [
            ("< a, b | a^2, b^3, a b a b a b a b a b >", 60),
            ("< a, b | a^3, b^3, a b a b >", 12),
            ("< a, b | a^2, b^2, a b a b a b >", 6),
            ("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w, n e, e s >", 0),
            ("< a, b | a^8, b^2, a b a b >", 16),
            ("< a, b, c | a^2, b^2, c^2, a b a b, b c b c b c, a c a c a c >", 24),
        ];
        for (s, want) in groups {
            let p = parse_presentation(s).unwrap();
            let reg = strategies();
            let sizes: Vec<usize> = reg.iter().map(|st| st.enumerate(&p, 5000).unwrap().len()).collect();
            assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{s}: {sizes:?}");
            if want > 0 {
                assert_eq!(sizes[0], want, "{s}");
            }
        }
    }

    #[test]
    fn budget_exceeded_on_infinite() {
        let p = parse_presentation("< a, b | a b a^-1 b^-1 >").unwrap();
        for st in strategies().iter() {
            match st.enumerate(&p, 200) {
                Err(CosetError::BudgetExceeded(partial)) => assert!(!partial.is_complete()),
                other => panic!("{}: {other:?}", st.name()),
            }
        }
    }

    #[test]
    fn prism_graph() {
        let p = parse_presentation("< a, b | a^4, b^2, a b a^-1 b >").unwrap();
        let g = build_cayley_graph(&p, &coset_enumerate(&p, 100).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edges().iter().filter(|e| e.kind == EdgeKind::Involution).count(), 4);
        assert!((0..8).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn trivial_group_has_loops() {
        let p = parse_presentation("< a, b | a^2, b^3, a b^-1 >").unwrap();
        let g = build_cayley_graph(&p, &coset_enumerate(&p, 100).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges().len(), 2);
        assert!(g.edges().iter().any(|e| e.kind == EdgeKind::HalfLoop));
    }
}
