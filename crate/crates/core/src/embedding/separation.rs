use std::collections::BTreeSet;

use super::EmbeddingError;
use crate::cayley::{ColoredGraph, EdgeKind};

/// Cut vertices of the simple graph with `removed` deleted, and its number of components.
fn cut_vertices(adj: &[Vec<usize>], removed: &[usize]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    let mut comps = 0;
    for r in 0..n {
        if disc[r] != UNSEEN || removed.contains(&r) {
            continue;
        }
        comps += 1;
        disc[r] = time;
        low[r] = time;
        time += 1;
        let mut root_children = 0;
        let mut stack = vec![(r, UNSEEN, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let w = adj[v][top.2];
                top.2 += 1;
                if w == parent || removed.contains(&w) {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == r {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if u != r && low[v] >= disc[u] {
                        is_cut[u] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[r] = true;
        }
    }
    ((0..n).filter(|&v| is_cut[v]).collect(), comps)
}

/// Connected without cut vertices.
pub fn is_two_connected(g: &ColoredGraph) -> bool {
    let (cuts, comps) = cut_vertices(&g.simple_adjacency(), &[]);
    comps <= 1 && cuts.is_empty()
}

/// Every vertex pair `{x, y}` with `x < y` whose removal disconnects the graph.
pub fn two_separators(g: &ColoredGraph) -> Result<Vec<(usize, usize)>, EmbeddingError> {
    let adj = g.simple_adjacency();
    let (cuts, comps) = cut_vertices(&adj, &[]);
    if comps > 1 || !cuts.is_empty() {
        return Err(EmbeddingError::NotTwoConnected);
    }
    let mut out = Vec::new();
    for x in 0..g.vertex_count() {
        for y in cut_vertices(&adj, &[x]).0 {
            if y > x {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Whether every 2-separator is a pair of adjacent vertices.
pub fn well_separated(g: &ColoredGraph) -> Result<bool, EmbeddingError> {
    let adj = g.simple_adjacency();
    Ok(two_separators(g)?.iter().all(|&(x, y)| adj[x].binary_search(&y).is_ok()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HingeFailure {
    HalfLoop(usize),
    Loop(usize),
    /// The edge is a bridge: its endpoints lie in different 2-blocks.
    Bridge(usize),
    /// Removing both endpoints leaves the graph connected.
    NotSeparating(usize),
}

fn connected_without(g: &ColoredGraph, removed: &[usize], skip_edge: Option<usize>, from: usize, to: Option<usize>) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    seen[from] = true;
    let mut stack = vec![from];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &d in g.darts_at(v) {
            if Some(d / 2) == skip_edge {
                continue;
            }
            let w = g.far_end(d);
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    match to {
        Some(t) => seen[t],
        None => reached + removed.len() == n,
    }
}

/// Edges with a colour in `colors` that do not separate the graph the way a hinge must.
pub fn hinge_report(g: &ColoredGraph, colors: &BTreeSet<usize>) -> Vec<HingeFailure> {
    let mut out = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if !colors.contains(&e.color) {
            continue;
        }
        if e.kind == EdgeKind::HalfLoop {
            out.push(HingeFailure::HalfLoop(i));
        } else if e.tail == e.head {
            out.push(HingeFailure::Loop(i));
        } else if !connected_without(g, &[], Some(i), e.tail, Some(e.head)) {
            out.push(HingeFailure::Bridge(i));
        } else {
            let rest = (0..g.vertex_count()).find(|v| *v != e.tail && *v != e.head);
            if rest.is_none_or(|r| connected_without(g, &[e.tail, e.head], None, r, None)) {
                out.push(HingeFailure::NotSeparating(i));
            }
        }
    }
    out
}

/// True when every edge coloured from `colors` separates the blocks it is incident with.
pub fn hinge_separation(g: &ColoredGraph, colors: &BTreeSet<usize>) -> bool {
    hinge_report(g, colors).is_empty()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::cayley::Edge;

    /// Two triangles glued along the `b` edge 0–1.
    pub fn glued_triangles() -> ColoredGraph {
        let e = |color, tail, head| Edge { color, kind: EdgeKind::Involution, tail, head };
        ColoredGraph::new(4, vec!["a".into(), "b".into()], vec![e(1, 0, 1), e(0, 1, 2), e(0, 2, 0), e(0, 0, 3), e(0, 3, 1)])
    }

    #[test]
    fn separators() {
        let cube = cayley("< a, b | a^4, b^2, a b a^-1 b >");
        assert_eq!(two_separators(&cube).unwrap(), vec![]);
        assert!(well_separated(&cube).unwrap());
        assert_eq!(two_separators(&glued_triangles()).unwrap(), vec![(0, 1)]);
        assert!(well_separated(&glued_triangles()).unwrap());
        let square = plain(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(two_separators(&square).unwrap(), vec![(0, 2), (1, 3)]);
        assert!(!well_separated(&square).unwrap());
        let path = plain(3, &[(0, 1), (1, 2)]);
        assert_eq!(two_separators(&path), Err(EmbeddingError::NotTwoConnected));
    }

    #[test]
    fn hinges() {
        assert!(hinge_separation(&glued_triangles(), &BTreeSet::from([1])));
        assert!(!hinge_separation(&glued_triangles(), &BTreeSet::from([0])));
        let cube = cayley("< a, b | a^4, b^2, a b a^-1 b >");
        assert!(!hinge_separation(&cube, &BTreeSet::from([1])));
        // squares 0123 and 4567 joined by one b edge 0–4
        let e = |color, tail, head| Edge { color, kind: EdgeKind::Involution, tail, head };
        let mut edges: Vec<Edge> = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)].iter().map(|&(a, b)| e(0, a, b)).collect();
        edges.push(e(1, 0, 4));
        let bridged = ColoredGraph::new(8, vec!["a".into(), "b".into()], edges);
        assert_eq!(hinge_report(&bridged, &BTreeSet::from([1])), vec![HingeFailure::Bridge(8)]);
        let trivial = cayley("< a, b | a^2, b^3, a b^-1 >");
        assert!(!hinge_separation(&trivial, &BTreeSet::from([0])));
    }
}
