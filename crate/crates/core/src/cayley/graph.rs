use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `g → gs` for a generator that is not an involution.
    Directed,
    /// The single edge `{g, gs}` standing for a pair of arcs.
    Involution,
    /// `gs = g` for an involution `s`; one edge-end only.
    HalfLoop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub color: usize,
    pub kind: EdgeKind,
    pub tail: usize,
    pub head: usize,
}

/// An edge-coloured multigraph. Dart `2e` is the tail end of edge `e` and
/// `2e + 1` its head end; a half-loop has only dart `2e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    colors: Vec<String>,
    edges: Vec<Edge>,
    darts: Vec<Vec<usize>>,
}

impl ColoredGraph {
    pub fn new(n: usize, colors: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut darts = vec![Vec::new(); n];
        for (e, edge) in edges.iter().enumerate() {
            darts[edge.tail].push(2 * e);
            if edge.kind != EdgeKind::HalfLoop {
                darts[edge.head].push(2 * e + 1);
            }
        }
        ColoredGraph { n, colors, edges, darts }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    /// Darts at `v` in edge order.
    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.darts[v]
    }

    pub fn dart_count(&self) -> usize {
        self.darts.iter().map(|d| d.len()).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts[v].len()
    }

    pub fn edge_of(&self, dart: usize) -> &Edge {
        &self.edges[dart / 2]
    }

    pub fn dart_vertex(&self, dart: usize) -> usize {
        let e = &self.edges[dart / 2];
        if dart.is_multiple_of(2) {
            e.tail
        } else {
            e.head
        }
    }

    /// The other end of the dart's edge; a half-loop's dart is its own mate.
    pub fn mate(&self, dart: usize) -> usize {
        if self.edges[dart / 2].kind == EdgeKind::HalfLoop {
            dart
        } else {
            dart ^ 1
        }
    }

    /// Vertex at the other end of the dart.
    pub fn far_end(&self, dart: usize) -> usize {
        self.dart_vertex(self.mate(dart))
    }

    /// Label of a dart as seen from its vertex: the generator, inverted for
    /// the head end of a directed edge.
    pub fn dart_label(&self, dart: usize) -> (usize, bool) {
        let e = &self.edges[dart / 2];
        (e.color, e.kind == EdgeKind::Directed && dart % 2 == 1)
    }

    /// Neighbours of `v` along non-loop edges, with repetition for parallel edges.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.darts[v].iter().map(move |&d| self.far_end(d)).filter(move |&w| w != v)
    }

    /// Sorted, de-duplicated neighbour lists without loops.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|v| {
                let mut a: Vec<usize> = self.neighbors(v).collect();
                a.sort_unstable();
                a.dedup();
                a
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        distances(self, 0).iter().all(|d| d.is_some())
    }

    /// Induced subgraph on `keep` (in the given order, which becomes the new numbering).
    pub fn induced(&self, keep: &[usize]) -> ColoredGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.tail] != usize::MAX && index[e.head] != usize::MAX)
            .map(|e| Edge { tail: index[e.tail], head: index[e.head], ..*e })
            .collect();
        ColoredGraph::new(keep.len(), self.colors.clone(), edges)
    }

    /// Vertex word of the closed walk spelled by `word` from `start`, following
    /// labels; `None` if some step has no matching dart.
    pub fn follow(&self, start: usize, word: &[(usize, bool)]) -> Option<Vec<usize>> {
        let mut v = start;
        let mut out = vec![v];
        for &(g, inv) in word {
            let d = self.step(v, g, inv)?;
            v = self.far_end(d);
            out.push(v);
        }
        Some(out)
    }

    /// The dart at `v` traversed by letter `g^{±1}`.
    pub fn step(&self, v: usize, g: usize, inverse: bool) -> Option<usize> {
        self.darts[v].iter().copied().find(|&d| {
            let e = &self.edges[d / 2];
            e.color == g
                && match e.kind {
                    EdgeKind::Directed => (d % 2 == 1) == inverse,
                    _ => true,
                }
        })
    }
}

/// Undirected hop distances from `v`.
pub(crate) fn distances(g: &ColoredGraph, v: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[v] = Some(0);
    let mut q = VecDeque::from([v]);
    while let Some(x) = q.pop_front() {
        let dx = dist[x].unwrap();
        for y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

/// Induced subgraph on the vertices within undirected distance `r` of `v`,
/// numbered in breadth-first order.
pub fn ball(g: &ColoredGraph, v: usize, r: usize) -> ColoredGraph {
    let dist = distances(g, v);
    let mut keep: Vec<usize> = (0..g.vertex_count()).filter(|&x| dist[x].is_some_and(|d| d <= r)).collect();
    keep.sort_by_key(|&x| (dist[x], x));
    g.induced(&keep)
}
