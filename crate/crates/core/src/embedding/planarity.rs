use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{euler_defect, EmbeddingError, RotationSystem};
use crate::cayley::{ColoredGraph, EdgeKind};
use crate::enumeration::canonical::next_permutation;
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3`, as edge indices of the tested graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<usize>,
}

impl KuratowskiWitness {
    /// Smooths degree-2 vertices and checks the result is `K5` or `K3,3`.
    pub fn verify(&self, g: &ColoredGraph) -> bool {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&e| {
                let x = &g.edges()[e];
                (x.tail, x.head)
            })
            .collect();
        classify(g.vertex_count(), &pairs) == Some(self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(RotationSystem),
    /// Testers that cannot produce a witness leave it out.
    NonPlanar(Option<KuratowskiWitness>),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

pub trait PlanarityTester: Named + Send + Sync {
    fn test(&self, g: &ColoredGraph) -> Result<Planarity, EmbeddingError>;
}

pub fn planarity_testers() -> Registry<dyn PlanarityTester> {
    let mut r: Registry<dyn PlanarityTester> = Registry::new("planarity tester");
    r.register(Box::new(DmpTester)).register(Box::new(ExhaustiveTester::default()));
    r
}

/// Planarity with the default tester. Half-loops are ignored for the Euler
/// count; loops and parallel edges never affect planarity.
pub fn planarity_test(g: &ColoredGraph) -> Planarity {
    DmpTester.test(g).expect("path addition handles every graph")
}

/// Path addition (Demoucron, Malgrange, Pertuiset) on each biconnected
/// block of the underlying simple graph.
#[derive(Debug, Clone, Copy, Default)]
pub struct DmpTester;

impl Named for DmpTester {
    fn name(&self) -> &'static str {
        "dmp"
    }
}

impl PlanarityTester for DmpTester {
    fn test(&self, g: &ColoredGraph) -> Result<Planarity, EmbeddingError> {
        let (pairs, first_edge) = simple_pairs(g);
        match simple_embedding(g.vertex_count(), &pairs) {
            Some(nbr_rot) => {
                let rot = lift_rotation(g, &nbr_rot);
                assert_eq!(euler_defect(g, &rot), 0, "path addition produced a non-planar rotation");
                Ok(Planarity::Planar(rot))
            }
            None => {
                let (kind, minimal) = kuratowski(g.vertex_count(), &pairs);
                let edges = minimal.iter().map(|p| first_edge[p]).collect();
                Ok(Planarity::NonPlanar(Some(KuratowskiWitness { kind, edges })))
            }
        }
    }
}

/// Tries every rotation system of the underlying simple graph. Only for
/// small graphs; used to cross-check the path-addition tester.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveTester {
    pub max_rotations: u128,
}

impl Default for ExhaustiveTester {
    fn default() -> Self {
        ExhaustiveTester { max_rotations: 2_000_000 }
    }
}

impl Named for ExhaustiveTester {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
}

impl PlanarityTester for ExhaustiveTester {
    fn test(&self, g: &ColoredGraph) -> Result<Planarity, EmbeddingError> {
        let adj = g.simple_adjacency();
        let mut total: u128 = 1;
        for a in &adj {
            for k in 2..a.len().max(1) {
                total = total.saturating_mul(k as u128);
            }
        }
        if total > self.max_rotations {
            return Err(EmbeddingError::TooLarge(format!("{total} rotation systems")));
        }
        // per vertex, the permutation of its neighbours after the first
        let mut perms: Vec<Vec<usize>> = adj.iter().map(|a| (1..a.len().max(1)).collect()).collect();
        loop {
            let nbr_rot: Vec<Vec<usize>> = adj
                .iter()
                .zip(&perms)
                .map(|(a, p)| if a.is_empty() { Vec::new() } else { std::iter::once(a[0]).chain(p.iter().map(|&i| a[i])).collect() })
                .collect();
            let rot = lift_rotation(g, &nbr_rot);
            if euler_defect(g, &rot) == 0 {
                return Ok(Planarity::Planar(rot));
            }
            let mut v = 0;
            loop {
                if v == perms.len() {
                    return Ok(Planarity::NonPlanar(None));
                }
                if next_permutation(&mut perms[v]) {
                    break;
                }
                perms[v].sort_unstable();
                v += 1;
            }
        }
    }
}

/// Distinct vertex pairs joined by a non-loop edge, and the first edge of each.
fn simple_pairs(g: &ColoredGraph) -> (Vec<(usize, usize)>, BTreeMap<(usize, usize), usize>) {
    let mut first = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail != e.head {
            first.entry((e.tail.min(e.head), e.tail.max(e.head))).or_insert(i);
        }
    }
    (first.keys().copied().collect(), first)
}

/// Turns a neighbour rotation of the simple graph into a dart rotation of
/// `g`. Parallel darts sit together, in edge order at the smaller end and
/// reversed at the larger; loops and half-loops go at the end.
fn lift_rotation(g: &ColoredGraph, nbr_rot: &[Vec<usize>]) -> RotationSystem {
    let orders = (0..g.vertex_count())
        .map(|v| {
            let mut order = Vec::with_capacity(g.degree(v));
            for &w in &nbr_rot[v] {
                let mut ds: Vec<usize> = g.darts_at(v).iter().copied().filter(|&d| g.far_end(d) == w).collect();
                ds.sort_unstable_by_key(|&d| d / 2);
                if v > w {
                    ds.reverse();
                }
                order.extend(ds);
            }
            for &d in g.darts_at(v) {
                let e = g.edge_of(d);
                if e.tail == e.head && (e.kind == EdgeKind::HalfLoop || d % 2 == 0) {
                    order.push(d);
                    if e.kind != EdgeKind::HalfLoop {
                        order.push(d + 1);
                    }
                }
            }
            order
        })
        .collect();
    RotationSystem { orders }
}

/// Neighbour rotation of a planar embedding of the simple graph, or `None`.
pub(crate) fn simple_embedding(n: usize, pairs: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut rot = vec![Vec::new(); n];
    for block in blocks(n, pairs) {
        if block.len() == 1 {
            let (a, b) = pairs[block[0]];
            rot[a].push(b);
            rot[b].push(a);
            continue;
        }
        let edges: Vec<(usize, usize)> = block.iter().map(|&e| pairs[e]).collect();
        for (v, order) in embed_block(&edges)? {
            rot[v].extend(order);
        }
    }
    Some(rot)
}

/// Edge sets of the biconnected components.
fn blocks(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in pairs.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut estack = Vec::new();
    let mut out = Vec::new();
    for r in 0..n {
        if disc[r] != UNSEEN {
            continue;
        }
        disc[r] = time;
        low[r] = time;
        time += 1;
        let mut stack = vec![(r, UNSEEN, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let (w, e) = adj[v][top.2];
                top.2 += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == UNSEEN {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Path addition on one 2-connected simple block with at least a cycle.
fn embed_block(edges: &[(usize, usize)]) -> Option<BTreeMap<usize, Vec<usize>>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut on_v: HashSet<usize> = HashSet::new();
    let mut on_e: HashSet<(usize, usize)> = HashSet::new();

    // initial cycle: the first edge closed by a shortest detour
    let (s, t) = edges[0];
    let detour = bfs_path(&adj, s, t, |x, y| key(x, y) != key(s, t), |_| true)?;
    let mut faces = vec![detour.clone(), detour.iter().rev().copied().collect::<Vec<_>>()];
    for w in detour.windows(2) {
        on_e.insert(key(w[0], w[1]));
    }
    on_e.insert(key(s, t));
    on_v.extend(detour.iter().copied());

    while on_e.len() < edges.len() {
        let mut fragments: Vec<(Vec<usize>, Option<HashSet<usize>>)> = Vec::new();
        for &(a, b) in edges {
            if !on_e.contains(&key(a, b)) && on_v.contains(&a) && on_v.contains(&b) {
                fragments.push((vec![a, b], None));
            }
        }
        let mut seen: HashSet<usize> = HashSet::new();
        for &v in adj.keys() {
            if on_v.contains(&v) || seen.contains(&v) {
                continue;
            }
            let mut comp = HashSet::from([v]);
            let mut attach = Vec::new();
            let mut q = VecDeque::from([v]);
            seen.insert(v);
            while let Some(x) = q.pop_front() {
                for &y in &adj[&x] {
                    if on_v.contains(&y) {
                        if !attach.contains(&y) {
                            attach.push(y);
                        }
                    } else if seen.insert(y) {
                        comp.insert(y);
                        q.push_back(y);
                    }
                }
            }
            fragments.push((attach, Some(comp)));
        }
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut best: Option<(usize, usize)> = None;
        for (i, (attach, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| attach.iter().all(|a| face_sets[f].contains(a))).collect();
            if admissible.is_empty() {
                return None;
            }
            if admissible.len() == 1 {
                best = Some((i, admissible[0]));
                break;
            }
            best.get_or_insert((i, admissible[0]));
        }
        let (fi, face) = best.expect("a missing edge leaves a fragment");
        let (attach, comp) = &fragments[fi];
        let path = match comp {
            None => attach.clone(),
            Some(comp) => {
                let (a1, a2) = (attach[0], attach[1]);
                bfs_path(&adj, a1, a2, |x, y| !(x == a1 && y == a2), |y| y == a2 || comp.contains(&y))?
            }
        };
        let f = &faces[face];
        let u = f.iter().position(|&x| x == path[0]).unwrap();
        let v = f.iter().position(|&x| x == *path.last().unwrap()).unwrap();
        let len = f.len();
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut k = from;
            loop {
                out.push(f[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % len;
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = arc(u, v);
        f1.extend(inner.iter().rev());
        let mut f2 = arc(v, u);
        f2.extend(inner.iter());
        faces[face] = f1;
        faces.push(f2);
        for w in path.windows(2) {
            on_e.insert(key(w[0], w[1]));
        }
        on_v.extend(path.iter().copied());
    }

    // σ_v(dart to u) = dart to w for every face corner u → v → w
    let mut succ: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            succ.insert((f[(i + 1) % k], f[i]), f[(i + 2) % k]);
        }
    }
    let mut rot = BTreeMap::new();
    for (&v, nbrs) in &adj {
        let mut order = vec![nbrs[0]];
        let mut x = succ[&(v, nbrs[0])];
        while x != nbrs[0] {
            order.push(x);
            x = succ[&(v, x)];
        }
        debug_assert_eq!(order.len(), nbrs.len());
        rot.insert(v, order);
    }
    Some(rot)
}

/// Shortest path from `s` to `t` using steps `x → y` allowed by `step` into
/// vertices allowed by `enter`.
fn bfs_path(
    adj: &BTreeMap<usize, Vec<usize>>,
    s: usize,
    t: usize,
    step: impl Fn(usize, usize) -> bool,
    enter: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::from([(s, s)]);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[&x] {
            if prev.contains_key(&y) || !step(x, y) || !enter(y) {
                continue;
            }
            prev.insert(y, x);
            if y == t {
                let mut path = vec![t];
                let mut z = t;
                while z != s {
                    z = prev[&z];
                    path.push(z);
                }
                path.reverse();
                return Some(path);
            }
            q.push_back(y);
        }
    }
    None
}

/// Edge-minimal non-planar subgraph of a non-planar simple graph, found by
/// deleting ever smaller chunks of edges while non-planarity survives.
fn kuratowski(n: usize, pairs: &[(usize, usize)]) -> (KuratowskiKind, Vec<(usize, usize)>) {
    let mut edges: Vec<(usize, usize)> = blocks(n, pairs)
        .into_iter()
        .map(|b| b.iter().map(|&e| pairs[e]).collect::<Vec<_>>())
        .find(|b| b.len() > 1 && simple_embedding(n, b).is_none())
        .expect("a non-planar graph has a non-planar block");
    let mut chunk = edges.len().div_ceil(2);
    loop {
        let mut i = 0;
        while i < edges.len() {
            let end = (i + chunk).min(edges.len());
            let trial: Vec<_> = edges[..i].iter().chain(&edges[end..]).copied().collect();
            if simple_embedding(n, &trial).is_none() {
                edges = trial;
            } else {
                i = end;
            }
        }
        if chunk == 1 {
            break;
        }
        chunk = chunk.div_ceil(2);
    }
    let kind = classify(n, &edges).expect("an edge-minimal non-planar graph is a Kuratowski subdivision");
    (kind, edges)
}

/// `K5` or `K3,3` if the edge set is a subdivision of one of them.
fn classify(n: usize, pairs: &[(usize, usize)]) -> Option<KuratowskiKind> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        if a == b {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|a| a.len() == 1) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mut links: HashSet<(usize, usize)> = HashSet::new();
    let mut used = 0;
    for &b in &branch {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            used += 1;
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                used += 1;
            }
            if cur == b || !links.insert((b, cur)) {
                return None;
            }
        }
    }
    // every edge lies on exactly one branch path, counted from both ends
    if used != 2 * pairs.len() {
        return None;
    }
    let linked = |a: usize, b: usize| links.contains(&(a, b));
    match branch.len() {
        5 if branch.iter().all(|&v| adj[v].len() == 4) => Some(KuratowskiKind::K5),
        6 if branch.iter().all(|&v| adj[v].len() == 3) => {
            let side: Vec<usize> = branch.iter().copied().filter(|&v| v == branch[0] || !linked(branch[0], v)).collect();
            let other: Vec<usize> = branch.iter().copied().filter(|v| !side.contains(v)).collect();
            let ok = side.len() == 3 && side.iter().all(|&a| other.iter().all(|&b| linked(a, b)));
            ok.then_some(KuratowskiKind::K33)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::cayley::Edge;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn witness(g: &ColoredGraph) -> KuratowskiWitness {
        match planarity_test(g) {
            Planarity::NonPlanar(Some(w)) => w,
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn kuratowski_graphs() {
        let w = witness(&complete(5));
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert!(w.verify(&complete(5)));
        let w = witness(&k33());
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.verify(&k33()));
        assert!(planarity_test(&complete(4)).is_planar());
        let g = cayley("< a, b | a^5, b^5, a a b^-1 >");
        let w = witness(&g);
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert!(w.verify(&g));
    }

    #[test]
    fn dense_graphs_are_not_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(5..=9);
            let mut e = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.8) {
                        e.push((a, b));
                    }
                }
            }
            if e.len() > 3 * n - 6 {
                let g = plain(n, &e);
                assert!(witness(&g).verify(&g));
            }
        }
    }

    #[test]
    fn subdivided_and_embedded_kuratowski() {
        // K3,3 with one edge subdivided, plus a pendant path and a planar block
        let mut e = vec![(0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (0, 6), (6, 3)];
        e.extend([(5, 7), (7, 8), (8, 9), (9, 7)]);
        let g = plain(10, &e);
        let w = witness(&g);
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.verify(&g));
        assert_eq!(w.edges.len(), 10);
    }

    #[test]
    fn cayley_graphs_are_planar() {
        for s in [
            "< a, b | a^4, b^2, a b a^-1 b >",
            "< a, b | a^2, b^3, a b a b a b a b a b >",
            "< a, b | a^3, b^3, a b a b >",
            "< a | a^7 >",
            "< a, b | a^2, b^3, a b^-1 >",
            "< a, b | a^2, b^2, a b a b a b >",
        ] {
            let g = cayley(s);
            let Planarity::Planar(rot) = planarity_test(&g) else { panic!("{s}") };
            assert_eq!(euler_defect(&g, &rot), 0, "{s}");
        }
    }

    #[test]
    fn torus_group_is_not_planar() {
        // Z3 x Z3 with its standard generators embeds in the torus only
        let g = cayley("< a, b | a^3, b^3, a b a^-1 b^-1 >");
        let w = witness(&g);
        assert!(w.verify(&g));
    }

    #[test]
    fn agrees_with_exhaustive_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ex = ExhaustiveTester::default();
        let mut checked = 0;
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a..n {
                    if rng.gen_bool(0.45) {
                        let kind = if a == b { EdgeKind::Directed } else { EdgeKind::Involution };
                        edges.push(Edge { color: 0, kind, tail: a, head: b });
                    }
                }
            }
            let g = ColoredGraph::new(n, vec!["x".into()], edges);
            let Ok(slow) = ex.test(&g) else { continue };
            let fast = planarity_test(&g);
            assert_eq!(fast.is_planar(), slow.is_planar(), "{g:?}");
            if let Planarity::NonPlanar(Some(w)) = &fast {
                assert!(w.verify(&g));
            }
            checked += 1;
        }
        assert!(checked > 200);
    }
}
