use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{euler_defect, is_two_connected, trace_faces, two_separators, EmbeddingError, RotationSystem};
use crate::cayley::{build_cayley_graph, coset_enumerate, ColoredGraph, EdgeKind};
use crate::conditions::check_special;
use crate::presentation::{Letter, Presentation, Word};
use crate::spin::{CyclicOrder, SpecialDecoration};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinReport {
    pub consistent: bool,
    /// Common spin of the vertices, up to reflection.
    pub sigma: Option<CyclicOrder>,
    /// Per colour: whether its edges reverse the spin.
    pub tau: Option<Vec<bool>>,
    pub reason: Option<String>,
}

impl SpinReport {
    fn inconsistent(reason: String) -> Self {
        SpinReport { consistent: false, sigma: None, tau: None, reason: Some(reason) }
    }
}

fn label(g: &ColoredGraph, d: usize) -> Letter {
    let (c, inv) = g.dart_label(d);
    Letter::new(c, inv)
}

/// Spins of all vertices and, per colour, whether its edges preserve them.
pub fn check_consistent(g: &ColoredGraph, rot: &RotationSystem) -> Result<SpinReport, EmbeddingError> {
    rot.validate(g)?;
    if g.vertex_count() == 0 {
        return Ok(SpinReport { consistent: true, sigma: None, tau: Some(vec![false; g.colors().len()]), reason: None });
    }
    let spins: Vec<CyclicOrder> =
        rot.orders.iter().map(|o| CyclicOrder::new(o.iter().map(|&d| label(g, d)).collect())).collect();
    if let Some(v) = spins.iter().position(|s| s.has_duplicates()) {
        return Ok(SpinReport::inconsistent(format!("vertex {v} sees a label twice")));
    }
    let reference = &spins[0];
    let mut flipped = Vec::with_capacity(spins.len());
    for (v, s) in spins.iter().enumerate() {
        if s == reference {
            flipped.push(false);
        } else if *s == reference.reflected() {
            flipped.push(true);
        } else {
            return Ok(SpinReport::inconsistent(format!("vertex {v} has a different spin from vertex 0")));
        }
    }
    let mut tau: Vec<Option<bool>> = vec![None; g.colors().len()];
    for (i, e) in g.edges().iter().enumerate() {
        let reversing = flipped[e.tail] != flipped[e.head];
        match tau[e.color] {
            None => tau[e.color] = Some(reversing),
            Some(t) if t != reversing => {
                return Ok(SpinReport::inconsistent(format!(
                    "colour {} has both spin-preserving and spin-reversing edges (edge {i})",
                    g.colors()[e.color]
                )))
            }
            Some(_) => {}
        }
    }
    Ok(SpinReport {
        consistent: true,
        sigma: Some(reference.clone()),
        tau: Some(tau.into_iter().map(|t| t.unwrap_or(false)).collect()),
        reason: None,
    })
}

fn lookup(g: &ColoredGraph) -> Vec<HashMap<(Letter, EdgeKind), usize>> {
    (0..g.vertex_count())
        .map(|v| g.darts_at(v).iter().map(|&d| ((label(g, d), g.edge_of(d).kind), g.far_end(d))).collect())
        .collect()
}

/// Whether some bijection of vertices carries every labelled dart of `g`
/// onto one of `h`. Colours are matched by name.
pub fn color_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edges().len() != h.edges().len() {
        return false;
    }
    let Some(color_map) = g.colors().iter().map(|c| h.colors().iter().position(|x| x == c)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    if n == 0 {
        return true;
    }
    let translate = |k: &(Letter, EdgeKind)| (Letter::new(color_map[k.0.gen], k.0.inverse), k.1);
    let (lg, lh) = (lookup(g), lookup(h));
    if (0..n).any(|v| lg[v].len() != g.degree(v)) {
        return false;
    }
    'target: for t in 0..n {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = t;
        used[t] = true;
        let mut q = VecDeque::from([0]);
        while let Some(v) = q.pop_front() {
            let w = map[v];
            if lg[v].len() != lh[w].len() {
                continue 'target;
            }
            for (k, &x) in &lg[v] {
                let Some(&y) = lh[w].get(&translate(k)) else { continue 'target };
                if map[x] == usize::MAX {
                    if used[y] {
                        continue 'target;
                    }
                    map[x] = y;
                    used[y] = true;
                    q.push_back(x);
                } else if map[x] != y {
                    continue 'target;
                }
            }
        }
        if map.iter().all(|&m| m != usize::MAX) {
            return true;
        }
    }
    false
}

/// Least rotation of the word or of its inverse.
fn class_representative(w: &[Letter], involutions: &BTreeSet<usize>) -> Vec<Letter> {
    let norm = |l: Letter| if involutions.contains(&l.gen) { Letter::pos(l.gen) } else { l };
    let inverse: Vec<Letter> = w.iter().rev().map(|l| norm(l.inv())).collect();
    let mut best: Option<Vec<Letter>> = None;
    for v in [w.to_vec(), inverse] {
        for k in 0..v.len().max(1) {
            let r: Vec<Letter> = v[k.min(v.len())..].iter().chain(&v[..k.min(v.len())]).copied().collect();
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// A special presentation read off a consistent planar embedding of a finite
/// 3-connected Cayley graph: one relator per class of face words, plus `s²`
/// for involution colours, with the embedding's spin as decoration. The
/// result is checked against the special conditions and by rebuilding the
/// Cayley graph.
pub fn extract_special_presentation(
    g: &ColoredGraph,
    rot: &RotationSystem,
) -> Result<(Presentation, SpecialDecoration), EmbeddingError> {
    rot.validate(g)?;
    if euler_defect(g, rot) != 0 {
        return Err(EmbeddingError::NotPlanar);
    }
    if !is_two_connected(g) || !two_separators(g)?.is_empty() {
        return Err(EmbeddingError::NotThreeConnected);
    }
    let report = check_consistent(g, rot)?;
    if !report.consistent {
        return Err(EmbeddingError::NotConsistent(report.reason.unwrap_or_default()));
    }
    let involutions: BTreeSet<usize> =
        g.edges().iter().filter(|e| e.kind != EdgeKind::Directed).map(|e| e.color).collect();
    let mut classes: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for face in trace_faces(g, rot) {
        let w: Vec<Letter> = face.iter().map(|&d| label(g, d)).collect();
        classes.insert(class_representative(&w, &involutions));
    }
    for &s in &involutions {
        classes.insert(vec![Letter::pos(s); 2]);
    }
    let mut relators: Vec<Vec<Letter>> = classes.into_iter().collect();
    relators.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let p = Presentation::new(g.colors().to_vec(), relators.into_iter().map(Word::new).collect())
        .map_err(|e| EmbeddingError::Verification(e.to_string()))?;
    let sigma = report.sigma.unwrap_or_else(|| CyclicOrder::new(Vec::new()));
    let d = SpecialDecoration::new(p.clone(), sigma, report.tau.unwrap_or_default())
        .map_err(|e| EmbeddingError::Verification(e.to_string()))?;
    let verdict = check_special(&p, &d);
    if !verdict.accepted() {
        return Err(EmbeddingError::Verification(format!("special conditions rejected it: {:?}", verdict.failures)));
    }
    let table = coset_enumerate(&p, 2 * g.vertex_count() + 16).map_err(|e| EmbeddingError::Verification(e.to_string()))?;
    if table.len() != g.vertex_count() {
        return Err(EmbeddingError::Verification(format!("{} cosets for {} vertices", table.len(), g.vertex_count())));
    }
    let rebuilt = build_cayley_graph(&p, &table).map_err(|e| EmbeddingError::Verification(e.to_string()))?;
    if !color_isomorphic(g, &rebuilt) {
        return Err(EmbeddingError::Verification("rebuilt Cayley graph is not colour-isomorphic".into()));
    }
    Ok((p, d))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{planarity_test, Planarity};
    use super::*;
    use crate::enumeration::canonical_form;
    use crate::presentation::parse_presentation;

    fn embedded(s: &str) -> (ColoredGraph, RotationSystem) {
        let g = cayley(s);
        let Planarity::Planar(rot) = planarity_test(&g) else { panic!("{s}") };
        (g, rot)
    }

    fn same_group_presentation(a: &Presentation, b: &str) -> bool {
        canonical_form(a) == canonical_form(&parse_presentation(b).unwrap())
    }

    #[test]
    fn cube_spin() {
        let (g, rot) = embedded("< a, b | a^4, b^2, a b a^-1 b >");
        let r = check_consistent(&g, &rot).unwrap();
        assert!(r.consistent);
        assert_eq!(r.tau, Some(vec![false, true]));
        assert_eq!(check_consistent(&g, &rot.reflected()).unwrap().tau, r.tau);
    }

    #[test]
    fn perturbed_cube_is_inconsistent() {
        let (g, mut rot) = embedded("< a, b | a^4, b^2, a b a^-1 b >");
        rot.orders[3].swap(0, 1);
        assert!(!check_consistent(&g, &rot).unwrap().consistent);
    }

    #[test]
    fn spin_is_invariant_under_renaming() {
        let (g, rot) = embedded("< a, b | a^4, b^2, a b a^-1 b >");
        let perm: Vec<usize> = vec![5, 2, 7, 0, 1, 6, 3, 4];
        let edges = g.edges().iter().map(|e| crate::cayley::Edge { tail: perm[e.tail], head: perm[e.head], ..*e }).collect();
        let h = ColoredGraph::new(8, g.colors().to_vec(), edges);
        let mut orders = vec![Vec::new(); 8];
        for v in 0..8 {
            orders[perm[v]] = rot.orders[v].clone();
        }
        let r = check_consistent(&h, &RotationSystem { orders }).unwrap();
        assert!(r.consistent);
        assert_eq!(r.tau, Some(vec![false, true]));
        assert!(color_isomorphic(&g, &h));
    }

    #[test]
    fn extraction_round_trips() {
        let (g, rot) = embedded("< a, b | a^4, b^2, a b a^-1 b >");
        let (p, d) = extract_special_presentation(&g, &rot).unwrap();
        assert!(same_group_presentation(&p, "< a, b | a^4, b^2, a b a^-1 b >"), "{p}");
        assert_eq!(d.tau, vec![false, true]);

        let (g, rot) = embedded("< a | a^3 >");
        let (p, _) = extract_special_presentation(&g, &rot).unwrap();
        assert!(same_group_presentation(&p, "< a | a^3 >"), "{p}");

        // Z4 with a and its square: the tetrahedron
        let (g, rot) = embedded("< a, b | a^4, b^2, a a b^-1 >");
        assert_eq!(g.edges().len(), 6);
        let (p, _) = extract_special_presentation(&g, &rot).unwrap();
        let table = coset_enumerate(&p, 100).unwrap();
        assert!(color_isomorphic(&g, &build_cayley_graph(&p, &table).unwrap()));
    }

    #[test]
    fn extraction_rejects() {
        let (g, rot) = embedded("< a | a^3 >");
        let mut bad = rot.clone();
        bad.orders[0].reverse();
        bad.orders[1].reverse();
        bad.orders[2].reverse();
        assert!(extract_special_presentation(&g, &bad).is_ok());
        let square = plain(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let Planarity::Planar(r) = planarity_test(&square) else { panic!() };
        assert_eq!(extract_special_presentation(&square, &r), Err(EmbeddingError::NotThreeConnected));
        let (g, mut rot) = embedded("< a, b | a^4, b^2, a b a^-1 b >");
        let o = &mut rot.orders[0];
        o.swap(0, 1);
        assert_eq!(extract_special_presentation(&g, &rot), Err(EmbeddingError::NotPlanar));
    }
}
