use crate::cayley::{ColoredGraph, EdgeKind};
use crate::presentation::Presentation;

/// Dimension of the cycle space over GF(2): `|E| − |V| + c`, half-loops excluded.
pub fn cycle_space_rank(g: &ColoredGraph) -> usize {
    let edges = g.edges().iter().filter(|e| e.kind != EdgeKind::HalfLoop).count();
    edges + super::components(g) - g.vertex_count()
}

/// Rank over GF(2) of the closed walks spelled by every relator from every
/// vertex, as edge sets. `None` if some relator cannot be followed or does
/// not close up, or names a generator that is not a colour of `g`.
pub fn relator_span_rank(g: &ColoredGraph, p: &Presentation) -> Option<usize> {
    let color_of: Vec<usize> = p
        .generators()
        .iter()
        .map(|s| g.colors().iter().position(|c| c == s))
        .collect::<Option<_>>()?;
    let words = g.edges().len().div_ceil(64);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for r in p.relators() {
        for start in 0..g.vertex_count() {
            let mut row = vec![0u64; words];
            let mut v = start;
            for l in r.iter() {
                let d = g.step(v, color_of[l.gen], l.inverse)?;
                if g.edge_of(d).kind != EdgeKind::HalfLoop {
                    row[d / 128] ^= 1 << ((d / 2) % 64);
                }
                v = g.far_end(d);
            }
            if v != start {
                return None;
            }
            for (pivot, b) in &basis {
                if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    row.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            if let Some(w) = row.iter().position(|&x| x != 0) {
                let pivot = w * 64 + row[w].trailing_zeros() as usize;
                // keep the basis fully reduced so one pass suffices
                for (_, b) in basis.iter_mut() {
                    if b[pivot / 64] >> (pivot % 64) & 1 == 1 {
                        b.iter_mut().zip(&row).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push((pivot, row));
            }
        }
    }
    Some(basis.len())
}
