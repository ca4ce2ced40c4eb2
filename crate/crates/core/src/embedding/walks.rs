use std::collections::{HashMap, HashSet};

use super::{EmbeddingError, RotationSystem};
use crate::cayley::ColoredGraph;

/// Darts spelling a vertex walk, one per step; a loop step uses the loop's tail dart.
fn walk_darts(g: &ColoredGraph, walk: &[usize], closed: bool) -> Result<Vec<usize>, EmbeddingError> {
    let steps = if closed { walk.len() } else { walk.len().saturating_sub(1) };
    (0..steps)
        .map(|i| {
            let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
            if a >= g.vertex_count() || b >= g.vertex_count() {
                return Err(EmbeddingError::NotAPath(format!("vertex {} out of range", a.max(b))));
            }
            g.darts_at(a)
                .iter()
                .copied()
                .find(|&d| g.far_end(d) == b && (a != b || d % 2 == 0))
                .ok_or_else(|| EmbeddingError::NotAPath(format!("{a} and {b} are not adjacent")))
        })
        .collect()
}

/// Whether the closed walk `y` crosses the path `x` in the embedding `rot`:
/// it runs along a (possibly trivial) subpath of `x`, arriving and leaving
/// on opposite sides. `y` may repeat its first vertex at the end.
pub fn walk_crossing(g: &ColoredGraph, rot: &RotationSystem, x: &[usize], y: &[usize]) -> Result<bool, EmbeddingError> {
    Ok(crossings(g, rot, x, false, y)? > 0)
}

/// Number of crossings of the closed walk `y` over the cycle `x`. Two closed
/// curves on the sphere cross an even number of times.
pub fn cycle_crossings(g: &ColoredGraph, rot: &RotationSystem, x: &[usize], y: &[usize]) -> Result<usize, EmbeddingError> {
    crossings(g, rot, x, true, y)
}

fn strip_closing(w: &[usize]) -> &[usize] {
    if w.len() > 1 && w.first() == w.last() {
        &w[..w.len() - 1]
    } else {
        w
    }
}

fn crossings(g: &ColoredGraph, rot: &RotationSystem, x: &[usize], x_closed: bool, y: &[usize]) -> Result<usize, EmbeddingError> {
    rot.validate(g)?;
    let x = if x_closed { strip_closing(x) } else { x };
    let y = strip_closing(y);
    if x.is_empty() {
        return Err(EmbeddingError::NotAPath("empty path".into()));
    }
    let mut at: HashMap<usize, usize> = HashMap::new();
    for (i, &v) in x.iter().enumerate() {
        if at.insert(v, i).is_some() {
            return Err(EmbeddingError::NotAPath(format!("vertex {v} repeats")));
        }
    }
    let closed = x_closed && x.len() > 2;
    let xd = walk_darts(g, x, closed)?;
    if y.is_empty() {
        return Ok(0);
    }
    let yd = walk_darts(g, y, true)?;
    let x_edges: HashSet<usize> = xd.iter().map(|d| d / 2).collect();
    let k = x.len();
    let mut pos = HashMap::new();
    for order in &rot.orders {
        for (i, &d) in order.iter().enumerate() {
            pos.insert(d, i);
        }
    }
    // side of dart `d` at `x[p]`: true when it lies after the outgoing and
    // before the incoming path dart
    let side = |p: usize, d: usize| -> Option<bool> {
        let (prev, next) = if closed {
            ((p + k - 1) % k, p)
        } else if p == 0 || p + 1 == k {
            return None;
        } else {
            (p - 1, p)
        };
        let incoming = g.mate(xd[prev]);
        let outgoing = xd[next];
        if d == incoming || d == outgoing {
            return None;
        }
        let len = rot.orders[x[p]].len();
        let off = |e: usize| (pos[&e] + len - pos[&outgoing]) % len;
        Some(off(d) < off(incoming))
    };
    let along = |t: usize| x_edges.contains(&(yd[t] / 2));
    let m = yd.len();
    let Some(t0) = (0..m).find(|&t| !along(t)) else { return Ok(0) };
    let mut count = 0;
    let arrive = |t: usize| -> Option<(usize, usize)> {
        let v = y[(t + 1) % m];
        at.get(&v).map(|&p| (p, g.mate(yd[t])))
    };
    let mut entry = arrive(t0);
    for i in 1..=m {
        let t = (t0 + i) % m;
        if along(t) {
            continue;
        }
        if let Some((p_in, d_in)) = entry.take() {
            let p_out = at[&y[t]];
            if let (Some(a), Some(b)) = (side(p_in, d_in), side(p_out, yd[t])) {
                if a != b {
                    count += 1;
                }
            }
        }
        if i < m {
            entry = arrive(t);
        }
    }
    Ok(count)
}
