use std::collections::VecDeque;

use super::{CosetError, CosetStrategy, CosetTable, TableStatus};
use crate::presentation::{free_reduce, Presentation};
use crate::registry::Named;

const NONE: usize = usize::MAX;

/// Cap on cosets ever allocated, as a multiple of the live-coset budget.
const ALLOCATION_FACTOR: usize = 32;

fn inv(x: usize) -> usize {
    x ^ 1
}

/// Mutable state shared by both strategies. Cosets are never reused; a dead
/// coset forwards to its representative through `parent`.
struct Engine {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    relators: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
    /// deductions `(coset, column)` for Felsch-style processing
    deductions: Vec<(usize, usize)>,
    track: bool,
}

#[derive(Debug)]
struct Full;

impl Engine {
    fn new(p: &Presentation, max_live: usize, track: bool) -> Self {
        let cols = 2 * p.rank();
        let relators = p
            .relators()
            .iter()
            .map(|r| free_reduce(r).iter().map(|l| 2 * l.gen + l.inverse as usize).collect::<Vec<_>>())
            .filter(|r: &Vec<usize>| !r.is_empty())
            .collect();
        Engine {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            max_live: max_live.max(1),
            relators,
            queue: VecDeque::new(),
            deductions: Vec::new(),
            track,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn set(&mut self, a: usize, x: usize, b: usize) {
        self.table[a][x] = b;
        self.table[b][inv(x)] = a;
        if self.track {
            self.deductions.push((a, x));
        }
    }

    fn define(&mut self, a: usize, x: usize) -> Result<usize, Full> {
        if self.live >= self.max_live || self.table.len() >= self.max_live.saturating_mul(ALLOCATION_FACTOR) {
            return Err(Full);
        }
        let b = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(b);
        self.live += 1;
        self.set(a, x, b);
        Ok(b)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[g][x] = NONE;
                if self.table[d][inv(x)] == g {
                    self.table[d][inv(x)] = NONE;
                }
                let (m, n) = (self.rep(g), self.rep(d));
                if self.table[m][x] != NONE {
                    let t = self.table[m][x];
                    self.merge(n, t);
                } else if self.table[n][inv(x)] != NONE {
                    let t = self.table[n][inv(x)];
                    self.merge(m, t);
                } else {
                    self.set(m, x, n);
                }
            }
        }
    }

    /// Scans `w` at `a`, closing with a deduction or coincidence when possible.
    /// With `fill`, missing entries are defined so the scan always completes.
    fn scan(&mut self, a: usize, w: &[usize], fill: bool) -> Result<(), Full> {
        let n = w.len();
        let (mut f, mut i) = (a, 0usize);
        let (mut b, mut j) = (a, n as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inv(w[j as usize])] != NONE {
                b = self.table[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[r].clone();
                let _ = self.scan(c, &w, false);
            }
            c += 1;
        }
    }

    /// Final pass: every relator must close at every coset of a complete table.
    /// Returns false when the pass found coincidences (and so changed the table).
    fn settled(&mut self) -> bool {
        let before = self.live;
        self.lookahead();
        self.live == before
    }

    fn complete(&self) -> bool {
        (0..self.table.len()).filter(|&c| self.is_live(c)).all(|c| self.table[c].iter().all(|&d| d != NONE))
    }

    /// Live cosets renumbered in breadth-first order from coset 0.
    fn finish(mut self, status: TableStatus) -> CosetTable {
        for c in 0..self.table.len() {
            if self.is_live(c) {
                for x in 0..self.cols {
                    let d = self.table[c][x];
                    if d != NONE {
                        self.table[c][x] = self.rep(d);
                    }
                }
            }
        }
        let mut order = vec![NONE; self.table.len()];
        let mut seq = vec![0];
        order[0] = 0;
        let mut k = 0;
        while k < seq.len() {
            let c = seq[k];
            for x in 0..self.cols {
                let d = self.table[c][x];
                if d != NONE && order[d] == NONE {
                    order[d] = seq.len();
                    seq.push(d);
                }
            }
            k += 1;
        }
        let rows = seq
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| if d == NONE { None } else { Some(order[d]) }).collect())
            .collect();
        CosetTable { rank: self.cols / 2, rows, status }
    }
}

/// Hasse–Lindsey–Todd style: scan each coset against every relator, filling
/// gaps, in coset order; on running out of room, one lookahead pass.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hlt;

impl Named for Hlt {
    fn name(&self) -> &'static str {
        "hlt"
    }
}

impl CosetStrategy for Hlt {
    fn enumerate(&self, p: &Presentation, max_cosets: usize) -> Result<CosetTable, CosetError> {
        let mut e = Engine::new(p, max_cosets, false);
        let mut c = 0;
        let mut looked_ahead = false;
        while c < e.table.len() {
            let step = (|| -> Result<(), Full> {
                for r in 0..e.relators.len() {
                    if !e.is_live(c) {
                        return Ok(());
                    }
                    let w = e.relators[r].clone();
                    e.scan(c, &w, true)?;
                }
                for x in 0..e.cols {
                    if e.is_live(c) && e.table[c][x] == NONE {
                        e.define(c, x)?;
                    }
                }
                Ok(())
            })();
            match step {
                Ok(()) => {
                    looked_ahead = false;
                    c += 1;
                }
                Err(Full) if !looked_ahead => {
                    e.lookahead();
                    looked_ahead = true;
                }
                Err(Full) => return Err(CosetError::BudgetExceeded(Box::new(e.finish(TableStatus::Incomplete)))),
            }
        }
        while !e.settled() {}
        debug_assert!(e.complete());
        Ok(e.finish(TableStatus::Complete))
    }
}

/// Felsch style: define the first gap, then process every deduction by
/// scanning the relators that pass through it.
#[derive(Debug, Clone, Copy, Default)]
pub struct Felsch;

impl Named for Felsch {
    fn name(&self) -> &'static str {
        "felsch"
    }
}

impl CosetStrategy for Felsch {
    fn enumerate(&self, p: &Presentation, max_cosets: usize) -> Result<CosetTable, CosetError> {
        let mut e = Engine::new(p, max_cosets, true);
        // rotations of relators and their inverses, grouped by first letter
        let mut through: Vec<Vec<Vec<usize>>> = vec![Vec::new(); e.cols];
        for r in &e.relators {
            let ri: Vec<usize> = r.iter().rev().map(|&x| inv(x)).collect();
            for w in [r, &ri] {
                for k in 0..w.len() {
                    let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                    if !through[rot[0]].contains(&rot) {
                        through[rot[0]].push(rot);
                    }
                }
            }
        }
        for r in e.relators.clone() {
            let _ = e.scan(0, &r, false);
        }
        let mut c = 0;
        loop {
            while let Some((a, x)) = e.deductions.pop() {
                if !e.is_live(a) {
                    continue;
                }
                let b = e.table[a][x];
                for w in through[x].clone() {
                    if e.is_live(a) {
                        let _ = e.scan(a, &w, false);
                    }
                }
                if b != NONE && e.is_live(b) {
                    for w in through[inv(x)].clone() {
                        if e.is_live(b) {
                            let _ = e.scan(b, &w, false);
                        }
                    }
                }
            }
            while c < e.table.len() && !(e.is_live(c) && e.table[c].contains(&NONE)) {
                c += 1;
            }
            if c == e.table.len() {
                if e.settled() {
                    break;
                }
                c = 0;
                continue;
            }
            let x = e.table[c].iter().position(|&d| d == NONE).unwrap();
            if e.define(c, x).is_err() {
                return Err(CosetError::BudgetExceeded(Box::new(e.finish(TableStatus::Incomplete))));
            }
        }
        debug_assert!(e.complete());
        Ok(e.finish(TableStatus::Complete))
    }
}
