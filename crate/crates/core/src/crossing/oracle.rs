use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{inverse_codes, is_double_ray_codes, on_right, Alignment, CrossingDecider};
use crate::presentation::{Letter, Word};
use crate::registry::Named;
use crate::spin::{DecorationTables, GenericDecoration};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleOptions {
    /// When set, free choices in the embedding (orientation of blocks not
    /// forced by the parent edge, order of blocks around hinges) are drawn
    /// pseudo-randomly from this seed instead of taken in index order.
    pub seed: Option<u64>,
}

/// Builds a finite window of the embedded tree and classifies attachments by side.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleDecider {
    pub options: OracleOptions,
}

impl OracleDecider {
    pub fn seeded(seed: u64) -> Self {
        OracleDecider { options: OracleOptions { seed: Some(seed) } }
    }
}

impl Named for OracleDecider {
    fn name(&self) -> &'static str {
        "oracle"
    }
}

/// Local embedding data at one tree vertex.
#[derive(Debug, Clone)]
struct State {
    /// block reflected relative to its cyclic order
    orient: Vec<bool>,
    /// per symbol: blocks around it, clockwise after the symbol's own dart
    around: Vec<Vec<usize>>,
}

struct Embedding<'a> {
    d: &'a GenericDecoration,
    t: &'a DecorationTables,
    seed: Option<u64>,
    sigma: Vec<Vec<usize>>,
    blocks_of: Vec<Vec<usize>>,
}

impl<'a> Embedding<'a> {
    fn new(d: &'a GenericDecoration, t: &'a DecorationTables, seed: Option<u64>) -> Self {
        let alpha = d.structure().alphabet();
        let sigma = d
            .sigma
            .iter()
            .map(|o| o.letters().iter().map(|&l| alpha.index_of(l).unwrap()).collect())
            .collect();
        let blocks_of = alpha.letters().iter().map(|&l| d.structure().blocks_containing(l)).collect();
        Embedding { d, t, seed, sigma, blocks_of }
    }

    fn draw(&self, word: &[usize], tag: usize) -> u64 {
        let mut h = DefaultHasher::new();
        (self.seed, word, tag).hash(&mut h);
        h.finish()
    }

    fn shuffled(&self, mut v: Vec<usize>, word: &[usize], tag: usize) -> Vec<usize> {
        if self.seed.is_some() {
            for i in (1..v.len()).rev() {
                let j = (self.draw(word, tag * 64 + i) % (i as u64 + 1)) as usize;
                v.swap(i, j);
            }
        }
        v
    }

    fn free_orientation(&self, word: &[usize], block: usize) -> bool {
        self.seed.is_some() && self.draw(word, 1_000_000 + block) & 1 == 1
    }

    /// Block continuing `i` after traversing letter `x` out of it.
    fn across(&self, x: Letter, i: usize) -> (usize, bool) {
        let g = x.gen;
        let inv = self.d.structure().alphabet().involutions();
        if !x.inverse || inv.contains(g) {
            (self.d.mu[g][&i], self.d.tau[g][i])
        } else {
            let (&m, _) = self.d.mu[g].iter().find(|(_, &j)| j == i).expect("mu is a bijection");
            (m, self.d.tau[g][m])
        }
    }

    fn root(&self) -> State {
        let k = self.d.block_count();
        State {
            orient: (0..k).map(|b| self.free_orientation(&[], b)).collect(),
            around: self.blocks_of.iter().enumerate().map(|(s, b)| self.shuffled(b.clone(), &[], s)).collect(),
        }
    }

    /// State at `word·x` given the state at `word`.
    fn child(&self, parent: &State, word: &[usize], code: usize) -> State {
        let x = self.t.letter(code);
        let sx = self.t.sym[code];
        let sb = self.t.sym[self.t.back(code)];
        let mut child_word = word.to_vec();
        child_word.push(code);
        let k = self.d.block_count();
        let mut orient: Vec<bool> = (0..k).map(|b| self.free_orientation(&child_word, b)).collect();
        for &i in &self.blocks_of[sx] {
            let (j, flip) = self.across(x, i);
            orient[j] = parent.orient[i] ^ flip;
        }
        let mut around: Vec<Vec<usize>> = self
            .blocks_of
            .iter()
            .enumerate()
            .map(|(s, b)| self.shuffled(b.clone(), &child_word, s))
            .collect();
        around[sb] = parent.around[sx].iter().rev().map(|&i| self.across(x, i).0).collect();
        State { orient, around }
    }

    /// Clockwise position of each symbol's dart.
    fn rotation(&self, st: &State) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks_of.len());
        self.tour_block(st, 0, None, &mut out);
        let mut pos = vec![usize::MAX; self.blocks_of.len()];
        for (p, &s) in out.iter().enumerate() {
            pos[s] = p;
        }
        debug_assert!(pos.iter().all(|&p| p != usize::MAX));
        pos
    }

    fn tour_block(&self, st: &State, block: usize, from: Option<usize>, out: &mut Vec<usize>) {
        let mut order = self.sigma[block].clone();
        if st.orient[block] {
            order.reverse();
        }
        let n = order.len();
        let start = from.map_or(0, |h| order.iter().position(|&x| x == h).unwrap() + 1);
        for step in 0..n {
            let h = order[(start + step) % n];
            if Some(h) != from {
                self.tour_letter(st, h, block, out);
            }
        }
    }

    fn tour_letter(&self, st: &State, h: usize, from: usize, out: &mut Vec<usize>) {
        // cyclic list: the dart itself (None) followed by the blocks around h
        let ring: Vec<Option<usize>> = std::iter::once(None).chain(st.around[h].iter().map(|&b| Some(b))).collect();
        let n = ring.len();
        let a = ring.iter().position(|&e| e == Some(from)).unwrap();
        for step in 1..n {
            match ring[(a + step) % n] {
                None => out.push(h),
                Some(b) => self.tour_block(st, b, Some(h), out),
            }
        }
    }
}

fn push_reduced(word: &mut Vec<usize>, code: usize, t: &DecorationTables) {
    if word.last() == Some(&t.back(code)) {
        word.pop();
    } else {
        word.push(code);
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl CrossingDecider for OracleDecider {
    fn find(&self, w: &[usize], z: &[usize], d: &GenericDecoration, t: &DecorationTables) -> Option<Alignment> {
        if !is_double_ray_codes(w, t) || !is_double_ray_codes(z, t) {
            return None;
        }
        let emb = Embedding::new(d, t, self.options.seed);
        let (nw, nz) = (w.len(), z.len());
        let reach = 2 * (nw + nz) + 2;
        let wat = |p: isize| w[p.rem_euclid(nw as isize) as usize];

        // the ray R through the root, as forward and backward words
        let fw: Vec<usize> = (0..reach).map(|p| wat(p as isize)).collect();
        let bw: Vec<usize> = (1..=reach).map(|p| t.back(wat(-(p as isize)))).collect();
        let mut fstate = vec![emb.root()];
        for p in 0..reach {
            let next = emb.child(&fstate[p], &fw[..p], fw[p]);
            fstate.push(next);
        }
        let mut bstate = vec![fstate[0].clone()];
        for p in 0..reach {
            let next = emb.child(&bstate[p], &bw[..p], bw[p]);
            bstate.push(next);
        }
        let frot: Vec<Vec<usize>> = fstate.iter().map(|s| emb.rotation(s)).collect();
        let brot: Vec<Vec<usize>> = bstate.iter().map(|s| emb.rotation(s)).collect();
        let n = t.letter_of_sym.len();

        // side of the dart `dart` leaving R at R(p)
        let side = |p: isize, dart: usize| -> bool {
            let rot = if p >= 0 { &frot[p as usize] } else { &brot[(-p) as usize] };
            let a = t.sym[t.back(wat(p - 1))];
            let b = t.sym[wat(p)];
            on_right(|s| rot[s], n, a, b, t.sym[dart])
        };

        let span = (nw + nz + 2) as isize;
        let zi = inverse_codes(z, t);
        for (inverted, zv) in [(false, z), (true, zi.as_slice())] {
            let zat = |m: isize| zv[m.rem_euclid(nz as isize) as usize];
            for q in 0..nw {
                for j in 0..nz as isize {
                    let mut sides = [false, false];
                    let mut classify = |u: &[usize]| {
                        let lf = common_prefix(u, &fw);
                        let lb = common_prefix(u, &bw);
                        if lf == u.len() || lb == u.len() {
                            return;
                        }
                        let (p, dart) = if lf > 0 { (lf as isize, u[lf]) } else { (-(lb as isize), u[lb]) };
                        sides[side(p, dart) as usize] = true;
                    };
                    let start: Vec<usize> = fw[..q].to_vec();
                    let mut u = start.clone();
                    for m in j..j + span {
                        push_reduced(&mut u, zat(m), t);
                        classify(&u);
                    }
                    let mut u = start;
                    for m in (j - span..j).rev() {
                        push_reduced(&mut u, t.back(zat(m)), t);
                        classify(&u);
                    }
                    if sides[0] && sides[1] {
                        return Some(Alignment {
                            shared: Word::empty(),
                            w_in: t.letter(wat(q as isize - 1)),
                            w_out: t.letter(wat(q as isize)),
                            z_in: t.letter(zat(j - 1)),
                            z_out: t.letter(zat(j)),
                            w_offset: q,
                            z_offset: j as usize,
                            z_inverted: inverted,
                        });
                    }
                }
            }
        }
        None
    }
}
