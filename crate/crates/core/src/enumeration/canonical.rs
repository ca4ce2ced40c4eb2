use std::cmp::Ordering;
use std::fmt;

use crate::presentation::{cyclic_reduce, InvolutionSet, Letter, Presentation, Word};

/// Code of a letter in the canonical encoding: `2·gen + inverse`.
pub(crate) fn code(l: Letter) -> usize {
    2 * l.gen + l.inverse as usize
}

pub(crate) fn letter(code: usize) -> Letter {
    Letter::new(code / 2, code % 2 == 1)
}

/// Least rotation of a code sequence.
pub(crate) fn least_rotation(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut best: Option<Vec<usize>> = None;
    for k in 0..n.max(1) {
        let r: Vec<usize> = (0..n).map(|i| w[(i + k) % n]).collect();
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn relator_key(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Relators as sorted, distinct least rotations.
fn encode(relators: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut rels: Vec<Vec<usize>> = relators.map(|r| least_rotation(&r)).collect();
    rels.sort_by(|a, b| relator_key(a, b));
    rels.dedup();
    rels
}

/// All signed renamings of `n` generators: `(perm, flips)`.
pub(crate) fn signed_renamings(n: usize) -> Vec<(Vec<usize>, u32)> {
    let mut perms = vec![(0..n).collect::<Vec<_>>()];
    let mut p: Vec<usize> = (0..n).collect();
    while next_permutation(&mut p) {
        perms.push(p.clone());
    }
    let mut out = Vec::with_capacity(perms.len() << n);
    for perm in perms {
        for flips in 0..(1u32 << n) {
            out.push((perm.clone(), flips));
        }
    }
    out
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn rename(code: usize, perm: &[usize], flips: u32) -> usize {
    let (g, s) = (code / 2, code % 2);
    2 * perm[g] + (s ^ (flips >> g & 1) as usize)
}

fn renamed(rels: &[Vec<usize>], perm: &[usize], flips: u32) -> Vec<Vec<usize>> {
    encode(rels.iter().map(|r| r.iter().map(|&c| rename(c, perm, flips)).collect()))
}

pub(crate) fn encoding_cmp(a: &[Vec<usize>], b: &[Vec<usize>]) -> Ordering {
    let total = |x: &[Vec<usize>]| x.iter().map(|r| r.len()).sum::<usize>();
    total(a).cmp(&total(b)).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = relator_key(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    })
}

/// Whether an encoding (already sorted least rotations) is the least among its renamings.
pub(crate) fn is_canonical_encoding(rank: usize, rels: &[Vec<usize>], renamings: &[(Vec<usize>, u32)]) -> bool {
    debug_assert!(renamings.iter().all(|(p, _)| p.len() == rank));
    renamings.iter().all(|(perm, flips)| encoding_cmp(&renamed(rels, perm, *flips), rels) != Ordering::Less)
}

/// Default generator name for position `i`: `a`..`z`, then `g26`, `g27`, ...
pub fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// A presentation in canonical shape.
///
/// Relators are freely and cyclically reduced, empty and repeated relators
/// are dropped, each relator is its least rotation, relators are sorted by
/// length then letters, and generators are renamed (including inversion) to
/// the least such encoding. Generators are named `a, b, c, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    rank: usize,
    encoding: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub(crate) fn from_encoding(rank: usize, encoding: Vec<Vec<usize>>) -> Self {
        CanonicalForm { rank, encoding }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total_length(&self) -> usize {
        self.encoding.iter().map(|r| r.len()).sum()
    }

    pub fn relator_count(&self) -> usize {
        self.encoding.len()
    }

    pub fn encoding(&self) -> &[Vec<usize>] {
        &self.encoding
    }

    pub fn presentation(&self) -> Presentation {
        let gens = (0..self.rank).map(generator_name).collect();
        let rels = self.encoding.iter().map(|r| r.iter().map(|&c| letter(c)).collect()).collect();
        Presentation::new(gens, rels).expect("canonical names are valid")
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| encoding_cmp(&self.encoding, &other.encoding))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.presentation().fmt(f)
    }
}

pub fn canonical_form(p: &Presentation) -> CanonicalForm {
    let free = InvolutionSet::default();
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| cyclic_reduce(r, &free))
        .filter(|r| !r.is_empty())
        .map(|r: Word| r.iter().map(|&l| code(l)).collect())
        .collect();
    let n = p.rank();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for (perm, flips) in signed_renamings(n) {
        let cand = renamed(&rels, &perm, flips);
        if best.as_ref().is_none_or(|b| encoding_cmp(&cand, b) == Ordering::Less) {
            best = Some(cand);
        }
    }
    CanonicalForm { rank: n, encoding: best.unwrap_or_default() }
}
