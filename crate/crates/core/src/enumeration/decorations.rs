use std::collections::BTreeMap;

use super::canonical::next_permutation;
use crate::conditions::SpecialCandidates;
use crate::presentation::{symmetrized_alphabet, Letter, Presentation};
use crate::spin::{validate_decoration, validate_spin_structure, CyclicOrder, Decoration, GenericDecoration, SpinStructure};

/// Cyclic orders of `0..n` up to rotation and reflection, each starting at 0.
pub fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    if n <= 2 {
        return vec![(0..n).collect()];
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    loop {
        if rest[0] < rest[rest.len() - 1] {
            let mut o = vec![0];
            o.extend(&rest);
            out.push(o);
        }
        if !next_permutation(&mut rest) {
            return out;
        }
    }
}

fn extend_covers(
    masks: &[u64],
    start: usize,
    m: usize,
    full: u64,
    chosen: &mut Vec<u64>,
    size_sum: usize,
    out: &mut Vec<Vec<u64>>,
) {
    let k = chosen.len();
    if k > 0 && size_sum == k + m - 1 {
        let union = chosen.iter().fold(0, |a, &b| a | b);
        if union == full {
            out.push(chosen.clone());
        }
    }
    for (i, &mask) in masks.iter().enumerate().skip(start) {
        let s = mask.count_ones() as usize;
        // a further block adds s edges and one vertex to X
        if size_sum + s > k + 1 + m - 1 {
            continue;
        }
        chosen.push(mask);
        extend_covers(masks, i + 1, m, full, chosen, size_sum + s, out);
        chosen.pop();
    }
}

/// All valid spin structures on `p`, blocks listed in increasing bitmask order
/// (bit `j` is the `j`-th letter of `S′`), so each cover appears once.
pub fn spin_structures(p: &Presentation) -> Vec<SpinStructure> {
    let alpha = symmetrized_alphabet(p);
    let m = alpha.len();
    if m == 0 {
        return Vec::new();
    }
    assert!(m < 20, "alphabet too large to enumerate covers");
    let full = (1u64 << m) - 1;
    let masks: Vec<u64> = (1..=full).collect();
    let mut covers = Vec::new();
    extend_covers(&masks, 0, m, full, &mut Vec::new(), 0, &mut covers);
    let mut out = Vec::new();
    for cover in covers {
        let blocks = cover
            .iter()
            .map(|&mask| (0..m).filter(|j| mask >> j & 1 == 1).map(|j| alpha.letters()[j]).collect())
            .collect();
        let c = SpinStructure::new(alpha.clone(), blocks).expect("letters come from S'");
        if validate_spin_structure(p, &c).map(|r| r.ok()).unwrap_or(false) {
            out.push(c);
        }
    }
    out.sort_by_key(|c| c.block_count());
    out
}

/// Bijections `from → to`; for an involution only involutive ones.
fn pairings(from: &[usize], to: &[usize], involutive: bool) -> Vec<BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    if from.len() != to.len() {
        return out;
    }
    let mut perm: Vec<usize> = (0..to.len()).collect();
    loop {
        let map: BTreeMap<usize, usize> = from.iter().zip(&perm).map(|(&f, &t)| (f, to[t])).collect();
        if !involutive || map.iter().all(|(a, b)| map.get(b) == Some(a)) {
            out.push(map);
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

struct Choices {
    structure: SpinStructure,
    sigmas: Vec<Vec<CyclicOrder>>,
    /// `(generator, block)` entries of τ that matter
    tau_slots: Vec<(usize, usize)>,
    mus: Vec<Vec<BTreeMap<usize, usize>>>,
}

impl Choices {
    fn new(p: &Presentation, structure: SpinStructure) -> Self {
        let sigmas = structure
            .blocks()
            .iter()
            .map(|b| cyclic_orders(b.len()).into_iter().map(|o| CyclicOrder::new(o.iter().map(|&i| b[i]).collect())).collect())
            .collect();
        let inv = structure.alphabet().involutions().clone();
        let mut tau_slots = Vec::new();
        let mut mus = Vec::new();
        for g in 0..p.rank() {
            let from = structure.blocks_containing(Letter::pos(g));
            let to = structure.blocks_containing(inv.back(Letter::pos(g)));
            tau_slots.extend(from.iter().map(|&i| (g, i)));
            mus.push(pairings(&from, &to, inv.contains(g)));
        }
        Choices { structure, sigmas, tau_slots, mus }
    }

    fn radices(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.sigmas.iter().map(|s| s.len()).collect();
        r.extend(self.tau_slots.iter().map(|_| 2));
        r.extend(self.mus.iter().map(|m| m.len()));
        r
    }

    fn build(&self, p: &Presentation, digits: &[usize]) -> GenericDecoration {
        let k = self.structure.block_count();
        let (sd, rest) = digits.split_at(self.sigmas.len());
        let (td, md) = rest.split_at(self.tau_slots.len());
        let sigma = self.sigmas.iter().zip(sd).map(|(s, &d)| s[d].clone()).collect();
        let mut tau = vec![vec![false; k]; p.rank()];
        for (&(g, i), &d) in self.tau_slots.iter().zip(td) {
            tau[g][i] = d == 1;
        }
        let mu = self.mus.iter().zip(md).map(|(m, &d)| m[d].clone()).collect();
        GenericDecoration::new(p.clone(), self.structure.clone(), sigma, tau, mu).expect("shapes match")
    }
}

/// An involution's τ must agree across the blocks μ pairs.
fn tau_agrees_across_pairs(d: &GenericDecoration) -> bool {
    let inv = d.structure().alphabet().involutions();
    inv.members().all(|g| d.mu[g].iter().all(|(&i, &j)| d.tau[g][i] == d.tau[g][j]))
}

/// All generic decorations of a presentation: every valid structure, then
/// σ up to reflection per block, τ on the entries that matter, and every μ.
/// The last block's σ varies slowest; μ of the last generator fastest.
pub struct GenericCandidates {
    presentation: Presentation,
    structures: std::vec::IntoIter<SpinStructure>,
    current: Option<(Choices, Vec<usize>, Vec<usize>)>,
}

impl GenericCandidates {
    pub fn new(p: &Presentation) -> Self {
        GenericCandidates { presentation: p.clone(), structures: spin_structures(p).into_iter(), current: None }
    }
}

impl Iterator for GenericCandidates {
    type Item = GenericDecoration;

    fn next(&mut self) -> Option<GenericDecoration> {
        loop {
            if self.current.is_none() {
                let c = Choices::new(&self.presentation, self.structures.next()?);
                let radices = c.radices();
                if radices.contains(&0) {
                    continue;
                }
                let digits = vec![0; radices.len()];
                self.current = Some((c, radices, digits));
            }
            let (c, radices, digits) = self.current.as_mut().unwrap();
            let d = c.build(&self.presentation, digits);
            // odometer, last digit fastest
            let mut i = digits.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                self.current = None;
            }
            // the only way a candidate can be invalid
            if tau_agrees_across_pairs(&d) {
                debug_assert!(validate_decoration(&d).ok());
                return Some(d);
            }
        }
    }
}

/// Kind of planar presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Special,
    Generic,
    General,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Special => "special",
            Kind::Generic => "generic",
            Kind::General => "general",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "special" => Ok(Kind::Special),
            "generic" => Ok(Kind::Generic),
            "general" => Ok(Kind::General),
            _ => Err(format!("unknown kind `{s}` (expected special, generic or general)")),
        }
    }
}

/// Decorations of `p`: special candidates, or generic ones over every structure.
/// `General` enumerates the same decorations as `Generic`.
pub fn enumerate_decorations(p: &Presentation, kind: Kind) -> Box<dyn Iterator<Item = Decoration>> {
    match kind {
        Kind::Special => Box::new(SpecialCandidates::new(p).map(Decoration::Special)),
        Kind::Generic | Kind::General => Box::new(GenericCandidates::new(p).map(Decoration::Generic)),
    }
}
