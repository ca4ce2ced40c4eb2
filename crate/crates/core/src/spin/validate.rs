use std::collections::BTreeSet;

use super::{Condition, GenericDecoration, HingeSet, SpinError, SpinStructure, ValidationReport};
use crate::presentation::{symmetrized_alphabet, Letter, Presentation};

fn structure_report(c: &SpinStructure, name: &dyn Fn(Letter) -> String) -> ValidationReport {
    let mut report = ValidationReport::default();
    let alpha = c.alphabet();
    let blocks = c.blocks();
    let k = blocks.len();
    let n = alpha.len();

    let sets: Vec<BTreeSet<Letter>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    for (i, (b, s)) in blocks.iter().zip(&sets).enumerate() {
        if b.len() != s.len() {
            report.push(Condition::S2, format!("block {i} repeats a letter"));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if sets[i] == sets[j] {
                report.push(Condition::S2, format!("blocks {i} and {j} coincide"));
            }
        }
    }

    let inv = alpha.involutions();
    for g in 0..alpha.rank() {
        if inv.contains(g) {
            continue;
        }
        let up = sets.iter().filter(|s| s.contains(&Letter::pos(g))).count();
        let down = sets.iter().filter(|s| s.contains(&Letter::neg(g))).count();
        if up != down {
            report.push(
                Condition::S1,
                format!("{} lies in {up} blocks but {} in {down}", name(Letter::pos(g)), name(Letter::neg(g))),
            );
        }
    }

    // incidence graph: block nodes 0..k, letter nodes k..k+n
    let mut parent: Vec<usize> = (0..k + n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut edges = 0;
    for (i, s) in sets.iter().enumerate() {
        for l in s {
            let li = alpha.index_of(*l).expect("checked at construction");
            edges += 1;
            let (a, b) = (find(&mut parent, i), find(&mut parent, k + li));
            parent[a] = b;
        }
    }
    let roots: BTreeSet<usize> = (0..k + n).map(|x| find(&mut parent, x)).collect();
    if roots.len() != 1 {
        let uncovered: Vec<String> = alpha
            .letters()
            .iter()
            .filter(|l| !sets.iter().any(|s| s.contains(l)))
            .map(|&l| name(l))
            .collect();
        if uncovered.is_empty() {
            report.push(Condition::S2, "incidence graph is disconnected");
        } else {
            report.push(Condition::S2, format!("letters not covered: {}", uncovered.join(", ")));
        }
    } else if edges + 1 != k + n {
        report.push(Condition::S2, "incidence graph contains a cycle");
    }

    if report.ok() {
        for i in 0..k {
            for j in i + 1..k {
                if sets[i].intersection(&sets[j]).count() > 1 {
                    report.push(Condition::S2, format!("internal: blocks {i}, {j} share two letters"));
                }
            }
        }
        if k >= 2 {
            let hinges = c.hinge_set();
            for (i, s) in sets.iter().enumerate() {
                if !s.iter().any(|l| hinges.contains(*l)) {
                    report.push(Condition::S2, format!("internal: block {i} has no hinge"));
                }
            }
        }
    }
    report
}

/// Checks coverage, (S1), and that the block/letter incidence graph is a tree.
pub fn validate_spin_structure(p: &Presentation, c: &SpinStructure) -> Result<ValidationReport, SpinError> {
    if symmetrized_alphabet(p) != *c.alphabet() {
        return Err(SpinError::InvalidStructure("alphabet does not match the presentation".into()));
    }
    Ok(structure_report(c, &|l| p.format_letter(l)))
}

fn anonymous(l: Letter) -> String {
    format!("g{}{}", l.gen, if l.inverse { "^-1" } else { "" })
}

/// Letters lying in two or more blocks of a valid structure.
pub fn hinges(c: &SpinStructure) -> Result<HingeSet, SpinError> {
    let report = structure_report(c, &anonymous);
    if let Some(v) = report.violations.first() {
        return Err(SpinError::InvalidStructure(format!("{}: {}", v.condition, v.witness)));
    }
    Ok(c.hinge_set())
}

/// Structure checks plus σ support, μ bijectivity, and the involution rules.
pub fn validate_decoration(d: &GenericDecoration) -> ValidationReport {
    let p = d.presentation();
    let c = d.structure();
    let name = |l: Letter| p.format_letter(l);
    let mut report = structure_report(c, &name);
    let k = c.block_count();

    if d.sigma.len() != k {
        report.push(Condition::Decor, format!("{} cyclic orders for {k} blocks", d.sigma.len()));
    } else {
        for (i, (sigma, block)) in d.sigma.iter().zip(c.blocks()).enumerate() {
            let support: BTreeSet<Letter> = sigma.letters().iter().copied().collect();
            let want: BTreeSet<Letter> = block.iter().copied().collect();
            if sigma.has_duplicates() || support != want {
                report.push(Condition::Decor, format!("sigma({i}) does not list block {i} exactly once"));
            }
        }
    }

    let inv = c.alphabet().involutions();
    for g in 0..p.rank() {
        let x = Letter::pos(g);
        let domain = c.blocks_containing(x);
        let codomain = c.blocks_containing(inv.back(x));
        let map = &d.mu[g];
        for (&i, &j) in map {
            if !domain.contains(&i) {
                report.push(Condition::Decor, format!("mu({}, {i}) set but {} is not in block {i}", name(x), name(x)));
            }
            if !codomain.contains(&j) {
                report.push(
                    Condition::Decor,
                    format!("mu({}, {i}) = {j} but block {j} lacks {}", name(x), name(inv.back(x))),
                );
            }
        }
        for &i in &domain {
            if !map.contains_key(&i) {
                report.push(Condition::Decor, format!("mu({}, {i}) undefined", name(x)));
            }
        }
        let images: BTreeSet<usize> = map.values().copied().collect();
        if images.len() != map.len() {
            report.push(Condition::Decor, format!("mu({}, .) is not injective", name(x)));
        }
        if inv.contains(g) {
            for (&i, &j) in map {
                if map.get(&j) != Some(&i) {
                    report.push(Condition::Decor, format!("mu({}, .) is not an involution", name(x)));
                    break;
                }
                if d.tau[g].get(i) != d.tau[g].get(j) {
                    report.push(
                        Condition::Decor,
                        format!("tau({}, {i}) differs from tau at its partner block {j}", name(x)),
                    );
                    break;
                }
            }
        }
    }
    report
}

/// Result of looking up the block shared by the reverse of `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockLookup {
    Unique(usize),
    /// The reverse of `s` equals `t` and lies in several blocks.
    Ambiguous(Vec<usize>),
}

pub fn block_of_adjacent_letters(s: Letter, t: Letter, c: &SpinStructure) -> Result<BlockLookup, SpinError> {
    let inv = c.alphabet().involutions();
    let a = inv.back(s);
    let t = inv.normalize(t);
    let common: Vec<usize> = (0..c.block_count()).filter(|&i| c.contains(i, a) && c.contains(i, t)).collect();
    match common.len() {
        0 => Err(SpinError::NoBlock { s: anonymous(s), t: anonymous(t) }),
        1 => Ok(BlockLookup::Unique(common[0])),
        _ if a == t => Ok(BlockLookup::Ambiguous(common)),
        _ => Ok(BlockLookup::Unique(common[0])),
    }
}
