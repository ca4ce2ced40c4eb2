//! Enumeration of presentations, their decorations, and the planar ones.
//!
//! Presentations come out in the order (number of generators, total relator
//! length, encoding), one per canonical form. Decorations are enumerated per
//! presentation, so every accepted pair is reached after finitely many steps.

pub(crate) mod canonical;
mod decorations;

use std::collections::{BTreeSet, HashSet};

use serde_json::{json, Value};

use crate::conditions::{check_generic_validated, check_generic_with, check_special_with, CheckOptions};
use crate::presentation::{remove_obviously_redundant, Presentation};
use crate::spin::Decoration;

pub use canonical::{canonical_form, generator_name, CanonicalForm};
pub use decorations::{cyclic_orders, enumerate_decorations, spin_structures, GenericCandidates, Kind};

use canonical::{is_canonical_encoding, least_rotation, relator_key, signed_renamings};

/// Limits that make the enumeration finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_generators: usize,
    pub max_relators: usize,
    pub max_total_length: usize,
    /// Stop after this many emitted items.
    pub max_outputs: Option<usize>,
}

impl Budget {
    pub fn new(max_generators: usize, max_relators: usize, max_total_length: usize) -> Self {
        Budget { max_generators, max_relators, max_total_length, max_outputs: None }
    }
}

/// Cyclically reduced code words of length `len` over `rank` generators that
/// are their own least rotation, in increasing order.
fn necklaces(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let alphabet = 2 * rank;
    let mut out = Vec::new();
    let mut w = Vec::with_capacity(len);
    fn rec(alphabet: usize, len: usize, w: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.len() == len {
            let closes = len < 2 || w[len - 1] ^ 1 != w[0];
            if closes && least_rotation(w) == *w {
                out.push(w.clone());
            }
            return;
        }
        for c in 0..alphabet {
            if w.last().is_some_and(|&l| l ^ 1 == c) {
                continue;
            }
            w.push(c);
            rec(alphabet, len, w, out);
            w.pop();
        }
    }
    if len > 0 {
        rec(alphabet, len, &mut w, &mut out);
    }
    out
}

/// Canonical presentations with `rank` generators and total relator length `total`.
fn bucket(rank: usize, total: usize, max_relators: usize) -> Vec<CanonicalForm> {
    let words: Vec<Vec<Vec<usize>>> = (0..=total).map(|l| necklaces(rank, l)).collect();
    let renamings = signed_renamings(rank);
    let mut out = Vec::new();
    // relators in nondecreasing (length, index) order, strictly increasing overall
    fn rec(
        words: &[Vec<Vec<usize>>],
        remaining: usize,
        slots: usize,
        min: (usize, usize),
        chosen: &mut Vec<Vec<usize>>,
        emit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if remaining == 0 {
            emit(chosen);
            return;
        }
        if slots == 0 {
            return;
        }
        for len in min.0.max(1)..=remaining {
            let start = if len == min.0 { min.1 } else { 0 };
            for (i, w) in words[len].iter().enumerate().skip(start) {
                chosen.push(w.clone());
                rec(words, remaining - len, slots - 1, (len, i + 1), chosen, emit);
                chosen.pop();
            }
        }
    }
    let mut emit = |rels: &[Vec<usize>]| {
        if is_canonical_encoding(rank, rels, &renamings) {
            out.push(CanonicalForm::from_encoding(rank, rels.to_vec()));
        }
    };
    rec(&words, total, max_relators, (0, 0), &mut Vec::new(), &mut emit);
    out.sort();
    debug_assert!(out.iter().all(|c| c.encoding().windows(2).all(|w| relator_key(&w[0], &w[1]).is_lt())));
    out
}

/// Every canonical presentation within the budget, exactly once, in the
/// order (generators, total relator length, encoding). Ranks start at 1.
pub fn enumerate_presentations(b: Budget) -> impl Iterator<Item = CanonicalForm> {
    let limit = b.max_outputs.unwrap_or(usize::MAX);
    (1..=b.max_generators)
        .flat_map(move |n| (0..=b.max_total_length).map(move |l| (n, l)))
        .flat_map(move |(n, l)| bucket(n, l, b.max_relators))
        .take(limit)
}

/// One emitted planar presentation.
#[derive(Debug, Clone)]
pub struct PlanarItem {
    /// Canonical presentation; the decoration refers to its generator names.
    pub presentation: Presentation,
    /// The accepted decoration, or `None` for a descendant obtained by removals.
    pub decoration: Option<Decoration>,
    /// For descendants, the generic parent.
    pub parent: Option<Presentation>,
    /// For descendants, the removed generators in the parent's names, in order.
    pub removed: Vec<String>,
}

impl PlanarItem {
    pub fn to_value(&self) -> Value {
        json!({
            "presentation": self.presentation.to_string(),
            "decoration": self.decoration.as_ref().map_or(Value::Null, |d| d.to_value()),
            "parent": self.parent.as_ref().map_or(Value::Null, |p| Value::String(p.to_string())),
            "removed": self.removed,
        })
    }
}

/// Whether the decoration passes the checker for `kind`.
pub fn accepts(p: &Presentation, d: &Decoration, opts: &CheckOptions) -> bool {
    match d {
        Decoration::Special(s) => check_special_with(p, s, opts).accepted(),
        Decoration::Generic(g) => check_generic_with(p, g, opts).accepted(),
    }
}

/// Accepted decorations of one presentation, in enumeration order.
pub fn planar_decorations(p: &Presentation, kind: Kind, opts: &CheckOptions) -> Vec<Decoration> {
    let opts = CheckOptions { first_failure: true, ..*opts };
    // generated candidates are valid by construction
    enumerate_decorations(p, kind)
        .filter(|d| match d {
            Decoration::Generic(g) => check_generic_validated(p, g, &opts).accepted(),
            d => accepts(p, d, &opts),
        })
        .collect()
}

/// Presentations reachable by repeatedly removing obviously redundant
/// generators, each with its chain of removed names. Breadth first; each
/// canonical descendant appears once, with its shortest chain.
pub fn removal_descendants(p: &Presentation) -> Vec<(Presentation, Vec<String>)> {
    let mut seen = BTreeSet::from([canonical_form(p)]);
    let mut frontier = vec![(p.clone(), Vec::<String>::new())];
    let mut out = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (q, chain) in frontier {
            for r in remove_obviously_redundant(&q) {
                if seen.insert(canonical_form(&r.presentation)) {
                    let mut c = chain.clone();
                    c.push(r.removed.clone());
                    out.push((r.presentation.clone(), c.clone()));
                    next.push((r.presentation, c));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Items produced for one presentation. `seen_descendants` suppresses
/// descendants already emitted for an earlier parent.
pub fn planar_items_for(
    form: &CanonicalForm,
    kind: Kind,
    opts: &CheckOptions,
    seen_descendants: &mut HashSet<CanonicalForm>,
) -> Vec<PlanarItem> {
    let p = form.presentation();
    let accepted = planar_decorations(&p, kind, opts);
    let mut items: Vec<PlanarItem> = Vec::new();
    let has_any = !accepted.is_empty();
    for d in accepted {
        items.push(PlanarItem { presentation: p.clone(), decoration: Some(d), parent: None, removed: Vec::new() });
    }
    if kind == Kind::General && has_any {
        for (q, chain) in removal_descendants(&p) {
            let c = canonical_form(&q);
            if seen_descendants.insert(c.clone()) {
                items.push(PlanarItem { presentation: c.presentation(), decoration: None, parent: Some(p.clone()), removed: chain });
            }
        }
    }
    items
}

/// Planar presentations within the budget: every accepted (presentation,
/// decoration) pair, plus for `General` the removal descendants of each
/// accepted generic presentation.
pub fn enumerate_planar(kind: Kind, b: Budget) -> impl Iterator<Item = PlanarItem> {
    enumerate_planar_with(kind, b, CheckOptions::default())
}

pub fn enumerate_planar_with(kind: Kind, b: Budget, opts: CheckOptions) -> impl Iterator<Item = PlanarItem> {
    let limit = b.max_outputs.unwrap_or(usize::MAX);
    let forms = enumerate_presentations(Budget { max_outputs: None, ..b });
    let mut seen = HashSet::new();
    forms.flat_map(move |f| planar_items_for(&f, kind, &opts, &mut seen)).take(limit)
}
