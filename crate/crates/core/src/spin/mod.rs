//! Spin structures (covers of the symmetrized alphabet by blocks) and the
//! per-block data that turns a presentation into an embedded one.

mod json;
mod tables;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{
    symmetrized_alphabet, Letter, Presentation, PresentationError, SymmetrizedAlphabet,
};

pub use json::Decoration;
pub use tables::{DecorationTables, NONE as NO_BLOCK};
pub use validate::{block_of_adjacent_letters, BlockLookup, hinges, validate_decoration, validate_spin_structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("`{0}` is not a letter of the symmetrized alphabet")]
    UnknownLetter(String),
    #[error("invalid spin structure: {0}")]
    InvalidStructure(String),
    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),
    #[error("no block contains both the reverse of `{s}` and `{t}`")]
    NoBlock { s: String, t: String },
    #[error("malformed decoration document: {0}")]
    Format(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Identifiers for the conditions checked across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    S1,
    S2,
    #[serde(rename = "sP1")]
    SP1,
    #[serde(rename = "sP2")]
    SP2,
    P1,
    P2,
    P3,
    P4,
    #[serde(rename = "DECOR")]
    Decor,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::S1 => "S1",
            Condition::S2 => "S2",
            Condition::SP1 => "sP1",
            Condition::SP2 => "sP2",
            Condition::P1 => "P1",
            Condition::P2 => "P2",
            Condition::P3 => "P3",
            Condition::P4 => "P4",
            Condition::Decor => "DECOR",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, condition: Condition, witness: impl Into<String>) {
        self.violations.push(Violation { condition, witness: witness.into() });
    }
}

/// A circular sequence of distinct letters. Equality ignores the starting point.
#[derive(Debug, Clone, Eq)]
pub struct CyclicOrder(Vec<Letter>);

impl CyclicOrder {
    pub fn new(letters: Vec<Letter>) -> Self {
        CyclicOrder(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, l: Letter) -> Option<usize> {
        self.0.iter().position(|&x| x == l)
    }

    pub fn reflected(&self) -> CyclicOrder {
        CyclicOrder(self.0.iter().rev().copied().collect())
    }

    /// The rotation starting at the least letter.
    pub fn normalized(&self) -> Vec<Letter> {
        let Some(start) = self.0.iter().enumerate().min_by_key(|(_, l)| **l).map(|(i, _)| i) else {
            return Vec::new();
        };
        self.0[start..].iter().chain(&self.0[..start]).copied().collect()
    }

    pub fn eq_up_to_reflection(&self, other: &CyclicOrder) -> bool {
        self == other || *self == other.reflected()
    }

    pub fn has_duplicates(&self) -> bool {
        let set: BTreeSet<_> = self.0.iter().collect();
        set.len() != self.0.len()
    }
}

impl PartialEq for CyclicOrder {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.normalized() == other.normalized()
    }
}

impl Hash for CyclicOrder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().hash(state);
    }
}

/// A cover `C = {B_1, …, B_k}` of `S′`. Blocks keep the order they were given in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinStructure {
    alphabet: SymmetrizedAlphabet,
    blocks: Vec<Vec<Letter>>,
}

impl SpinStructure {
    /// Fails only on letters outside `S′`; everything else is left to validation.
    pub fn new(alphabet: SymmetrizedAlphabet, blocks: Vec<Vec<Letter>>) -> Result<Self, SpinError> {
        for b in &blocks {
            for &l in b {
                if !alphabet.contains(l) {
                    return Err(SpinError::UnknownLetter(format!(
                        "{}{}",
                        l.gen,
                        if l.inverse { "^-1" } else { "" }
                    )));
                }
            }
        }
        Ok(SpinStructure { alphabet, blocks })
    }

    /// The structure with the single block `S′`.
    pub fn singleton(alphabet: SymmetrizedAlphabet) -> Self {
        let blocks = vec![alphabet.letters().to_vec()];
        SpinStructure { alphabet, blocks }
    }

    pub fn alphabet(&self) -> &SymmetrizedAlphabet {
        &self.alphabet
    }

    pub fn blocks(&self) -> &[Vec<Letter>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn contains(&self, block: usize, l: Letter) -> bool {
        let l = self.alphabet.involutions().normalize(l);
        self.blocks[block].contains(&l)
    }

    /// Indices of blocks containing `l` (normalized for involutions).
    pub fn blocks_containing(&self, l: Letter) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.contains(i, l)).collect()
    }

    /// Letters lying in at least two blocks. Meaningful for valid structures.
    pub fn hinge_set(&self) -> HingeSet {
        HingeSet(
            self.alphabet
                .letters()
                .iter()
                .copied()
                .filter(|&l| self.blocks_containing(l).len() >= 2)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HingeSet(BTreeSet<Letter>);

impl HingeSet {
    pub fn contains(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    pub fn members(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators having a hinge letter (either sign).
    pub fn generators(&self) -> BTreeSet<usize> {
        self.0.iter().map(|l| l.gen).collect()
    }
}

/// `(C, σ, τ, μ)` for a presentation.
///
/// `tau[g][i]` is the spin flag of generator `g` in block `i`; `mu[g]` maps
/// each block containing `g` to a block containing its reverse. Entries of
/// `mu` for generators lying in a single block are filled in automatically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDecoration {
    presentation: Presentation,
    structure: SpinStructure,
    pub sigma: Vec<CyclicOrder>,
    pub tau: Vec<Vec<bool>>,
    pub mu: Vec<BTreeMap<usize, usize>>,
}

impl GenericDecoration {
    pub fn new(
        presentation: Presentation,
        structure: SpinStructure,
        sigma: Vec<CyclicOrder>,
        tau: Vec<Vec<bool>>,
        mut mu: Vec<BTreeMap<usize, usize>>,
    ) -> Result<Self, SpinError> {
        if symmetrized_alphabet(&presentation) != *structure.alphabet() {
            return Err(SpinError::InvalidDecoration(
                "spin structure is over a different alphabet".into(),
            ));
        }
        let (n, k) = (presentation.rank(), structure.block_count());
        if tau.len() != n || tau.iter().any(|row| row.len() != k) {
            return Err(SpinError::InvalidDecoration(format!("tau must be {n} x {k}")));
        }
        if mu.len() > n {
            return Err(SpinError::InvalidDecoration("mu has entries for unknown generators".into()));
        }
        mu.resize_with(n, BTreeMap::new);
        let inv = structure.alphabet().involutions().clone();
        for (g, map) in mu.iter_mut().enumerate() {
            let from = structure.blocks_containing(Letter::pos(g));
            let to = structure.blocks_containing(inv.back(Letter::pos(g)));
            if from.len() == 1 && to.len() == 1 && map.is_empty() {
                map.insert(from[0], to[0]);
            }
        }
        Ok(GenericDecoration { presentation, structure, sigma, tau, mu })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn structure(&self) -> &SpinStructure {
        &self.structure
    }

    pub fn block_count(&self) -> usize {
        self.structure.block_count()
    }

    /// Same decoration with every `σ(i)` reflected.
    pub fn reflected(&self) -> Self {
        let mut d = self.clone();
        d.sigma = d.sigma.iter().map(|s| s.reflected()).collect();
        d
    }

    /// Same decoration over a different presentation with the same alphabet.
    pub fn with_presentation(&self, p: Presentation) -> Result<Self, SpinError> {
        GenericDecoration::new(p, self.structure.clone(), self.sigma.clone(), self.tau.clone(), self.mu.clone())
    }
}

/// One cyclic order of all of `S′` and a spin flag per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialDecoration {
    presentation: Presentation,
    pub sigma: CyclicOrder,
    pub tau: Vec<bool>,
}

impl SpecialDecoration {
    pub fn new(presentation: Presentation, sigma: CyclicOrder, tau: Vec<bool>) -> Result<Self, SpinError> {
        if tau.len() != presentation.rank() {
            return Err(SpinError::InvalidDecoration(format!(
                "tau must have {} entries",
                presentation.rank()
            )));
        }
        Ok(SpecialDecoration { presentation, sigma, tau })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let alpha = symmetrized_alphabet(&self.presentation);
        let support: BTreeSet<Letter> = self.sigma.letters().iter().copied().collect();
        let want: BTreeSet<Letter> = alpha.letters().iter().copied().collect();
        if self.sigma.has_duplicates() || support != want {
            report.push(Condition::Decor, "sigma must list every letter of S' exactly once");
        }
        report
    }

    pub fn reflected(&self) -> Self {
        SpecialDecoration { sigma: self.sigma.reflected(), ..self.clone() }
    }

    /// The generic decoration on the single-block structure `{S′}`.
    pub fn lift(&self) -> GenericDecoration {
        let alpha = symmetrized_alphabet(&self.presentation);
        let structure = SpinStructure::singleton(alpha);
        let n = self.presentation.rank();
        GenericDecoration::new(
            self.presentation.clone(),
            structure,
            vec![self.sigma.clone()],
            self.tau.iter().map(|&t| vec![t]).collect(),
            (0..n).map(|_| BTreeMap::from([(0, 0)])).collect(),
        )
        .expect("lift of a special decoration is well-formed")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::presentation::parse_presentation;

    pub fn figure2() -> GenericDecoration {
        Decoration::from_json(
            r#"{"presentation": "< a, b, c | b^2, a^3, c^3, a b a^-1 b, c b c >",
                "blocks": [["b","c","c^-1"],["b","a","a^-1"]],
                "sigma": [["b","c","c^-1"],["b","a^-1","a"]],
                "tau": [{"b":0,"c":0},{"b":1,"a":0}],
                "mu": {"b": {"0":0,"1":1}}}"#,
        )
        .unwrap()
        .into_generic()
    }

    pub fn grid() -> SpecialDecoration {
        let p = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >").unwrap();
        let sigma = CyclicOrder::new((0..4).map(Letter::pos).collect());
        SpecialDecoration::new(p, sigma, vec![false; 4]).unwrap()
    }
}
