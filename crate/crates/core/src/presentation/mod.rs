//! Words, relators and group presentations `< S | R >`.
//!
//! Generators are referred to by index into the owning presentation's
//! generator list; a [`Letter`] is a generator index plus a sign. Names only
//! matter at the text boundary (parsing and formatting).

mod parse;
mod reduce;
mod tietze;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

pub use parse::{parse_presentation, parse_word};
pub use reduce::{
    cyclic_reduce, free_product_reduce, free_reduce, involution_set, is_subword_of_rotation,
    rotations, symmetrized_alphabet,
};
pub use tietze::{remove_obviously_redundant, tietze_add_product_generator, RedundantRemoval};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("letter refers to generator #{0}, which does not exist")]
    LetterOutOfRange(usize),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub const fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A finite word over `S ∪ S⁻¹`. No reducedness is implied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// The formal inverse: letters reversed and each inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Number of occurrences of generator `gen`, as itself or its inverse.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A group presentation with an ordered generator list and an ordered relator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
        _ => false,
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_identifier(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(PresentationError::LetterOutOfRange(l.gen));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Convenience constructor taking generator names as `&str`.
    pub fn from_parts(generators: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new(generators.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// True when every generator name is a single character, which is when
    /// relators may be written without separating whitespace.
    pub fn compact_names(&self) -> bool {
        self.generators.iter().all(|g| g.len() == 1)
    }

    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new(self.generators.clone(), relators)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word(self, text)
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.generators[l.gen])
        } else {
            self.generators[l.gen].clone()
        }
    }

    /// Canonical text form of a word: whitespace separated terms, runs of a
    /// repeated letter collapsed into a power. The empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w[i];
            let mut j = i + 1;
            while j < w.len() && w[j] == l {
                j += 1;
            }
            let run = j - i;
            let name = &self.generators[l.gen];
            terms.push(match (run, l.inverse) {
                (1, false) => name.clone(),
                (1, true) => format!("{name}^-1"),
                (n, false) => format!("{name}^{n}"),
                (n, true) => format!("{name}^-{n}"),
            });
            i = j;
        }
        terms.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        if self.relators.is_empty() {
            return write!(f, " >");
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, " {} >", rels.join(", "))
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

/// Generators `s` with an explicit relator `s²` or `s⁻²` (after free reduction).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InvolutionSet(BTreeSet<usize>);

impl InvolutionSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        InvolutionSet(members.into_iter().collect())
    }

    pub fn contains(&self, gen: usize) -> bool {
        self.0.contains(&gen)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The symbol of `S′` naming this letter; `s⁻¹` and `s` coincide for involutions.
    pub fn normalize(&self, l: Letter) -> Letter {
        if l.inverse && self.contains(l.gen) {
            l.inv()
        } else {
            l
        }
    }

    /// The label of the reverse dart when `l` is traversed in the tree
    /// `Cay⟨S | s², s ∈ I⟩`.
    pub fn back(&self, l: Letter) -> Letter {
        self.normalize(l.inv())
    }

    pub fn normalize_word(&self, w: &Word) -> Word {
        w.iter().map(|&l| self.normalize(l)).collect()
    }
}

/// The ordered alphabet `S′ = S ∪ (S \ I)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetrizedAlphabet {
    letters: Vec<Letter>,
    involutions: InvolutionSet,
}

impl SymmetrizedAlphabet {
    pub fn new(rank: usize, involutions: InvolutionSet) -> Self {
        let mut letters: Vec<Letter> = (0..rank).map(Letter::pos).collect();
        letters.extend((0..rank).filter(|g| !involutions.contains(*g)).map(Letter::neg));
        SymmetrizedAlphabet { letters, involutions }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn involutions(&self) -> &InvolutionSet {
        &self.involutions
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.index_of(l).is_some()
    }

    /// Index of a letter in `S′`. Inverses of involutions are not members.
    pub fn index_of(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|&x| x == l)
    }

    pub fn rank(&self) -> usize {
        self.letters.iter().filter(|l| !l.inverse).count()
    }
}
