//! Crossing of relator words in the decorated tree `T = Cay⟨S | s², s ∈ I⟩`.
//!
//! Two deciders are registered: `alignment`, which inspects maximal common
//! factors of the two periodic words, and `oracle`, which builds a window
//! of the embedded tree explicitly and classifies sides vertex by vertex.

mod alignment;
mod oracle;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{InvolutionSet, Letter, Presentation, Word};
use crate::registry::{Named, Registry};
use crate::spin::{DecorationTables, GenericDecoration, SpinError};

pub use alignment::AlignmentDecider;
pub use oracle::{OracleDecider, OracleOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingError {
    #[error("word `{word}` is not blocked: {reason}")]
    NotBlocked { word: String, reason: String },
    #[error(transparent)]
    Decoration(#[from] SpinError),
}

/// Where two words meet: `s U t` in `W^∞` against `s′ U t′` in `Z^∞` or `(Z⁻¹)^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub shared: Word,
    pub w_in: Letter,
    pub w_out: Letter,
    pub z_in: Letter,
    pub z_out: Letter,
    pub w_offset: usize,
    pub z_offset: usize,
    pub z_inverted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlignmentJson {
    pub shared: String,
    pub w_in: String,
    pub w_out: String,
    pub z_in: String,
    pub z_out: String,
    pub w_offset: usize,
    pub z_offset: usize,
    pub z_direction: &'static str,
}

impl Alignment {
    pub fn to_json(&self, p: &Presentation) -> AlignmentJson {
        AlignmentJson {
            shared: if self.shared.is_empty() { String::new() } else { p.format_word(&self.shared) },
            w_in: p.format_letter(self.w_in),
            w_out: p.format_letter(self.w_out),
            z_in: p.format_letter(self.z_in),
            z_out: p.format_letter(self.z_out),
            w_offset: self.w_offset,
            z_offset: self.z_offset,
            z_direction: if self.z_inverted { "inverted" } else { "forward" },
        }
    }
}

/// A crossing decision procedure.
pub trait CrossingDecider: Named + Send + Sync {
    /// `Some` witness when the words cross. Words must already be blocked.
    fn find(&self, w: &[usize], z: &[usize], d: &GenericDecoration, t: &DecorationTables) -> Option<Alignment>;
}

pub fn deciders() -> Registry<dyn CrossingDecider> {
    let mut r: Registry<dyn CrossingDecider> = Registry::new("crossing decider");
    r.register(Box::new(AlignmentDecider)).register(Box::new(OracleDecider::default()));
    r
}

/// Whether `W^∞` is a reduced bi-infinite walk in `T`.
pub fn induces_double_ray(w: &Word, inv: &InvolutionSet) -> bool {
    let n = w.len();
    n > 0
        && (0..n).all(|m| {
            let (x, y) = (inv.normalize(w[m]), inv.normalize(w[(m + 1) % n]));
            y != inv.back(x)
        })
}

pub(crate) fn codes(w: &Word, t: &DecorationTables) -> Vec<usize> {
    w.iter().map(|&l| t.code(l)).collect()
}

pub(crate) fn is_double_ray_codes(w: &[usize], t: &DecorationTables) -> bool {
    let n = w.len();
    n > 0 && (0..n).all(|m| w[(m + 1) % n] != t.back(w[m]))
}

pub(crate) fn inverse_codes(w: &[usize], t: &DecorationTables) -> Vec<usize> {
    w.iter().rev().map(|&c| t.back(c)).collect()
}

/// Per vertex of a relator, the block holding its two darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockChain {
    /// `at_vertex[m]` is the block of the pair (letter `m-1`, letter `m`), cyclically.
    pub at_vertex: Vec<usize>,
}

fn blocked_one_way(r: &[usize], t: &DecorationTables) -> Result<Vec<usize>, String> {
    let n = r.len();
    let name = |c: usize| {
        let l = t.letter(c);
        format!("{}{}", l.gen, if l.inverse { "-" } else { "+" })
    };
    let mut chain = Vec::with_capacity(n);
    for m in 0..n {
        let (s, x) = (r[(m + n - 1) % n], r[m]);
        let Some(first) = t.pair_blocks(s, x).next() else {
            return Err(format!("no block holds the pair at position {m} ({} then {})", name(s), name(x)));
        };
        chain.push(first);
        if !t.is_hinge_code(x) {
            continue;
        }
        let y = r[(m + 1) % n];
        if s == x && x == y && t.involutions.contains(x / 2) {
            continue;
        }
        let routed = t.pair_blocks(s, x).any(|i| {
            let j = t.next_block[x][i];
            j != crate::spin::NO_BLOCK && t.in_block(j, y)
        });
        if !routed {
            return Err(format!("hinge at position {m} is not routed to the next letter"));
        }
    }
    Ok(chain)
}

/// Blockedness of a relator (read in both directions) with its block chain.
pub fn block_chain(r: &[usize], t: &DecorationTables) -> Result<BlockChain, String> {
    if r.is_empty() {
        return Ok(BlockChain { at_vertex: Vec::new() });
    }
    let at_vertex = blocked_one_way(r, t)?;
    blocked_one_way(&inverse_codes(r, t), t)?;
    Ok(BlockChain { at_vertex })
}

fn prepare(w: &Word, z: &Word, d: &GenericDecoration) -> Result<(DecorationTables, Vec<usize>, Vec<usize>), CrossingError> {
    let t = DecorationTables::new(d)?;
    let (wc, zc) = (codes(w, &t), codes(z, &t));
    for (word, c) in [(w, &wc), (z, &zc)] {
        if let Err(reason) = block_chain(c, &t) {
            return Err(CrossingError::NotBlocked { word: d.presentation().format_word(word), reason });
        }
    }
    Ok((t, wc, zc))
}

/// Runs a registered decider on words of `d`'s presentation, checking blockedness first.
pub fn find_crossing_with(
    decider: &dyn CrossingDecider,
    w: &Word,
    z: &Word,
    d: &GenericDecoration,
) -> Result<Option<Alignment>, CrossingError> {
    let (t, wc, zc) = prepare(w, z, d)?;
    Ok(decider.find(&wc, &zc, d, &t))
}

pub fn decide_crossing(w: &Word, z: &Word, d: &GenericDecoration) -> Result<bool, CrossingError> {
    Ok(find_crossing_with(&AlignmentDecider, w, z, d)?.is_some())
}

pub fn crossing_oracle(w: &Word, z: &Word, d: &GenericDecoration) -> Result<bool, CrossingError> {
    Ok(find_crossing_with(&OracleDecider::default(), w, z, d)?.is_some())
}

/// Position of `d` relative to a walk entering by `a` and leaving by `b` at a
/// vertex whose clockwise rotation places symbol `x` at `pos(x)`: true when
/// `d` lies strictly clockwise after `b` and before `a`.
pub(crate) fn on_right(pos: impl Fn(usize) -> usize, len: usize, a: usize, b: usize, d: usize) -> bool {
    let pb = pos(b);
    let off = |x: usize| (pos(x) + len - pb) % len;
    off(d) < off(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::spin::fixtures::{figure2, grid};

    #[test]
    fn double_rays() {
        let g = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2 >").unwrap();
        let i = crate::presentation::involution_set(&g);
        assert!(induces_double_ray(&g.parse_word("n s").unwrap(), &i));
        assert!(!induces_double_ray(&g.parse_word("n n").unwrap(), &i));
        let p = parse_presentation("< a, b | b^2 >").unwrap();
        let i = crate::presentation::involution_set(&p);
        assert!(induces_double_ray(&p.parse_word("a b a^-1 b").unwrap(), &i));
        assert!(!induces_double_ray(&p.parse_word("a a^-1").unwrap(), &i));
        assert!(!induces_double_ray(&Word::empty(), &i));
    }

    #[test]
    fn grid_examples() {
        let d = grid().lift();
        let p = d.presentation().clone();
        let w = |s: &str| p.parse_word(s).unwrap();
        assert!(decide_crossing(&w("n s"), &w("e w"), &d).unwrap());
        assert!(!decide_crossing(&w("n e s w"), &w("n e s w"), &d).unwrap());
        assert!(!decide_crossing(&w("n e s w"), &w("n s"), &d).unwrap());
        for f in [decide_crossing, crossing_oracle] {
            assert!(f(&w("n s"), &w("e w"), &d).unwrap());
            assert!(!f(&w("n e s w"), &w("e w"), &d).unwrap());
        }
    }

    #[test]
    fn single_ray_never_crosses() {
        let p = parse_presentation("< a | a^3 >").unwrap();
        let sigma = crate::spin::CyclicOrder::new(vec![Letter::pos(0), Letter::neg(0)]);
        let d = crate::spin::SpecialDecoration::new(p.clone(), sigma, vec![false]).unwrap().lift();
        let a3 = p.parse_word("a^3").unwrap();
        assert!(!decide_crossing(&a3, &a3, &d).unwrap());
        assert!(!crossing_oracle(&a3, &a3, &d).unwrap());
    }

    #[test]
    fn figure2_blocked() {
        let d = figure2();
        let t = DecorationTables::new(&d).unwrap();
        let p = d.presentation();
        for r in ["c b c", "a b a^-1 b"] {
            assert!(block_chain(&codes(&p.parse_word(r).unwrap(), &t), &t).is_ok(), "{r}");
        }
        assert!(block_chain(&codes(&p.parse_word("c a").unwrap(), &t), &t).is_err());
        let err = decide_crossing(&p.parse_word("c a").unwrap(), &p.parse_word("c b c").unwrap(), &d);
        assert!(matches!(err, Err(CrossingError::NotBlocked { .. })));
    }

    #[test]
    fn registry_has_both() {
        let r = deciders();
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["alignment", "oracle"]);
        assert_eq!(r.default_entry().name(), "alignment");
    }
}
