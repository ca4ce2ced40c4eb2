use super::{validate_decoration, GenericDecoration, SpinError};
use crate::presentation::{InvolutionSet, Letter};

pub const NONE: usize = usize::MAX;

/// Flat lookup tables derived from a valid decoration.
///
/// Walk letters are addressed by code `2·gen + inverse`, with involution
/// letters normalized to their positive code. `S′` symbols are addressed by
/// their index in the alphabet.
#[derive(Debug, Clone)]
pub struct DecorationTables {
    pub rank: usize,
    pub blocks: usize,
    pub involutions: InvolutionSet,
    /// symbol index of each code
    pub sym: Vec<usize>,
    pub letter_of_sym: Vec<Letter>,
    pub blocks_of: Vec<Vec<usize>>,
    /// position of a symbol in `σ(block)`, or `NONE`
    pub pos: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<usize>>,
    /// block continuing `block` after traversing the letter, or `NONE`
    pub next_block: Vec<Vec<usize>>,
    /// whether traversing the letter out of `block` reverses spin
    pub flip: Vec<Vec<bool>>,
    pub is_hinge: Vec<bool>,
}

impl DecorationTables {
    pub fn new(d: &GenericDecoration) -> Result<Self, SpinError> {
        let report = validate_decoration(d);
        if let Some(v) = report.violations.first() {
            return Err(SpinError::InvalidDecoration(format!("{}: {}", v.condition, v.witness)));
        }
        Ok(Self::for_valid(d))
    }

    /// Tables of a decoration that already passed validation.
    pub(crate) fn for_valid(d: &GenericDecoration) -> Self {
        let c = d.structure();
        let alpha = c.alphabet();
        let inv = alpha.involutions().clone();
        let rank = d.presentation().rank();
        let k = c.block_count();

        let sym: Vec<usize> = (0..2 * rank)
            .map(|code| alpha.index_of(inv.normalize(Letter::new(code / 2, code % 2 == 1))).unwrap())
            .collect();
        let letter_of_sym = alpha.letters().to_vec();
        let blocks_of: Vec<Vec<usize>> = letter_of_sym.iter().map(|&l| c.blocks_containing(l)).collect();
        let sigma: Vec<Vec<usize>> = d
            .sigma
            .iter()
            .map(|o| o.letters().iter().map(|&l| alpha.index_of(l).unwrap()).collect())
            .collect();
        let mut pos = vec![vec![NONE; letter_of_sym.len()]; k];
        for (b, order) in sigma.iter().enumerate() {
            for (p, &s) in order.iter().enumerate() {
                pos[b][s] = p;
            }
        }

        let mut next_block = vec![vec![NONE; k]; 2 * rank];
        let mut flip = vec![vec![false; k]; 2 * rank];
        for g in 0..rank {
            for (&m, &j) in &d.mu[g] {
                next_block[2 * g][m] = j;
                flip[2 * g][m] = d.tau[g][m];
                if inv.contains(g) {
                    next_block[2 * g + 1][m] = j;
                    flip[2 * g + 1][m] = d.tau[g][m];
                } else {
                    next_block[2 * g + 1][j] = m;
                    flip[2 * g + 1][j] = d.tau[g][m];
                }
            }
        }
        let is_hinge = blocks_of.iter().map(|b| b.len() >= 2).collect();
        DecorationTables {
            rank,
            blocks: k,
            involutions: inv,
            sym,
            letter_of_sym,
            blocks_of,
            pos,
            sigma,
            next_block,
            flip,
            is_hinge,
        }
    }

    pub fn code(&self, l: Letter) -> usize {
        let l = self.involutions.normalize(l);
        2 * l.gen + l.inverse as usize
    }

    pub fn letter(&self, code: usize) -> Letter {
        self.involutions.normalize(Letter::new(code / 2, code % 2 == 1))
    }

    /// Code of the reverse dart of a traversal with this code.
    pub fn back(&self, code: usize) -> usize {
        if self.involutions.contains(code / 2) {
            code & !1
        } else {
            code ^ 1
        }
    }

    pub fn in_block(&self, block: usize, code: usize) -> bool {
        self.pos[block][self.sym[code]] != NONE
    }

    /// Blocks containing both the reverse of `s` and `t`.
    pub fn pair_blocks(&self, s: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        let a = self.sym[self.back(s)];
        let b = self.sym[t];
        self.blocks_of[a].iter().copied().filter(move |&i| self.pos[i][b] != NONE)
    }

    pub fn is_hinge_code(&self, code: usize) -> bool {
        self.is_hinge[self.sym[code]]
    }
}
