use super::{inverse_codes, is_double_ray_codes, on_right, Alignment, CrossingDecider};
use crate::presentation::Word;
use crate::registry::Named;
use crate::spin::{DecorationTables, GenericDecoration};

/// Decides crossing from the maximal common factors of `W^∞` and `Z^∞`, `(Z⁻¹)^∞`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlignmentDecider;

impl Named for AlignmentDecider {
    fn name(&self) -> &'static str {
        "alignment"
    }
}

/// Block holding the darts `back(s)` and `t`; unique for reduced pairs of a valid structure.
fn pair_block(t: &DecorationTables, s: usize, x: usize) -> Option<usize> {
    t.pair_blocks(s, x).next()
}

fn right_in_block(t: &DecorationTables, block: usize, reversed: bool, a: usize, b: usize, d: usize) -> bool {
    let n = t.sigma[block].len();
    let pos = |code: usize| {
        let p = t.pos[block][t.sym[code]];
        if reversed {
            n - 1 - p
        } else {
            p
        }
    };
    on_right(pos, n, a, b, d)
}

fn interleaved(t: &DecorationTables, block: usize, a: usize, b: usize, c: usize, d: usize) -> bool {
    right_in_block(t, block, false, a, b, c) != right_in_block(t, block, false, a, b, d)
}

impl CrossingDecider for AlignmentDecider {
    fn find(&self, w: &[usize], z: &[usize], _: &GenericDecoration, t: &DecorationTables) -> Option<Alignment> {
        if !is_double_ray_codes(w, t) || !is_double_ray_codes(z, t) {
            return None;
        }
        let (nw, nz) = (w.len(), z.len());
        let cutoff = nw + nz;
        let zi = inverse_codes(z, t);
        for (inverted, zv) in [(false, z), (true, zi.as_slice())] {
            for i in 0..nw {
                for j in 0..nz {
                    let s = w[(i + nw - 1) % nw];
                    let s2 = zv[(j + nz - 1) % nz];
                    if s == s2 {
                        continue;
                    }
                    let mut k = 0;
                    while k < cutoff && w[(i + k) % nw] == zv[(j + k) % nz] {
                        k += 1;
                    }
                    if k >= cutoff {
                        continue;
                    }
                    let out_w = w[(i + k) % nw];
                    let out_z = zv[(j + k) % nz];
                    let crosses = if k == 0 {
                        let (a, b, c, d) = (t.back(s), out_w, t.back(s2), out_z);
                        if a == c || a == d || b == c || b == d {
                            continue;
                        }
                        match (pair_block(t, s, out_w), pair_block(t, s2, out_z)) {
                            (Some(x), Some(y)) if x == y => interleaved(t, x, a, b, c, d),
                            _ => false,
                        }
                    } else {
                        let first = w[i % nw];
                        let last = w[(i + k - 1) % nw];
                        let start = (pair_block(t, s, first), pair_block(t, s2, first));
                        let end = (pair_block(t, last, out_w), pair_block(t, last, out_z));
                        match (start, end) {
                            ((Some(b0), Some(b0z)), (Some(bk), Some(bkz))) if b0 == b0z && bk == bkz => {
                                let in_side = right_in_block(t, b0, false, t.back(s), first, t.back(s2));
                                let mut block = b0;
                                let mut reversed = false;
                                for m in 0..k {
                                    let x = w[(i + m) % nw];
                                    reversed ^= t.flip[x][block];
                                    block = t.next_block[x][block];
                                }
                                debug_assert_eq!(block, bk);
                                let out_side = right_in_block(t, bk, reversed, t.back(last), out_w, out_z);
                                in_side != out_side
                            }
                            _ => false,
                        }
                    };
                    if crosses {
                        let shared: Word = (0..k).map(|m| t.letter(w[(i + m) % nw])).collect();
                        return Some(Alignment {
                            shared,
                            w_in: t.letter(s),
                            w_out: t.letter(out_w),
                            z_in: t.letter(s2),
                            z_out: t.letter(out_z),
                            w_offset: i,
                            z_offset: j,
                            z_inverted: inverted,
                        });
                    }
                }
            }
        }
        None
    }
}
