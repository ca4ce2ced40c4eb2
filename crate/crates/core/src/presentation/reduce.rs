use std::collections::BTreeSet;

use super::{InvolutionSet, Letter, Presentation, SymmetrizedAlphabet, Word};

fn cancels(x: Letter, y: Letter, inv: &InvolutionSet) -> bool {
    x.gen == y.gen && (x.inverse != y.inverse || inv.contains(x.gen))
}

/// Reduction in the free product of `Z` (for generators outside `I`) and
/// `Z/2` (for generators in `I`). Involution letters come out positive.
pub fn free_product_reduce(w: &Word, inv: &InvolutionSet) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.iter() {
        let l = inv.normalize(l);
        match out.last() {
            Some(&top) if cancels(top, l, inv) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word::new(out)
}

/// Plain free reduction.
pub fn free_reduce(w: &Word) -> Word {
    free_product_reduce(w, &InvolutionSet::default())
}

/// Reduces, then strips letters cancelling across the ends.
pub fn cyclic_reduce(w: &Word, inv: &InvolutionSet) -> Word {
    let r = free_product_reduce(w, inv);
    let (mut lo, mut hi) = (0, r.len());
    while hi - lo >= 2 && cancels(r[hi - 1], r[lo], inv) {
        lo += 1;
        hi -= 1;
    }
    Word::new(r[lo..hi].to_vec())
}

/// All distinct cyclic shifts; the empty word has the single rotation `ε`.
pub fn rotations(w: &Word) -> BTreeSet<Word> {
    if w.is_empty() {
        return BTreeSet::from([Word::empty()]);
    }
    (0..w.len()).map(|k| w.rotated(k)).collect()
}

/// Whether `w` is a contiguous factor of some rotation of `r`.
pub fn is_subword_of_rotation(w: &Word, r: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    if w.len() > r.len() || r.is_empty() {
        return false;
    }
    let n = r.len();
    (0..n).any(|start| (0..w.len()).all(|k| r[(start + k) % n] == w[k]))
}

/// Generators with a relator that freely reduces to `s²` or `s⁻²`.
pub fn involution_set(p: &Presentation) -> InvolutionSet {
    InvolutionSet::new(p.relators().iter().filter_map(|r| {
        let r = free_reduce(r);
        (r.len() == 2 && r[0] == r[1]).then(|| r[0].gen)
    }))
}

pub fn symmetrized_alphabet(p: &Presentation) -> SymmetrizedAlphabet {
    SymmetrizedAlphabet::new(p.rank(), involution_set(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    #[test]
    fn free_product_examples() {
        let p = parse_presentation("< a, b | >").unwrap();
        let none = InvolutionSet::default();
        assert_eq!(free_product_reduce(&w(&p, "a a^-1 b"), &none), w(&p, "b"));
        assert_eq!(free_product_reduce(&w(&p, "a b b^-1 a"), &none), w(&p, "a a"));

        let g = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >").unwrap();
        let i = involution_set(&g);
        assert_eq!(free_product_reduce(&w(&g, "n n e"), &i), w(&g, "e"));
        assert_eq!(free_product_reduce(&w(&g, "n n^-1 e^-1"), &i), w(&g, "e"));
    }

    #[test]
    fn cyclic_examples() {
        let p = parse_presentation("< a, b | >").unwrap();
        let none = InvolutionSet::default();
        assert_eq!(cyclic_reduce(&w(&p, "a b a^-1"), &none), w(&p, "b"));
        assert_eq!(cyclic_reduce(&w(&p, "a b"), &none), w(&p, "a b"));
        let g = parse_presentation("< n, e | n^2, e^2 >").unwrap();
        assert_eq!(cyclic_reduce(&w(&g, "n e n"), &involution_set(&g)), w(&g, "e"));
    }

    #[test]
    fn rotation_examples() {
        let p = parse_presentation("< a, b, c | >").unwrap();
        assert_eq!(rotations(&w(&p, "a b c")).len(), 3);
        assert_eq!(rotations(&w(&p, "a a")).len(), 1);
        assert_eq!(rotations(&Word::empty()), BTreeSet::from([Word::empty()]));
        assert!(is_subword_of_rotation(&w(&p, "c a"), &w(&p, "a b c")));
        assert!(!is_subword_of_rotation(&w(&p, "a a"), &w(&p, "a b c")));
        assert!(is_subword_of_rotation(&Word::empty(), &w(&p, "a b c")));
    }

    #[test]
    fn involution_examples() {
        let grid = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >").unwrap();
        assert_eq!(involution_set(&grid).len(), 4);
        let prism = parse_presentation("< a, b | a^4, b^2, a b a^-1 b >").unwrap();
        assert_eq!(involution_set(&prism), InvolutionSet::new([1]));
        let p = parse_presentation("< a, b | a b a b >").unwrap();
        assert!(involution_set(&p).is_empty());
        let q = parse_presentation("< a, b | a^-1 b b^-1 a^-1 >").unwrap();
        assert_eq!(involution_set(&q), InvolutionSet::new([0]));
    }

    #[test]
    fn alphabet_examples() {
        let p = parse_presentation("< a, b, c | a^2, b^2 >").unwrap();
        let s = symmetrized_alphabet(&p);
        assert_eq!(
            s.letters(),
            &[Letter::pos(0), Letter::pos(1), Letter::pos(2), Letter::neg(2)]
        );
        assert_eq!(symmetrized_alphabet(&parse_presentation("< a | >").unwrap()).len(), 2);
        assert_eq!(symmetrized_alphabet(&parse_presentation("< a | a^2 >").unwrap()).len(), 1);
    }
}
