//! Random decorations shared by the integration suites.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use ppk_core::enumeration::spin_structures;
use ppk_core::presentation::{cyclic_reduce, involution_set, InvolutionSet, Letter, Presentation, Word};
use ppk_core::spin::{validate_decoration, CyclicOrder, GenericDecoration, SpinStructure};

thread_local! {
    static STRUCTURES: RefCell<HashMap<String, Vec<SpinStructure>>> = RefCell::new(HashMap::new());
}

/// A valid generic decoration with at least two blocks on a random rank 1 to 3
/// presentation whose only relators are involution squares.
pub fn random_generic(rng: &mut impl Rng) -> Option<GenericDecoration> {
    let rank = rng.gen_range(1..=3);
    let names: Vec<String> = ["a", "b", "c"][..rank].iter().map(|s| s.to_string()).collect();
    let rels: Vec<Word> =
        (0..rank).filter(|_| rng.gen_bool(0.4)).map(|g| Word::new(vec![Letter::pos(g), Letter::pos(g)])).collect();
    let q = Presentation::new(names, rels).unwrap();
    let structures = STRUCTURES.with(|m| {
        m.borrow_mut()
            .entry(q.to_string())
            .or_insert_with(|| spin_structures(&q).into_iter().filter(|c| c.block_count() >= 2).collect())
            .clone()
    });
    let c = structures.choose(rng)?.clone();
    let inv = involution_set(&q);
    for _ in 0..200 {
        let sigma = c
            .blocks()
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.shuffle(rng);
                CyclicOrder::new(b)
            })
            .collect();
        let tau = (0..rank).map(|_| (0..c.block_count()).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let mu = (0..rank)
            .map(|g| {
                let from = c.blocks_containing(Letter::pos(g));
                let mut to = c.blocks_containing(inv.back(Letter::pos(g)));
                to.shuffle(rng);
                from.into_iter().zip(to).collect::<BTreeMap<usize, usize>>()
            })
            .collect();
        if let Ok(d) = GenericDecoration::new(q.clone(), c.clone(), sigma, tau, mu) {
            if validate_decoration(&d).ok() {
                return Some(d);
            }
        }
    }
    None
}

/// A nonempty cyclically reduced word of length at most `max`.
pub fn random_word(rng: &mut impl Rng, alpha: &[Letter], inv: &InvolutionSet, max: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max);
        let w = Word::new((0..len).map(|_| *alpha.choose(rng).unwrap()).collect());
        if cyclic_reduce(&w, inv) == w {
            return w;
        }
    }
}
