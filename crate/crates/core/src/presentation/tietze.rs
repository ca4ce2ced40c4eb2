use super::{Letter, Presentation, PresentationError, Word};

/// Adds a generator `x` with the defining relator `x⁻¹uv`.
pub fn tietze_add_product_generator(
    p: &Presentation,
    u: Letter,
    v: Letter,
    name: &str,
) -> Result<Presentation, PresentationError> {
    for l in [u, v] {
        if l.gen >= p.rank() {
            return Err(PresentationError::LetterOutOfRange(l.gen));
        }
    }
    if p.generator_index(name).is_some() {
        return Err(PresentationError::DuplicateGenerator(name.to_string()));
    }
    let x = p.rank();
    let mut gens = p.generators().to_vec();
    gens.push(name.to_string());
    let mut rels = p.relators().to_vec();
    rels.push(Word::new(vec![Letter::neg(x), u, v]));
    Presentation::new(gens, rels)
}

/// One application of the "appears exactly once" elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundantRemoval {
    pub presentation: Presentation,
    /// Name of the eliminated generator.
    pub removed: String,
    /// Index of the dropped relator in the input presentation.
    pub relator: usize,
}

/// For each generator occurring exactly once across all relators, the
/// presentation without that generator and the relator containing it.
pub fn remove_obviously_redundant(p: &Presentation) -> Vec<RedundantRemoval> {
    let mut out = Vec::new();
    for s in 0..p.rank() {
        let mut hits = p.relators().iter().enumerate().filter(|(_, r)| r.occurrences(s) > 0);
        let Some((idx, r)) = hits.next() else { continue };
        if hits.next().is_some() || r.occurrences(s) != 1 {
            continue;
        }
        let gens: Vec<String> = p
            .generators()
            .iter()
            .enumerate()
            .filter(|(g, _)| *g != s)
            .map(|(_, n)| n.clone())
            .collect();
        let rels: Vec<Word> = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, w)| {
                w.iter()
                    .map(|l| Letter::new(if l.gen > s { l.gen - 1 } else { l.gen }, l.inverse))
                    .collect()
            })
            .collect();
        let presentation = Presentation::new(gens, rels).expect("removal keeps the presentation valid");
        out.push(RedundantRemoval { presentation, removed: p.generators()[s].clone(), relator: idx });
    }
    out
}
