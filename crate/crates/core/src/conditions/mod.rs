//! Recognition of special and generic planar presentations.

mod search;

use serde::Serialize;

use crate::crossing::{block_chain, codes, is_double_ray_codes, AlignmentDecider, BlockChain, CrossingDecider};
use crate::presentation::{
    cyclic_reduce, free_reduce, is_subword_of_rotation, InvolutionSet, Presentation, Word,
};
use crate::spin::{
    validate_decoration, Condition, DecorationTables, GenericDecoration, SpecialDecoration, SpinError,
    Violation,
};

pub use search::{search_special_decoration, special_candidate_count, SearchBudgetExceeded, SpecialCandidates};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub failures: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Accepted,
    Rejected,
}

impl Verdict {
    fn from_failures(failures: Vec<Violation>) -> Self {
        let kind = if failures.is_empty() { VerdictKind::Accepted } else { VerdictKind::Rejected };
        Verdict { kind, failures }
    }

    pub fn accepted(&self) -> bool {
        self.kind == VerdictKind::Accepted
    }

    pub fn fails(&self, c: Condition) -> bool {
        self.failures.iter().any(|v| v.condition == c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Also test each relator against its own translates.
    pub self_crossings: bool,
    /// Also forbid factors of rotations of inverses of other relators.
    pub strict_subwords: bool,
    /// Stop at the first failure.
    pub first_failure: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { self_crossings: true, strict_subwords: false, first_failure: false }
    }
}

/// A relator as the checks see it: involution letters positive, cyclically
/// reduced in the free product, except that `s²` for an involution `s` is kept.
fn relator_form(r: &Word, inv: &InvolutionSet) -> Word {
    let r = cyclic_reduce(&inv.normalize_word(r), &InvolutionSet::default());
    if is_square(&r, inv) {
        r
    } else {
        cyclic_reduce(&r, inv)
    }
}

/// Relators in checked form. Freely trivial relators are an error; relators
/// that only vanish through `s² = 1` carry no information and are dropped.
fn prepared(p: &Presentation, inv: &InvolutionSet) -> Result<Vec<Word>, usize> {
    let mut out = Vec::with_capacity(p.relators().len());
    for (k, r) in p.relators().iter().enumerate() {
        if free_reduce(r).is_empty() {
            return Err(k);
        }
        let r = relator_form(r, inv);
        if !r.is_empty() {
            out.push(r);
        }
    }
    Ok(out)
}

fn is_square(r: &Word, inv: &InvolutionSet) -> bool {
    r.len() == 2 && r[0] == r[1] && inv.contains(r[0].gen)
}

pub fn is_blocked(r: &Word, d: &GenericDecoration) -> Result<bool, SpinError> {
    Ok(blocked_chain(r, d)?.is_some())
}

/// The block chain of a blocked relator, `None` when it is not blocked.
pub fn blocked_chain(r: &Word, d: &GenericDecoration) -> Result<Option<BlockChain>, SpinError> {
    let t = DecorationTables::new(d)?;
    let inv = &t.involutions;
    let r = relator_form(r, inv);
    Ok(block_chain(&codes(&r, &t), &t).ok())
}

fn parity_even(r: &[usize], chain: &BlockChain, t: &DecorationTables) -> bool {
    let count = r.iter().zip(&chain.at_vertex).filter(|(&x, &b)| t.flip[x][b]).count();
    count % 2 == 0
}

/// Even number of spin-reversing letters along the relator. Squares of involutions pass.
pub fn reversal_parity_even(r: &Word, d: &GenericDecoration) -> Result<bool, crate::crossing::CrossingError> {
    let t = DecorationTables::new(d)?;
    let inv = &t.involutions;
    let r = relator_form(r, inv);
    if is_square(&r, inv) || r.is_empty() {
        return Ok(true);
    }
    let rc = codes(&r, &t);
    let chain = block_chain(&rc, &t).map_err(|reason| crate::crossing::CrossingError::NotBlocked {
        word: d.presentation().format_word(&r),
        reason,
    })?;
    Ok(parity_even(&rc, &chain, &t))
}

/// Special-decoration parity: `τ` summed over the letters.
pub fn special_parity_even(r: &Word, d: &SpecialDecoration) -> bool {
    let inv = crate::presentation::involution_set(d.presentation());
    let r = relator_form(r, &inv);
    if is_square(&r, &inv) {
        return true;
    }
    r.iter().filter(|l| d.tau[l.gen]).count() % 2 == 0
}

struct Failures {
    list: Vec<Violation>,
    first_only: bool,
}

impl Failures {
    fn push(&mut self, condition: Condition, witness: String) -> bool {
        self.list.push(Violation { condition, witness });
        self.first_only
    }
}

fn crossing_pairs(
    rels: &[Word],
    eligible: &[Option<Vec<usize>>],
    d: &GenericDecoration,
    t: &DecorationTables,
    opts: &CheckOptions,
    cond: Condition,
    out: &mut Failures,
) -> bool {
    let p = d.presentation();
    for i in 0..rels.len() {
        for j in i..rels.len() {
            if i == j && !opts.self_crossings {
                continue;
            }
            let (Some(w), Some(z)) = (&eligible[i], &eligible[j]) else { continue };
            if let Some(a) = AlignmentDecider.find(w, z, d, t) {
                let witness = format!(
                    "{} crosses {} along `{}`",
                    p.format_word(&rels[i]),
                    p.format_word(&rels[j]),
                    if a.shared.is_empty() { "1".to_string() } else { p.format_word(&a.shared) }
                );
                if out.push(cond, witness) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn check_special(p: &Presentation, d: &SpecialDecoration) -> Verdict {
    check_special_with(p, d, &CheckOptions::default())
}

pub fn check_special_with(p: &Presentation, d: &SpecialDecoration, opts: &CheckOptions) -> Verdict {
    let mut out = Failures { list: Vec::new(), first_only: opts.first_failure };
    let d = match SpecialDecoration::new(p.clone(), d.sigma.clone(), d.tau.clone()) {
        Ok(d) => d,
        Err(e) => {
            out.push(Condition::Decor, e.to_string());
            return Verdict::from_failures(out.list);
        }
    };
    for v in d.validate().violations {
        out.list.push(v);
    }
    if !out.list.is_empty() {
        return Verdict::from_failures(out.list);
    }
    let g = d.lift();
    let t = DecorationTables::new(&g).expect("valid special decorations lift to valid generic ones");
    let inv = t.involutions.clone();
    let rels = match prepared(p, &inv) {
        Ok(rels) => rels,
        Err(k) => {
            out.push(Condition::Decor, format!("relator {k} is trivial"));
            return Verdict::from_failures(out.list);
        }
    };
    let eligible: Vec<Option<Vec<usize>>> = rels
        .iter()
        .map(|r| Some(codes(r, &t)).filter(|c| is_double_ray_codes(c, &t)))
        .collect();
    if crossing_pairs(&rels, &eligible, &g, &t, opts, Condition::SP1, &mut out) {
        return Verdict::from_failures(out.list);
    }
    for r in &rels {
        if !special_parity_even(r, &d) && out.push(Condition::SP2, format!("{} reverses spin an odd number of times", p.format_word(r))) {
            break;
        }
    }
    Verdict::from_failures(out.list)
}

pub fn check_generic(p: &Presentation, d: &GenericDecoration) -> Verdict {
    check_generic_with(p, d, &CheckOptions::default())
}

pub fn check_generic_with(p: &Presentation, d: &GenericDecoration, opts: &CheckOptions) -> Verdict {
    let mut out = Failures { list: Vec::new(), first_only: opts.first_failure };
    let d = match d.with_presentation(p.clone()) {
        Ok(d) => d,
        Err(e) => {
            out.push(Condition::Decor, e.to_string());
            return Verdict::from_failures(out.list);
        }
    };
    let report = validate_decoration(&d);
    if !report.ok() {
        return Verdict::from_failures(report.violations);
    }
    check_generic_validated(p, &d, opts)
}

/// The generic check for a decoration already known to be valid over `p`.
pub(crate) fn check_generic_validated(p: &Presentation, d: &GenericDecoration, opts: &CheckOptions) -> Verdict {
    let mut out = Failures { list: Vec::new(), first_only: opts.first_failure };
    let t = DecorationTables::for_valid(d);
    let inv = t.involutions.clone();
    let rels = match prepared(p, &inv) {
        Ok(rels) => rels,
        Err(k) => {
            out.push(Condition::Decor, format!("relator {k} is trivial"));
            return Verdict::from_failures(out.list);
        }
    };

    // (P1)
    let mut chains: Vec<Option<(Vec<usize>, BlockChain)>> = Vec::with_capacity(rels.len());
    for r in &rels {
        if is_square(r, &inv) {
            chains.push(None);
            continue;
        }
        let rc = codes(r, &t);
        match block_chain(&rc, &t) {
            Ok(chain) => chains.push(Some((rc, chain))),
            Err(reason) => {
                chains.push(None);
                if out.push(Condition::P1, format!("{} is not blocked: {reason}", p.format_word(r))) {
                    return Verdict::from_failures(out.list);
                }
            }
        }
    }

    // (P2), among blocked relators that induce double rays
    let eligible: Vec<Option<Vec<usize>>> = chains
        .iter()
        .map(|c| c.as_ref().map(|(rc, _)| rc.clone()).filter(|rc| is_double_ray_codes(rc, &t)))
        .collect();
    if crossing_pairs(&rels, &eligible, d, &t, opts, Condition::P2, &mut out) {
        return Verdict::from_failures(out.list);
    }

    // (P3)
    for (r, c) in rels.iter().zip(&chains) {
        if let Some((rc, chain)) = c {
            if !parity_even(rc, chain, &t)
                && out.push(Condition::P3, format!("{} reverses spin an odd number of times", p.format_word(r)))
            {
                return Verdict::from_failures(out.list);
            }
        }
    }

    // (P4)
    for (i, a) in rels.iter().enumerate() {
        for (j, b) in rels.iter().enumerate() {
            if i == j {
                continue;
            }
            let hit = is_subword_of_rotation(a, b) || (opts.strict_subwords && is_subword_of_rotation(a, &b.inverse()));
            if hit
                && out.push(
                    Condition::P4,
                    format!("{} is a factor of a rotation of {}", p.format_word(a), p.format_word(b)),
                )
            {
                return Verdict::from_failures(out.list);
            }
        }
    }
    Verdict::from_failures(out.list)
}

/// Whether the special check and the generic check on `{S′}` reach the same verdict.
pub fn check_special_as_generic_consistency(p: &Presentation, d: &SpecialDecoration) -> bool {
    let special = check_special(p, d).accepted();
    let generic = match SpecialDecoration::new(p.clone(), d.sigma.clone(), d.tau.clone()) {
        Ok(d) if d.validate().ok() => check_generic(p, &d.lift()).accepted(),
        _ => false,
    };
    special == generic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Letter};
    use crate::spin::fixtures::{figure2, grid};
    use crate::spin::CyclicOrder;

    #[test]
    fn grid_accepted() {
        let d = grid();
        assert!(check_special(d.presentation(), &d).accepted());
        assert!(check_generic(d.presentation(), &d.lift()).accepted());
    }

    #[test]
    fn grid_with_ns_ew_rejected() {
        let d = grid();
        let p = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2, n s, e w >").unwrap();
        let v = check_special(&p, &d);
        assert!(v.fails(Condition::SP1));
        assert!(v.failures[0].witness.contains("n s crosses e w"), "{v:?}");
    }

    #[test]
    fn triangle_accepted() {
        let p = parse_presentation("< a | a^3 >").unwrap();
        let d = SpecialDecoration::new(p.clone(), CyclicOrder::new(vec![Letter::pos(0), Letter::neg(0)]), vec![false]).unwrap();
        assert!(check_special(&p, &d).accepted());
    }

    #[test]
    fn figure2_cbc_crosses_its_translate() {
        let d = figure2();
        let v = check_generic(d.presentation(), &d);
        assert_eq!(v.failures.len(), 1, "{v:?}");
        assert!(v.fails(Condition::P2));
        let no_self = CheckOptions { self_crossings: false, ..CheckOptions::default() };
        assert!(check_generic_with(d.presentation(), &d, &no_self).accepted());
        for r in d.presentation().relators() {
            assert!(is_blocked(r, &d).unwrap());
            assert!(reversal_parity_even(r, &d).unwrap());
        }
        let ca = d.presentation().parse_word("c a").unwrap();
        assert!(!is_blocked(&ca, &d).unwrap());
    }

    #[test]
    fn figure2_with_cbcb_accepted() {
        let d = figure2();
        let p = d.presentation();
        let rels: Vec<Word> = ["b^2", "a^3", "c^3", "a b a^-1 b", "c b c b"].iter().map(|s| p.parse_word(s).unwrap()).collect();
        let q = p.with_relators(rels).unwrap();
        let d = d.with_presentation(q.clone()).unwrap();
        let v = check_generic(&q, &d);
        assert!(v.accepted(), "{v:?}");
    }

    #[test]
    fn parity() {
        let p = parse_presentation("< a, b | a^4, b^2, a b a^-1 b >").unwrap();
        let sigma = CyclicOrder::new(vec![Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        let d = SpecialDecoration::new(p.clone(), sigma, vec![false, true]).unwrap();
        for r in p.relators() {
            assert!(special_parity_even(r, &d));
            assert!(reversal_parity_even(r, &d.lift()).unwrap());
        }
        let ab = p.parse_word("a b").unwrap();
        assert!(!special_parity_even(&ab, &d));
        assert!(!reversal_parity_even(&ab, &d.lift()).unwrap());
    }

    #[test]
    fn odd_relator_rejected_at_p3() {
        let p = parse_presentation("< a, b | b^2, a b >").unwrap();
        let sigma = CyclicOrder::new(vec![Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        let d = SpecialDecoration::new(p.clone(), sigma, vec![false, true]).unwrap();
        assert!(check_generic(&p, &d.lift()).fails(Condition::P3));
        assert!(check_special(&p, &d).fails(Condition::SP2));
        assert!(check_special_as_generic_consistency(&p, &d));
    }

    #[test]
    fn subword_rejected_at_p4() {
        let p = parse_presentation("< a, b, c | a b c, b c >").unwrap();
        let alpha = crate::presentation::symmetrized_alphabet(&p);
        let d = SpecialDecoration::new(p.clone(), CyclicOrder::new(alpha.letters().to_vec()), vec![false; 3]).unwrap();
        assert!(check_generic(&p, &d.lift()).fails(Condition::P4));
    }

    #[test]
    fn p4_is_where_special_and_generic_part() {
        let p = parse_presentation("< a | a^3, a >").unwrap();
        let d = SpecialDecoration::new(p.clone(), CyclicOrder::new(vec![Letter::pos(0), Letter::neg(0)]), vec![false]).unwrap();
        assert!(check_special(&p, &d).accepted());
        let g = check_generic(&p, &d.lift());
        assert_eq!(g.failures.iter().map(|f| f.condition).collect::<Vec<_>>(), vec![Condition::P4]);
        assert!(!check_special_as_generic_consistency(&p, &d));
    }

    #[test]
    fn involution_cancellation_inside_relators() {
        // a³b³ = ab³ once a² = 1; the Cayley graph is K3,3 either way
        for s in ["< a, b | a^2, a^3 b^3 >", "< a, b | a^2, a b^3 >", "< a, b | a^2, a b a^2 b^2 >"] {
            let p = parse_presentation(s).unwrap();
            assert_eq!(search_special_decoration(&p, None).unwrap(), None, "{s}");
        }
        let p = parse_presentation("< a, b | a^2, a^4, b^3 >").unwrap();
        assert!(search_special_decoration(&p, None).unwrap().is_some());
    }
}
