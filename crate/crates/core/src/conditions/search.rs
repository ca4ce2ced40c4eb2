use thiserror::Error;

use super::{check_special_with, CheckOptions};
use crate::presentation::{symmetrized_alphabet, Letter, Presentation};
use crate::spin::{CyclicOrder, SpecialDecoration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("decoration search stopped after {examined} candidates")]
pub struct SearchBudgetExceeded {
    pub examined: u64,
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Cyclic orders of `S′` up to rotation and reflection, each paired with every `τ`.
///
/// Orders start at the first letter of `S′`; of a reflected pair only the one
/// whose second letter precedes its last is kept. Orders vary slowest.
pub struct SpecialCandidates {
    presentation: Presentation,
    letters: Vec<Letter>,
    rest: Option<Vec<usize>>,
    tau: u64,
}

impl SpecialCandidates {
    pub fn new(p: &Presentation) -> Self {
        let letters = symmetrized_alphabet(p).letters().to_vec();
        let rest = if letters.is_empty() { None } else { Some((1..letters.len()).collect()) };
        SpecialCandidates { presentation: p.clone(), letters, rest, tau: 0 }
    }

    fn canonical(rest: &[usize]) -> bool {
        rest.len() < 2 || rest[0] < rest[rest.len() - 1]
    }
}

impl Iterator for SpecialCandidates {
    type Item = SpecialDecoration;

    fn next(&mut self) -> Option<SpecialDecoration> {
        let n = self.presentation.rank();
        loop {
            let rest = self.rest.as_mut()?;
            if self.tau >= 1 << n {
                self.tau = 0;
                if !next_permutation(rest) {
                    self.rest = None;
                    return None;
                }
                continue;
            }
            if !Self::canonical(rest) {
                self.tau = 1 << n;
                continue;
            }
            let mut order = vec![self.letters[0]];
            order.extend(rest.iter().map(|&i| self.letters[i]));
            // first generator is the most significant bit
            let tau = (0..n).map(|g| self.tau >> (n - 1 - g) & 1 == 1).collect();
            self.tau += 1;
            return Some(
                SpecialDecoration::new(self.presentation.clone(), CyclicOrder::new(order), tau)
                    .expect("tau has one entry per generator"),
            );
        }
    }
}

/// `(|S′| − 1)!/2 · 2^|S|`, with a single order when `|S′| ≤ 2`.
pub fn special_candidate_count(p: &Presentation) -> u128 {
    let m = symmetrized_alphabet(p).len() as u128;
    let orders: u128 = if m <= 2 { 1 } else { (1..m).product::<u128>() / 2 };
    orders << p.rank()
}

/// First accepted special decoration in candidate order.
pub fn search_special_decoration(
    p: &Presentation,
    max_candidates: Option<u64>,
) -> Result<Option<SpecialDecoration>, SearchBudgetExceeded> {
    let opts = CheckOptions { first_failure: true, ..CheckOptions::default() };
    let mut examined = 0u64;
    for d in SpecialCandidates::new(p) {
        if max_candidates.is_some_and(|m| examined >= m) {
            return Err(SearchBudgetExceeded { examined });
        }
        examined += 1;
        if check_special_with(p, &d, &opts).accepted() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::check_special;
    use crate::presentation::parse_presentation;

    #[test]
    fn candidate_counts() {
        for s in ["< a, b | b^2 >", "< n, e, s, w | n^2, e^2, s^2, w^2 >", "< a, b | >", "< a | a^2 >", "< a, b, c | >"] {
            let p = parse_presentation(s).unwrap();
            assert_eq!(SpecialCandidates::new(&p).count() as u128, special_candidate_count(&p), "{s}");
        }
        assert_eq!(special_candidate_count(&parse_presentation("< a, b | b^2 >").unwrap()), 4);
    }

    #[test]
    fn grid_found() {
        let p = parse_presentation("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >").unwrap();
        let d = search_special_decoration(&p, None).unwrap().unwrap();
        let want = CyclicOrder::new((0..4).map(Letter::pos).collect());
        assert!(d.sigma.eq_up_to_reflection(&want));
        assert_eq!(d.tau, vec![false; 4]);
        assert!(check_special(&p, &d).accepted());
    }

    #[test]
    fn k5_none() {
        let p = parse_presentation("< a, b | a^5, b^5, a^2 b^-1 >").unwrap();
        assert_eq!(search_special_decoration(&p, None).unwrap(), None);
    }

    #[test]
    fn triangle_found() {
        let p = parse_presentation("< a | a^3 >").unwrap();
        assert!(search_special_decoration(&p, None).unwrap().is_some());
    }

    #[test]
    fn budget() {
        let p = parse_presentation("< a, b | a^5, b^5, a^2 b^-1 >").unwrap();
        assert_eq!(search_special_decoration(&p, Some(3)), Err(SearchBudgetExceeded { examined: 3 }));
    }
}
