//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported but do not fail the run;
//! any other failure, or a known failure that starts passing, does.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{random_generic, random_word};
use ppk_core::cayley::{build_cayley_graph, coset_enumerate, ColoredGraph, Edge, EdgeKind};
use ppk_core::conditions::{
    check_generic, check_special_as_generic_consistency, search_special_decoration,
    special_candidate_count, SpecialCandidates,
};
use ppk_core::crossing::{crossing_oracle, decide_crossing};
use ppk_core::embedding::{
    check_consistent, color_isomorphic, cycle_space_rank, extract_special_presentation, hinge_separation,
    planarity_test, relator_span_rank, Planarity,
};
use ppk_core::enumeration::{canonical_form, enumerate_planar, enumerate_presentations, Budget, Kind};
use ppk_core::presentation::{
    cyclic_reduce, involution_set, parse_presentation, symmetrized_alphabet, InvolutionSet, Letter, Presentation, Word,
};
use ppk_core::spin::{
    hinges, Condition, validate_spin_structure, CyclicOrder, Decoration, SpecialDecoration,
};

/// Criteria expected to fail; see the project notes for the analysis.
const KNOWN_FAILURES: &[u32] = &[3, 9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Outcome)> = vec![
        (1, "square-grid crossing facts", Duration::from_secs(1), grid_crossings),
        (2, "fast crossing decider agrees with the oracle", Duration::from_secs(180), oracle_equivalence),
        (3, "figure-2 generic decoration accepted", Duration::from_secs(5), figure2),
        (4, "special decoration search", Duration::from_secs(10), special_search),
        (5, "coset enumeration anchors", Duration::from_secs(5), coset_anchors),
        (6, "planar presentations give planar Cayley graphs", Duration::from_secs(300), planar_end_to_end),
        (7, "cube: consistency and extraction", Duration::from_secs(5), cube_extraction),
        (8, "relators span the cycle space", Duration::from_secs(60), cycle_space),
        (9, "special check equals generic check on one block", Duration::from_secs(60), special_generic_coherence),
        (10, "hinged fixtures separate, 3-connected ones do not", Duration::from_secs(5), hinge_fixtures),
        (11, "presentation enumeration completeness", Duration::from_secs(60), enumeration_completeness),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if took > limit {
            o.pass = false;
            o.detail = format!("{}; took {took:.1?}, limit {limit:?}", o.detail);
        }
        let known = KNOWN_FAILURES.contains(&id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if known { " [known failure]" } else { "" };
        println!("{tag} {id:>2} {name}: {} ({took:.2?}){note}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}

fn p(s: &str) -> Presentation {
    parse_presentation(s).unwrap()
}

fn graph_of(q: &Presentation, max: usize) -> Option<ColoredGraph> {
    let t = coset_enumerate(q, max).ok()?;
    build_cayley_graph(q, &t).ok()
}

/// Cyclically reduced words of length 1..=max over `S′`.
fn reduced_words(rank: usize, inv: &InvolutionSet, max: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| if inv.contains(g) { vec![Letter::pos(g)] } else { vec![Letter::pos(g), Letter::neg(g)] })
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            let w = Word::new(w.clone());
            if cyclic_reduce(&w, inv) == w {
                out.push(w);
            }
        }
        layer = next;
    }
    out
}

fn grid_crossings() -> Outcome {
    let q = p("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >");
    let d = SpecialDecoration::new(q.clone(), CyclicOrder::new((0..4).map(Letter::pos).collect()), vec![false; 4])
        .unwrap()
        .lift();
    let word = |s: &str| q.parse_word(s).unwrap();
    let mut bad = Vec::new();
    if decide_crossing(&word("n s"), &word("e w"), &d) != Ok(true) {
        bad.push("n s vs e w".to_string());
    }
    let inv = involution_set(&q);
    let contains_nw = |w: &Word| {
        let l = w.letters();
        (0..l.len()).any(|i| l[i] == Letter::pos(0) && l[(i + 1) % l.len()] == Letter::pos(3))
    };
    let mut pool: Vec<Word> = reduced_words(4, &inv, 4).into_iter().filter(|w| !contains_nw(w)).collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
    let mut zs = vec![word("n e s w"), word("n s"), word("e w")];
    zs.extend(pool.into_iter().take(20));
    let face = word("n e s w");
    for z in &zs {
        if decide_crossing(&face, z, &d) != Ok(false) {
            bad.push(format!("n e s w vs {}", q.format_word(z)));
        }
    }
    outcome(bad.is_empty(), format!("{} pairs checked, mismatches: {bad:?}", zs.len() + 1))
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    let mut mismatches = Vec::new();
    for invs in [vec![], vec![0], vec![1], vec![0, 1]] {
        let rels = invs.iter().map(|&g| Word::new(vec![Letter::pos(g), Letter::pos(g)])).collect();
        let q = Presentation::from_parts(&["a", "b"], rels).unwrap();
        let inv = involution_set(&q);
        let words = reduced_words(2, &inv, 4);
        let alpha = symmetrized_alphabet(&q).letters().to_vec();
        let mut rest: Vec<usize> = (1..alpha.len()).collect();
        loop {
            let mut order = vec![alpha[0]];
            order.extend(rest.iter().map(|&i| alpha[i]));
            for tau in 0..4u8 {
                let d = SpecialDecoration::new(q.clone(), CyclicOrder::new(order.clone()), vec![tau & 1 == 1, tau & 2 == 2])
                    .unwrap()
                    .lift();
                for w in &words {
                    for z in &words {
                        total += 1;
                        if decide_crossing(w, z, &d) != crossing_oracle(w, z, &d) && mismatches.len() < 5 {
                            mismatches.push(format!("{order:?} {} / {}", q.format_word(w), q.format_word(z)));
                        }
                    }
                }
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut random = 0;
    while random < 500 {
        let Some(d) = random_generic(&mut rng) else { continue };
        let q = d.presentation().clone();
        let inv = involution_set(&q);
        let alpha = symmetrized_alphabet(&q).letters().to_vec();
        let (w, z) = (random_word(&mut rng, &alpha, &inv, 5), random_word(&mut rng, &alpha, &inv, 5));
        random += 1;
        total += 1;
        if decide_crossing(&w, &z, &d) != crossing_oracle(&w, &z, &d) && mismatches.len() < 5 {
            mismatches.push(format!("generic {} / {}", q.format_word(&w), q.format_word(&z)));
        }
    }
    outcome(mismatches.is_empty(), format!("{total} pairs, mismatches: {mismatches:?}"))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn figure2() -> Outcome {
    let d = Decoration::from_json(
        r#"{"presentation": "< a, b, c | b^2, a^3, c^3, a b a^-1 b, c b c >",
            "blocks": [["b","c","c^-1"],["b","a","a^-1"]],
            "sigma": [["b","c","c^-1"],["b","a^-1","a"]],
            "tau": [{"b":0,"c":0},{"b":1,"a":0}],
            "mu": {"b": {"0":0,"1":1}}}"#,
    )
    .unwrap()
    .into_generic();
    let q = d.presentation();
    let structure_ok = validate_spin_structure(q, d.structure()).is_ok_and(|r| r.ok());
    let hinge_set: Vec<Letter> = hinges(d.structure()).map(|h| h.members().collect()).unwrap_or_default();
    let v = check_generic(q, &d);
    let failed: Vec<String> = [Condition::P1, Condition::P2, Condition::P3, Condition::P4]
        .into_iter()
        .filter(|&c| v.fails(c))
        .map(|c| format!("{c:?}"))
        .collect();
    let pass = structure_ok && hinge_set == [Letter::pos(1)] && v.accepted();
    let witness: Vec<&str> = v.failures.iter().map(|f| f.witness.as_str()).collect();
    outcome(pass, format!("structure valid: {structure_ok}, hinges {hinge_set:?}, failing {failed:?} {witness:?}"))
}

fn special_search() -> Outcome {
    let grid = p("< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >");
    let found = search_special_decoration(&grid, None).unwrap();
    let want = CyclicOrder::new((0..4).map(Letter::pos).collect());
    let grid_ok = found.as_ref().is_some_and(|d| d.sigma.eq_up_to_reflection(&want) && d.tau.iter().all(|t| !t));
    let k5 = p("< a, b | a^5, b^5, a a b^-1 >");
    let candidates = SpecialCandidates::new(&k5).count() as u128;
    let k5_none = search_special_decoration(&k5, None).unwrap().is_none();
    let pass = grid_ok && k5_none && candidates == special_candidate_count(&k5);
    outcome(pass, format!("grid found equivalent: {grid_ok}; K5 exhausted {candidates} candidates, none: {k5_none}"))
}

fn coset_anchors() -> Outcome {
    let count = |s: &str| coset_enumerate(&p(s), 10_000).map(|t| t.len()).ok();
    let trivial = count("< a, b | a^2, b^3, a b^-1 >");
    let five = count("< a | a^5 >");
    let prism = p("< a, b | a^4, b^2, a b a^-1 b >");
    let g = graph_of(&prism, 100).unwrap();
    let cubic = (0..g.vertex_count()).all(|v| g.degree(v) == 3);
    let b_edges = g.edges().iter().filter(|e| e.color == 1 && e.kind == EdgeKind::Involution).count();
    let pass = trivial == Some(1) && five == Some(5) && g.vertex_count() == 8 && cubic && b_edges == 4;
    outcome(pass, format!("trivial {trivial:?}, Z5 {five:?}, prism {} vertices, 3-regular {cubic}, {b_edges} b-edges", g.vertex_count()))
}

fn planar_end_to_end() -> Outcome {
    let mut cache: HashMap<String, Option<bool>> = HashMap::new();
    let mut items = 0;
    let mut finite = 0;
    let mut bad = Vec::new();
    for kind in [Kind::Special, Kind::Generic] {
        for item in enumerate_planar(kind, Budget::new(2, 3, 8)) {
            items += 1;
            let key = item.presentation.to_string();
            let verdict = cache
                .entry(key.clone())
                .or_insert_with(|| graph_of(&item.presentation, 10_000).map(|g| planarity_test(&g).is_planar()));
            match verdict {
                Some(true) => finite += 1,
                Some(false) => {
                    finite += 1;
                    bad.push(format!("{kind:?} {key}"));
                }
                None => {}
            }
        }
    }
    bad.dedup();
    outcome(bad.is_empty(), format!("{items} items, {finite} with finite Cayley graphs, non-planar: {bad:?}"))
}

fn cube_extraction() -> Outcome {
    let g = graph_of(&p("< a, b | a^4, b^2, a b a^-1 b >"), 100).unwrap();
    let Planarity::Planar(rot) = planarity_test(&g) else { return outcome(false, "cube reported non-planar") };
    let report = check_consistent(&g, &rot).unwrap();
    let tau_ok = report.consistent && report.tau == Some(vec![false, true]);
    let extracted = extract_special_presentation(&g, &rot);
    let (same, iso) = match &extracted {
        Ok((q, _)) => (
            canonical_form(q) == canonical_form(&p("< a, b | a^4, b^2, a b a^-1 b >")),
            graph_of(q, 100).is_some_and(|h| color_isomorphic(&g, &h)),
        ),
        Err(_) => (false, false),
    };
    let shown = extracted.as_ref().map(|(q, _)| q.to_string()).map_err(|e| e.to_string());
    outcome(tau_ok && same && iso, format!("tau {:?}, extracted {shown:?}, colour-isomorphic {iso}", report.tau))
}

fn cycle_space() -> Outcome {
    let mut graphs: Vec<(Presentation, ColoredGraph)> = enumerate_presentations(Budget::new(2, 3, 7))
        .filter_map(|f| {
            let q = f.presentation();
            let g = graph_of(&q, 2000)?;
            (g.vertex_count() > 1).then_some((q, g))
        })
        .collect();
    graphs.shuffle(&mut ChaCha8Rng::seed_from_u64(8));
    let mut bad = Vec::new();
    let mut checked = 0;
    for (q, g) in graphs.iter().take(50) {
        checked += 1;
        let span = relator_span_rank(g, q);
        let want = g.edges().iter().filter(|e| e.kind != EdgeKind::HalfLoop).count() + 1 - g.vertex_count();
        if span != Some(want) || cycle_space_rank(g) != want {
            bad.push(format!("{q}: {span:?} vs {want}"));
        }
    }
    outcome(checked == 50 && bad.is_empty(), format!("{checked} graphs from {} finite presentations, mismatches: {bad:?}", graphs.len()))
}

fn special_generic_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut subword_only = 0;
    for _ in 0..200 {
        let rank = rng.gen_range(1..=3);
        let names: Vec<String> = ["a", "b", "c"][..rank].iter().map(|s| s.to_string()).collect();
        let mut rels: Vec<Word> =
            (0..rank).filter(|_| rng.gen_bool(0.4)).map(|g| Word::new(vec![Letter::pos(g), Letter::pos(g)])).collect();
        let base = Presentation::new(names.clone(), rels.clone()).unwrap();
        let inv = involution_set(&base);
        let mut alpha = symmetrized_alphabet(&base).letters().to_vec();
        for _ in 0..rng.gen_range(1..=3) {
            rels.push(random_word(&mut rng, &alpha, &inv, 5));
        }
        let q = Presentation::new(names, rels).unwrap();
        alpha.shuffle(&mut rng);
        let tau = (0..rank).map(|_| rng.gen_bool(0.5)).collect();
        let d = SpecialDecoration::new(q.clone(), CyclicOrder::new(alpha), tau).unwrap();
        if !check_special_as_generic_consistency(&q, &d) {
            let generic = check_generic(&q, &d.lift());
            if generic.failures.iter().all(|f| f.condition == Condition::P4) {
                subword_only += 1;
            }
            bad.push(q.to_string());
        }
    }
    for s in ["< n, e, s, w | n^2, e^2, s^2, w^2, n e s w >", "< a | a^3 >", "< a, b | a^4, b^2, a b a^-1 b >"] {
        let q = p(s);
        if let Ok(Some(d)) = search_special_decoration(&q, None) {
            if !check_special_as_generic_consistency(&q, &d) {
                bad.push(s.to_string());
            }
        } else {
            bad.push(format!("{s}: no decoration"));
        }
    }
    let shown: Vec<&String> = bad.iter().take(5).collect();
    outcome(bad.is_empty(), format!("{} disagreements of 203, {subword_only} only on the subword condition: {shown:?}", bad.len()))
}

fn glue(a: &[(usize, usize)], b: &[(usize, usize)], offset: usize, n: usize) -> ColoredGraph {
    // colour 1 on the shared edge 0–1, colour 0 elsewhere
    let mut edges = vec![Edge { color: 1, kind: EdgeKind::Involution, tail: 0, head: 1 }];
    let map = |v: usize| if v < 2 { v } else { v + offset };
    for &(x, y) in a {
        edges.push(Edge { color: 0, kind: EdgeKind::Involution, tail: x, head: y });
    }
    for &(x, y) in b {
        edges.push(Edge { color: 0, kind: EdgeKind::Involution, tail: map(x), head: map(y) });
    }
    ColoredGraph::new(n, vec!["a".into(), "b".into()], edges)
}

fn hinge_fixtures() -> Outcome {
    // each piece contains the edge 0–1, which the glue supplies
    let triangle = [(1, 2), (2, 0)];
    let square = [(1, 2), (2, 3), (3, 0)];
    let k4 = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let hinged = [
        glue(&triangle, &triangle, 1, 4),
        glue(&square, &square, 2, 6),
        glue(&k4, &k4, 2, 6),
        glue(&triangle, &k4, 1, 5),
    ];
    let hinge_ok: Vec<bool> = hinged.iter().map(|g| hinge_separation(g, &BTreeSet::from([1]))).collect();
    let solid: Vec<ColoredGraph> = [
        "< a, b | a^4, b^2, a b a^-1 b >",
        "< a, b | a^3, b^2, a b a^-1 b >",
        "< a, b | a^4, b^2, a a b^-1 >",
        "< a, b | a^2, b^3, a b a b a b a b a b >",
    ]
    .iter()
    .map(|s| graph_of(&p(s), 1000).unwrap())
    .collect();
    let solid_ok: Vec<bool> = solid
        .iter()
        .map(|g| {
            let all: BTreeSet<usize> = (0..g.colors().len()).collect();
            !hinge_separation(g, &all) && ppk_core::embedding::two_separators(g).is_ok_and(|s| s.is_empty())
        })
        .collect();
    let pass = hinge_ok.iter().all(|&x| x) && solid_ok.iter().all(|&x| x);
    outcome(pass, format!("hinged {hinge_ok:?}, 3-connected {solid_ok:?}"))
}

fn enumeration_completeness() -> Outcome {
    let mut brute: BTreeSet<String> = BTreeSet::from([canonical_form(&p("< a | >")).to_string()]);
    for len in 1..=4 {
        for w in all_words(1, len) {
            let q = Presentation::new(vec!["a".into()], vec![w]).unwrap();
            brute.insert(canonical_form(&q).to_string());
        }
    }
    let listed: Vec<String> = enumerate_presentations(Budget::new(1, 1, 4)).map(|c| c.to_string()).collect();
    let listed_set: BTreeSet<String> = listed.iter().cloned().collect();
    let first: Vec<String> = enumerate_presentations(Budget::new(3, 3, 12)).take(10_000).map(|c| c.to_string()).collect();
    let distinct: BTreeSet<&String> = first.iter().collect();
    let pass = listed_set == brute && listed.len() == listed_set.len() && distinct.len() == first.len() && first.len() == 10_000;
    outcome(
        pass,
        format!("{} listed vs {} brute force; first {} items, {} distinct", listed.len(), brute.len(), first.len(), distinct.len()),
    )
}

/// Every word of the given length over `a`, `a⁻¹`, …, unreduced.
fn all_words(rank: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        out = out.iter().flat_map(|w| letters.iter().map(move |&l| [w.clone(), vec![l]].concat())).collect();
    }
    out.into_iter().map(Word::new).collect()
}
