use std::collections::HashSet;
use std::fs;
use std::io::{self, LineWriter, Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use rayon::prelude::*;
use serde_json::{json, Value};

use ppk_core::cayley::{build_cayley_graph, read_dot, strategies, write_dot, write_graphml, ColoredGraph, CosetError};
use ppk_core::conditions::{check_generic_with, check_special_with, search_special_decoration, CheckOptions};
use ppk_core::crossing::{deciders, find_crossing_with};
use ppk_core::embedding::{
    extract_special_presentation, hinge_report, planarity_testers, EmbeddingError, KuratowskiWitness, Planarity,
    RotationSystem,
};
use ppk_core::enumeration::{canonical_form, enumerate_presentations, planar_items_for, Budget, Kind};
use ppk_core::presentation::{parse_presentation, Presentation};
use ppk_core::spin::{hinges, Decoration};

use crate::config::Config;
use crate::{Cli, Command, KindArg};

const DEFAULT_MAX_COSETS: usize = 100_000;
/// Presentations handed to the worker pool at a time by `enumerate`.
const CHUNK: usize = 256;

pub enum Failure {
    Input(anyhow::Error),
    Budget(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<u8, Failure>;

pub fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &Path, text: &str) -> anyhow::Result<()> {
    if path == Path::new("-") {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn read_decoration(path: &Path) -> anyhow::Result<Decoration> {
    Decoration::from_json(&read_input(path)?).with_context(|| format!("decoration {}", path.display()))
}

fn read_presentation(path: &Path) -> anyhow::Result<Presentation> {
    let text = read_input(path)?;
    parse_presentation(text.trim()).with_context(|| format!("presentation {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<ColoredGraph> {
    read_dot(&read_input(path)?).with_context(|| format!("graph {}", path.display()))
}

/// Single JSON documents: compact under `--json`, indented otherwise.
fn print_value(json_mode: bool, v: &Value) {
    if json_mode {
        println!("{v}");
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn kind(k: KindArg) -> Kind {
    match k {
        KindArg::Special => Kind::Special,
        KindArg::Generic => Kind::Generic,
        KindArg::General => Kind::General,
    }
}

fn witness_value(w: &Option<KuratowskiWitness>) -> Value {
    match w {
        Some(w) => json!({ "kind": format!("{:?}", w.kind), "edges": w.edges }),
        None => Value::Null,
    }
}

fn embedding_failure(e: EmbeddingError) -> Outcome {
    match e {
        EmbeddingError::TooLarge(m) => Err(Failure::Budget(m)),
        EmbeddingError::InvalidRotation(_) | EmbeddingError::Format(_) | EmbeddingError::NotAPath(_) => {
            Err(Failure::Input(e.into()))
        }
        other => {
            eprintln!("{other}");
            Ok(1)
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let config = Config::load(cli.config.as_deref())?;
    let threads = match cli.threads {
        Some(n) => n,
        None => config.int("threads")?.unwrap_or(1) as usize,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global().ok();
    let json_mode = cli.json;
    let max_cosets = |flag: Option<usize>| -> anyhow::Result<usize> {
        Ok(match flag {
            Some(n) => n,
            None => config.int("max_cosets")?.map_or(DEFAULT_MAX_COSETS, |n| n as usize),
        })
    };

    match cli.command {
        Command::Check { kind: k, decoration, no_self_crossings, strict_subwords } => {
            let d = read_decoration(&decoration)?;
            let opts = CheckOptions { self_crossings: !no_self_crossings, strict_subwords, ..CheckOptions::default() };
            let p = d.presentation().clone();
            let verdict = match (k, d) {
                (KindArg::Special, Decoration::Special(s)) => check_special_with(&p, &s, &opts),
                (KindArg::Special, Decoration::Generic(_)) => {
                    return Err(anyhow!("--kind special needs a special decoration (no \"blocks\")").into())
                }
                (KindArg::Generic, d) => check_generic_with(&p, &d.into_generic(), &opts),
                (KindArg::General, _) => return Err(anyhow!("check takes --kind special or generic").into()),
            };
            print_value(json_mode, &serde_json::to_value(&verdict)?);
            Ok(if verdict.accepted() { 0 } else { 1 })
        }

        Command::Cross { decoration, w, z, oracle } => {
            let d = read_decoration(&decoration)?.into_generic();
            let p = d.presentation().clone();
            let (w, z) = (p.parse_word(&w)?, p.parse_word(&z)?);
            let registry = deciders();
            let decider = registry.get(if oracle { "oracle" } else { "alignment" })?;
            match find_crossing_with(decider, &w, &z, &d)? {
                Some(a) => {
                    let a = serde_json::to_value(a.to_json(&p))?;
                    if json_mode {
                        println!("{}", json!({ "result": "cross", "alignment": a }));
                    } else {
                        println!("cross");
                        println!("{a}");
                    }
                    Ok(1)
                }
                None => {
                    if json_mode {
                        println!("{}", json!({ "result": "nested" }));
                    } else {
                        println!("nested");
                    }
                    Ok(0)
                }
            }
        }

        Command::FindSpecial { presentation, max_candidates } => {
            let p = read_presentation(&presentation)?;
            let budget = match max_candidates {
                Some(n) => Some(n),
                None => config.int("max_candidates")?,
            };
            match search_special_decoration(&p, budget) {
                Err(e) => Err(Failure::Budget(format!("{} candidates examined", e.examined))),
                Ok(Some(d)) => {
                    print_value(json_mode, &Decoration::Special(d).to_value());
                    Ok(0)
                }
                Ok(None) => {
                    println!("{}", if json_mode { "null" } else { "none" });
                    Ok(1)
                }
            }
        }

        Command::Enumerate { kind: k, max_generators, max_relators, max_total_length, limit, out } => {
            let k = kind(k);
            let budget = Budget::new(max_generators, max_relators, max_total_length);
            let sink: Box<dyn Write> = if out == Path::new("-") {
                Box::new(LineWriter::new(io::stdout()))
            } else {
                Box::new(LineWriter::new(fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?))
            };
            enumerate(k, budget, limit.unwrap_or(usize::MAX), sink)?;
            Ok(0)
        }

        Command::Cayley { presentation, max_cosets: flag, out, strategy } => {
            let p = read_presentation(&presentation)?;
            let registry = strategies();
            let name = strategy.or(config.string("strategy")?);
            let s = match &name {
                Some(n) => registry.get(n)?,
                None => registry.default_entry(),
            };
            let table = match s.enumerate(&p, max_cosets(flag)?) {
                Ok(t) => t,
                Err(e @ CosetError::BudgetExceeded(_)) => return Err(Failure::Budget(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let g = build_cayley_graph(&p, &table)?;
            let text = if out.extension().is_some_and(|e| e == "graphml") { write_graphml(&g) } else { write_dot(&g) };
            write_output(&out, &text)?;
            if out != Path::new("-") {
                let summary = json!({ "vertices": g.vertex_count(), "edges": g.edges().len() });
                if json_mode {
                    println!("{summary}");
                } else {
                    println!("{} vertices, {} edges", g.vertex_count(), g.edges().len());
                }
            }
            Ok(0)
        }

        Command::Planar { input, emit_rotation, tester } => {
            let g = read_graph(&input)?;
            let registry = planarity_testers();
            let name = tester.or(config.string("tester")?);
            let t = match &name {
                Some(n) => registry.get(n)?,
                None => registry.default_entry(),
            };
            let result = match t.test(&g) {
                Ok(r) => r,
                Err(e) => return embedding_failure(e),
            };
            match result {
                Planarity::Planar(rot) => {
                    if let Some(path) = emit_rotation {
                        write_output(&path, &format!("{}\n", rot.to_json()))?;
                    }
                    if json_mode {
                        println!("{}", json!({ "planar": true }));
                    } else {
                        println!("planar: true");
                    }
                    Ok(0)
                }
                Planarity::NonPlanar(w) => {
                    if json_mode {
                        println!("{}", json!({ "planar": false, "witness": witness_value(&w) }));
                    } else {
                        println!("planar: false");
                        if let Some(w) = w {
                            println!("witness: {:?} subdivision on edges {:?}", w.kind, w.edges);
                        }
                    }
                    Ok(1)
                }
            }
        }

        Command::Extract { input, rotation, out } => {
            let g = read_graph(&input)?;
            let v: Value = serde_json::from_str(&read_input(&rotation)?).context("rotation JSON")?;
            let rot = RotationSystem::from_json(&v, &g)?;
            let (p, d) = match extract_special_presentation(&g, &rot) {
                Ok(x) => x,
                Err(e) => return embedding_failure(e),
            };
            if json_mode && out == Path::new("-") {
                println!("{}", json!({ "presentation": p.to_string(), "decoration": Decoration::Special(d).to_value() }));
            } else {
                write_output(&out, &format!("{p}\n"))?;
            }
            Ok(0)
        }

        Command::Verify { decoration, max_cosets: flag, no_self_crossings } => {
            let opts = CheckOptions { self_crossings: !no_self_crossings, ..CheckOptions::default() };
            verify(&read_decoration(&decoration)?, &opts, max_cosets(flag)?, &config, json_mode)
        }
    }
}

/// Accepted items in canonical order; presentations are checked in parallel
/// chunks and written in order, so output does not depend on the pool size.
fn enumerate(k: Kind, budget: Budget, limit: usize, mut sink: Box<dyn Write>) -> anyhow::Result<()> {
    let opts = CheckOptions::default();
    let mut forms = enumerate_presentations(budget).peekable();
    let mut seen = HashSet::new();
    let mut written = 0;
    while written < limit && forms.peek().is_some() {
        let chunk: Vec<_> = forms.by_ref().take(CHUNK).collect();
        let batches: Vec<_> = chunk.par_iter().map(|f| planar_items_for(f, k, &opts, &mut HashSet::new())).collect();
        for item in batches.into_iter().flatten() {
            if item.parent.is_some() && !seen.insert(canonical_form(&item.presentation)) {
                continue;
            }
            writeln!(sink, "{}", item.to_value())?;
            written += 1;
            if written == limit {
                break;
            }
        }
    }
    sink.flush()?;
    Ok(())
}

struct Stages {
    json_mode: bool,
}

impl Stages {
    fn report(&self, stage: &str, ok: bool, detail: Value, text: String) {
        if self.json_mode {
            let mut v = json!({ "stage": stage, "ok": ok });
            if let (Value::Object(m), Value::Object(d)) = (&mut v, detail) {
                m.extend(d);
            }
            println!("{v}");
        } else {
            println!("{stage}: {text}");
        }
    }
}

fn verify(d: &Decoration, opts: &CheckOptions, max_cosets: usize, config: &Config, json_mode: bool) -> Outcome {
    let out = Stages { json_mode };
    let p = d.presentation().clone();
    let generic = d.clone().into_generic();

    let verdict = check_generic_with(&p, &generic, opts);
    let failures = serde_json::to_value(&verdict.failures)?;
    let text = if verdict.accepted() { "accepted".to_string() } else { format!("rejected {failures}") };
    out.report("check", verdict.accepted(), json!({ "failures": failures }), text);
    if !verdict.accepted() {
        return Ok(1);
    }

    let registry = strategies();
    let s = match config.string("strategy")? {
        Some(n) => registry.get(&n)?,
        None => registry.default_entry(),
    };
    let table = match s.enumerate(&p, max_cosets) {
        Ok(t) => t,
        Err(CosetError::BudgetExceeded(t)) => {
            let msg = format!("no completion within {max_cosets} cosets ({} in the partial table)", t.len());
            out.report("cosets", false, json!({ "budget": max_cosets, "partial": t.len() }), msg.clone());
            return Err(Failure::Budget(msg));
        }
        Err(e) => return Err(e.into()),
    };
    out.report("cosets", true, json!({ "cosets": table.len() }), table.len().to_string());

    let g = build_cayley_graph(&p, &table)?;
    out.report(
        "graph",
        true,
        json!({ "vertices": g.vertex_count(), "edges": g.edges().len() }),
        format!("{} vertices, {} edges", g.vertex_count(), g.edges().len()),
    );

    let testers = planarity_testers();
    let t = match config.string("tester")? {
        Some(n) => testers.get(&n)?,
        None => testers.default_entry(),
    };
    let planar = match t.test(&g) {
        Ok(r) => r,
        Err(e) => return embedding_failure(e),
    };
    match &planar {
        Planarity::Planar(_) => out.report("planar", true, json!({ "planar": true }), "true".into()),
        Planarity::NonPlanar(w) => {
            out.report("planar", false, json!({ "planar": false, "witness": witness_value(w) }), "false".into());
            return Ok(1);
        }
    }

    let colors = hinges(generic.structure())?.generators();
    let failures = hinge_report(&g, &colors);
    let names: Vec<&str> = colors.iter().map(|&c| p.generators()[c].as_str()).collect();
    let bad: Vec<String> = failures.iter().map(|f| format!("{f:?}")).collect();
    let ok = failures.is_empty();
    let text = if ok { format!("true (hinges {names:?})") } else { format!("false {bad:?}") };
    out.report("hinges", ok, json!({ "hinges": names, "failures": bad }), text);
    Ok(if ok { 0 } else { 1 })
}
