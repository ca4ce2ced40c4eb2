//! The decoration JSON document.
//!
//! Generic: `{"presentation", "blocks", "sigma", "tau", "mu"}` with 0-based
//! block indices. Special: `{"presentation", "sigma", "tau"}` with a single
//! cyclic order and one spin flag per generator.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{CyclicOrder, GenericDecoration, SpecialDecoration, SpinError, SpinStructure};
use crate::presentation::{parse_presentation, symmetrized_alphabet, Letter, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoration {
    Special(SpecialDecoration),
    Generic(GenericDecoration),
}

fn fmt_err(msg: impl Into<String>) -> SpinError {
    SpinError::Format(msg.into())
}

fn letter(p: &Presentation, v: &Value) -> Result<Letter, SpinError> {
    let s = v.as_str().ok_or_else(|| fmt_err(format!("expected a letter string, found {v}")))?;
    let w = p.parse_word(s)?;
    match w.letters() {
        [l] => Ok(*l),
        _ => Err(fmt_err(format!("`{s}` is not a single letter"))),
    }
}

fn letters(p: &Presentation, v: &Value) -> Result<Vec<Letter>, SpinError> {
    v.as_array()
        .ok_or_else(|| fmt_err(format!("expected a list of letters, found {v}")))?
        .iter()
        .map(|x| letter(p, x))
        .collect()
}

fn bit(v: &Value) -> Result<bool, SpinError> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
        _ => Err(fmt_err(format!("spin flag must be 0 or 1, found {v}"))),
    }
}

fn generator(p: &Presentation, name: &str) -> Result<usize, SpinError> {
    p.generator_index(name).ok_or_else(|| fmt_err(format!("unknown generator `{name}`")))
}

fn index(v: &str, what: &str) -> Result<usize, SpinError> {
    v.parse().map_err(|_| fmt_err(format!("{what} `{v}` is not a block index")))
}

fn tau_map(p: &Presentation, v: &Value, tau: &mut [bool]) -> Result<(), SpinError> {
    let obj = v.as_object().ok_or_else(|| fmt_err("tau entries must be objects"))?;
    for (name, flag) in obj {
        tau[generator(p, name)?] = bit(flag)?;
    }
    Ok(())
}

impl Decoration {
    pub fn from_json(text: &str) -> Result<Decoration, SpinError> {
        let v: Value = serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Decoration, SpinError> {
        let obj = v.as_object().ok_or_else(|| fmt_err("top level must be an object"))?;
        let ptext = obj
            .get("presentation")
            .and_then(Value::as_str)
            .ok_or_else(|| fmt_err("missing \"presentation\""))?;
        let p = parse_presentation(ptext)?;
        let sigma = obj.get("sigma").ok_or_else(|| fmt_err("missing \"sigma\""))?;
        let n = p.rank();

        let Some(blocks) = obj.get("blocks") else {
            let order = CyclicOrder::new(letters(&p, sigma)?);
            let mut tau = vec![false; n];
            if let Some(t) = obj.get("tau") {
                tau_map(&p, t, &mut tau)?;
            }
            return Ok(Decoration::Special(SpecialDecoration::new(p, order, tau)?));
        };

        let blocks: Vec<Vec<Letter>> = blocks
            .as_array()
            .ok_or_else(|| fmt_err("\"blocks\" must be a list"))?
            .iter()
            .map(|b| letters(&p, b))
            .collect::<Result<_, _>>()?;
        let k = blocks.len();
        let structure = SpinStructure::new(symmetrized_alphabet(&p), blocks)?;
        let sigma: Vec<CyclicOrder> = sigma
            .as_array()
            .ok_or_else(|| fmt_err("\"sigma\" must be a list of lists"))?
            .iter()
            .map(|o| letters(&p, o).map(CyclicOrder::new))
            .collect::<Result<_, _>>()?;

        let mut tau = vec![vec![false; k]; n];
        if let Some(t) = obj.get("tau") {
            let per_block = t.as_array().ok_or_else(|| fmt_err("\"tau\" must be a list per block"))?;
            if per_block.len() != k {
                return Err(fmt_err(format!("\"tau\" has {} entries for {k} blocks", per_block.len())));
            }
            for (i, entry) in per_block.iter().enumerate() {
                let mut row = vec![false; n];
                tau_map(&p, entry, &mut row)?;
                for g in 0..n {
                    tau[g][i] = row[g];
                }
            }
        }

        let mut mu = vec![BTreeMap::new(); n];
        if let Some(m) = obj.get("mu") {
            let m = m.as_object().ok_or_else(|| fmt_err("\"mu\" must be an object"))?;
            for (name, map) in m {
                let g = generator(&p, name)?;
                let map = map.as_object().ok_or_else(|| fmt_err("mu entries must be objects"))?;
                for (from, to) in map {
                    let to = to.as_u64().ok_or_else(|| fmt_err("mu values must be block indices"))?;
                    mu[g].insert(index(from, "mu key")?, to as usize);
                }
            }
        }
        Ok(Decoration::Generic(GenericDecoration::new(p, structure, sigma, tau, mu)?))
    }

    pub fn presentation(&self) -> &Presentation {
        match self {
            Decoration::Special(d) => d.presentation(),
            Decoration::Generic(d) => d.presentation(),
        }
    }

    /// Specials become the generic decoration on `{S′}`.
    pub fn into_generic(self) -> GenericDecoration {
        match self {
            Decoration::Special(d) => d.lift(),
            Decoration::Generic(d) => d,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Decoration::Special(d) => special_value(d),
            Decoration::Generic(d) => generic_value(d),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

fn names(p: &Presentation, ls: &[Letter]) -> Value {
    Value::Array(ls.iter().map(|&l| Value::String(p.format_letter(l))).collect())
}

fn special_value(d: &SpecialDecoration) -> Value {
    let p = d.presentation();
    let tau: Map<String, Value> =
        (0..p.rank()).map(|g| (p.generators()[g].clone(), json!(d.tau[g] as u8))).collect();
    json!({
        "presentation": p.to_string(),
        "sigma": names(p, d.sigma.letters()),
        "tau": tau,
    })
}

fn generic_value(d: &GenericDecoration) -> Value {
    let p = d.presentation();
    let c = d.structure();
    let blocks: Vec<Value> = c.blocks().iter().map(|b| names(p, b)).collect();
    let sigma: Vec<Value> = d.sigma.iter().map(|o| names(p, o.letters())).collect();
    let tau: Vec<Value> = c
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut gens: Vec<usize> = b.iter().map(|l| l.gen).collect();
            gens.sort();
            gens.dedup();
            let m: Map<String, Value> =
                gens.into_iter().map(|g| (p.generators()[g].clone(), json!(d.tau[g][i] as u8))).collect();
            Value::Object(m)
        })
        .collect();
    let mut mu = Map::new();
    for g in 0..p.rank() {
        if d.mu[g].len() >= 2 {
            let m: Map<String, Value> = d.mu[g].iter().map(|(i, j)| (i.to_string(), json!(j))).collect();
            mu.insert(p.generators()[g].clone(), Value::Object(m));
        }
    }
    json!({
        "presentation": p.to_string(),
        "blocks": blocks,
        "sigma": sigma,
        "tau": tau,
        "mu": mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::fixtures::{figure2, grid};
    use crate::spin::validate_decoration;

    #[test]
    fn generic_round_trip() {
        let d = Decoration::Generic(figure2());
        let back = Decoration::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(validate_decoration(&back.into_generic()).ok());
    }

    #[test]
    fn special_round_trip() {
        let d = Decoration::Special(grid());
        let text = d.to_json();
        assert!(text.contains("\"sigma\":[\"n\",\"e\",\"s\",\"w\"]"));
        assert_eq!(Decoration::from_json(&text).unwrap(), d);
    }

    #[test]
    fn bad_documents() {
        assert!(Decoration::from_json("[]").is_err());
        assert!(Decoration::from_json(r#"{"presentation": "< a | a^2 >", "sigma": ["a^-1"]}"#).is_ok());
        assert!(matches!(
            Decoration::from_json(r#"{"presentation": "< a | a^2 >", "blocks": [["a^-1"]], "sigma": [["a"]]}"#),
            Err(SpinError::UnknownLetter(_))
        ));
        assert!(Decoration::from_json(r#"{"presentation": "< a | >", "sigma": ["a", "a^-1"], "tau": {"a": 2}}"#).is_err());
    }
}
