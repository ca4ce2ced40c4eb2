use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::{Table, Value};

const KEYS: &[&str] = &["max_cosets", "max_candidates", "threads", "strategy", "tester"];

/// Defaults read from a `key = value` file.
#[derive(Debug, Default)]
pub struct Config(Table);

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = super::commands::read_input(path)?;
        let table: Table = text.parse().with_context(|| format!("parsing config {}", path.display()))?;
        if let Some(k) = table.keys().find(|k| !KEYS.contains(&k.as_str())) {
            bail!("unknown config key `{k}` (known: {})", KEYS.join(", "));
        }
        Ok(Config(table))
    }

    pub fn int(&self, key: &str) -> Result<Option<u64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::Integer(n)) if *n >= 0 => Ok(Some(*n as u64)),
            Some(v) => bail!("config key `{key}` must be a non-negative integer, got {v}"),
        }
    }

    pub fn string(&self, key: &str) -> Result<Option<String>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => bail!("config key `{key}` must be a string, got {v}"),
        }
    }
}
